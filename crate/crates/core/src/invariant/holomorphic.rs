//! The analogous semi-norm for holomorphic functions on the unit ball of C^n,
//! where the pair integral has an elementary closed form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sphere::SphereQuadrature;

use super::CoefficientSequence;

/// m!/(n)_m
fn inverse_rising(n: usize, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (j + 1) as f64 / (n + j) as f64)
}

/// Closed form of `∬ ⟨φ̄_a(ζ), φ̄_a(η)⟩ cZ_m(η, ζ) dσ dσ` as a function of |a|²:
///
/// ```text
/// δ_{m0} − (1−|a|²) (m!/(n)_m |a|^{2m} − [m>0] (m−1)!/(n)_{m−1} |a|^{2m−2})
/// ```
pub fn holo_pair_closed(n: usize, m: usize, a_sq: f64) -> f64 {
    let mut inner = inverse_rising(n, m) * a_sq.powi(m as i32);
    if m > 0 {
        inner -= inverse_rising(n, m - 1) * a_sq.powi(m as i32 - 1);
    }
    let delta = if m == 0 { 1.0 } else { 0.0 };
    delta - (1.0 - a_sq) * inner
}

/// `Σ_{m ≤ m_max} c_m · holo_pair_closed(n, m, |a|²)` with n = `c.dim()`.
pub fn holo_f_closed(c: &CoefficientSequence, a_abs: f64, m_max: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&a_abs) {
        return Err(Error::Domain(format!("|a| must lie in [0, 1), got {a_abs}")));
    }
    if m_max > c.m_max() {
        return Err(Error::Degree {
            requested: m_max,
            max: c.m_max(),
        });
    }
    let a_sq = a_abs * a_abs;
    Ok((0..=m_max).map(|m| c.get(m) * holo_pair_closed(c.dim(), m, a_sq)).sum())
}

/// max over m ≤ M of |c_0 − c_1 − (m!/(n)_m)(c_m − c_{m+1})| for the sequence
/// `c_m = (c_1/n) m (n)_m / m!`.
pub fn holo_c_recurrence_check(n: usize, c1: f64, m_max: usize) -> Result<f64> {
    let c = CoefficientSequence::holomorphic(n, c1, m_max + 1)?;
    Ok((0..=m_max)
        .map(|m| {
            let lhs = c.get(0) - c.get(1);
            (lhs - inverse_rising(n, m) * (c.get(m) - c.get(m + 1))).abs()
        })
        .fold(0.0, f64::max))
}

/// Hermitian product of two points of C^n stored as interleaved real
/// coordinates `(re_0, im_0, re_1, im_1, …)`.
fn hermitian_interleaved(x: &[f64], y: &[f64]) -> Complex64 {
    x.chunks_exact(2)
        .zip(y.chunks_exact(2))
        .fold(Complex64::new(0.0, 0.0), |acc, (p, q)| {
            acc + Complex64::new(p[0] * q[0] + p[1] * q[1], p[1] * q[0] - p[0] * q[1])
        })
}

/// `∬ ⟨φ̄_a(ζ), φ̄_a(η)⟩ cZ_m(η, ζ) dσ(ζ) dσ(η)` for m = 0..=m_max, by a
/// product rule on the real sphere S^{2n−1} ⊂ R^{2n} ≅ C^n.
pub fn holo_pair_quadrature(a: &[Complex64], m_max: usize, quad: &SphereQuadrature) -> Result<Vec<Complex64>> {
    let n = a.len();
    if quad.dim() != 2 * n {
        return Err(Error::Domain(format!(
            "need a rule on S^{} for C^{n}, got dimension {}",
            2 * n - 1,
            quad.dim()
        )));
    }
    let a_re: Vec<f64> = a.iter().flat_map(|z| [z.re, z.im]).collect();
    let a_sq = hermitian_interleaved(&a_re, &a_re).re;
    if !(a_sq < 1.0) {
        return Err(Error::Domain(format!("|a| must be below 1, got {}", a_sq.sqrt())));
    }
    let scale: Vec<f64> = (0..=m_max).map(|m| 1.0 / inverse_rising(n, m)).collect();
    let one = Complex64::new(1.0, 0.0);
    let raw = quad.integrate_pairs(2 * (m_max + 1), |x, y, out| {
        let zeta_eta = hermitian_interleaved(x, y);
        let den = (one - hermitian_interleaved(x, &a_re)) * (one - hermitian_interleaved(&a_re, y));
        let kernel = one - (1.0 - a_sq) * (one - zeta_eta) / den;
        let eta_zeta = zeta_eta.conj();
        let mut p = kernel;
        for (m, o) in out.chunks_exact_mut(2).enumerate() {
            let v = p * scale[m];
            o[0] = v.re;
            o[1] = v.im;
            p *= eta_zeta;
        }
    })?;
    Ok(raw.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{complexify, hermitian, holo_kernel};

    #[test]
    fn constant_at_origin() {
        let c = CoefficientSequence::holomorphic(2, 2.0, 40).unwrap();
        assert!((holo_f_closed(&c, 0.0, 40).unwrap() - 2.0).abs() < 1e-14);
        let arbitrary = CoefficientSequence::new(3, vec![0.3, 1.25, 4.0]).unwrap();
        assert!((holo_f_closed(&arbitrary, 0.0, 2).unwrap() - 1.25).abs() < 1e-15);
    }

    #[test]
    fn constancy_n2() {
        let c = CoefficientSequence::holomorphic(2, 2.0, 400).unwrap();
        for &r in &[0.2, 0.5, 0.8] {
            let f = holo_f_closed(&c, r, 400).unwrap();
            assert!((f - 2.0).abs() < 1e-10, "|a|={r}: {f}");
        }
    }

    #[test]
    fn recurrence_examples() {
        assert!(holo_c_recurrence_check(2, 2.0, 10).unwrap() < 1e-12);
        assert_eq!(holo_c_recurrence_check(1, 1.0, 10).unwrap(), 0.0);
        assert_eq!(holo_c_recurrence_check(3, 0.0, 10).unwrap(), 0.0);
    }

    #[test]
    fn interleaved_product_matches_complex() {
        let x = [0.1, 0.2, -0.3, 0.4];
        let y = [0.5, -0.1, 0.2, 0.7];
        let want = hermitian(&complexify(&x), &complexify(&y));
        assert!((hermitian_interleaved(&x, &y) - want).norm() < 1e-15);
        let a = complexify(&[0.2, 0.1, 0.0, -0.3]);
        let zeta = complexify(&[0.6, 0.0, 0.0, 0.8]);
        let k = holo_kernel(&a, &zeta, &zeta);
        assert!((k - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
