//! Sphere integrals whose closed forms lead to the uniqueness of the invariant
//! semi-norm, each paired with a direct quadrature of its left-hand side.

use crate::error::{Error, Result};
use crate::gauss::GaussRule;
use crate::geometry::{dot, norm_sq, MoebiusMap};
use crate::specfun::{gamma, hyp0f1, hyp2f1, phi_prefactor, pochhammer, SeriesControl};
use crate::sphere::{AxialPairQuadrature, SphereQuadrature};
use crate::zonal::ZonalEvaluator;

use super::CoefficientSequence;

/// Gauss–Laguerre points for the half-line transform.
pub const LAGUERRE_POINTS: usize = 64;

/// `Φ_m(x) = pref · x^m · ₂F₁(n/2−1, m+n−2; m+n/2; x)²` with Φ_{−1} = 0.
pub fn phi_m_eval(n: usize, m: i64, x: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension must be at least 3, got {n}")));
    }
    if m < -1 {
        return Err(Error::Domain(format!("Phi_m is defined for m ≥ −1, got {m}")));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("Phi_m argument must lie in [0, 1), got {x}")));
    }
    if m == -1 {
        return Ok(0.0);
    }
    let (nf, mu) = (n as f64, m as usize);
    let f = hyp2f1(
        nf / 2.0 - 1.0,
        m as f64 + nf - 2.0,
        m as f64 + nf / 2.0,
        x,
        &SeriesControl::default(),
    )?;
    Ok(phi_prefactor(n, mu) * x.powi(m as i32) * f * f)
}

/// Closed form of `∬ Z_m(x, y) ⟨φ_a(x), φ_a(y)⟩ dσ(x) dσ(y)` as a function of |a|²:
///
/// ```text
/// δ_{m0} − (1−|a|²)^{2n−4} [Φ_m − (m+1)/(2m+n) Φ_{m+1} − (m+n−3)/(2m+n−4) Φ_{m−1}]
/// ```
///
/// The last term is dropped at m = 0, where it multiplies Φ_{−1} = 0.
pub fn moebius_pair_closed(n: usize, m: usize, a_sq: f64) -> Result<f64> {
    let (nf, mf) = (n as f64, m as f64);
    let mi = m as i64;
    let mut bracket = phi_m_eval(n, mi, a_sq)? - (mf + 1.0) / (2.0 * mf + nf) * phi_m_eval(n, mi + 1, a_sq)?;
    if m > 0 {
        bracket -= (mf + nf - 3.0) / (2.0 * mf + nf - 4.0) * phi_m_eval(n, mi - 1, a_sq)?;
    }
    let delta = if m == 0 { 1.0 } else { 0.0 };
    Ok(delta - (1.0 - a_sq).powi(2 * n as i32 - 4) * bracket)
}

/// The rule about the axis through `a`, or `rule` itself at a = 0.
fn orient(rule: &AxialPairQuadrature, a: &[f64]) -> Result<AxialPairQuadrature> {
    let r = norm_sq(a).sqrt();
    if r == 0.0 {
        return Ok(rule.clone());
    }
    let axis: Vec<f64> = a.iter().map(|v| v / r).collect();
    rule.oriented(&axis)
}

fn check_rule_dim(rule_dim: usize, n: usize) -> Result<()> {
    if rule_dim != n {
        return Err(Error::Domain(format!(
            "quadrature is for dimension {rule_dim}, point has {n}"
        )));
    }
    Ok(())
}

/// `∬ Z_m(x, y) ⟨φ_a(x), φ_a(y)⟩ dσ dσ` for m = 0..=m_max, with φ_a applied
/// pointwise at every node pair.
pub fn moebius_pair_quadrature(map: &MoebiusMap, m_max: usize, rule: &AxialPairQuadrature) -> Result<Vec<f64>> {
    let n = map.dim();
    check_rule_dim(rule.dim(), n)?;
    let zonal = ZonalEvaluator::new(n, m_max)?;
    orient(rule, map.point())?.integrate_pairs(m_max + 1, |x, y, out| {
        zonal.unit_all(dot(x, y).clamp(-1.0, 1.0), out);
        let k = map.image_scalar_product(x, y);
        out.iter_mut().for_each(|v| *v *= k);
    })
}

/// |quadrature − closed form| of the Moebius pair integral at degree m.
pub fn moebius_pair_residual(n: usize, m: usize, a: &[f64], rule: &AxialPairQuadrature) -> Result<f64> {
    if a.len() != n {
        return Err(Error::Domain(format!("point has dimension {}, expected {n}", a.len())));
    }
    let map = MoebiusMap::new(a.to_vec())?;
    let lhs = moebius_pair_quadrature(&map, m, rule)?[m];
    Ok((lhs - moebius_pair_closed(n, m, map.radius().powi(2))?).abs())
}

/// `(n−2)_m m!/((n/2)_m (n/2−1)_m) |a|^{2m} ₂F₁(m+1, 2−n/2; n/2+m; |a|²)²`.
pub fn poisson_pair_closed(n: usize, m: usize, a_sq: f64) -> Result<f64> {
    let nf = n as f64;
    let f = hyp2f1(
        m as f64 + 1.0,
        2.0 - nf / 2.0,
        nf / 2.0 + m as f64,
        a_sq,
        &SeriesControl::default(),
    )?;
    Ok(phi_prefactor(n, m) * a_sq.powi(m as i32) * f * f)
}

/// `∬ Z_m(x, y) / ((1+|a|²−2⟨a,x⟩)(1+|a|²−2⟨a,y⟩)) dσ dσ` for m = 0..=m_max.
pub fn poisson_pair_quadrature(a: &[f64], m_max: usize, rule: &AxialPairQuadrature) -> Result<Vec<f64>> {
    let n = a.len();
    check_rule_dim(rule.dim(), n)?;
    let zonal = ZonalEvaluator::new(n, m_max)?;
    let a_sq = norm_sq(a);
    orient(rule, a)?.integrate_pairs(m_max + 1, |x, y, out| {
        zonal.unit_all(dot(x, y).clamp(-1.0, 1.0), out);
        let k = 1.0 / ((1.0 + a_sq - 2.0 * dot(a, x)) * (1.0 + a_sq - 2.0 * dot(a, y)));
        out.iter_mut().for_each(|v| *v *= k);
    })
}

/// `Z_m(u, y) / ((n/2)_m 2^m) · ₀F₁(−; n/2+m; |u|²/4)`.
pub fn exp_integral_closed(zonal: &ZonalEvaluator, m: usize, u: &[f64], y: &[f64]) -> Result<f64> {
    let h = zonal.dim() as f64 / 2.0;
    let f = hyp0f1(h + m as f64, norm_sq(u) / 4.0, &SeriesControl::default())?;
    Ok(zonal.eval(m, u, y)? / (pochhammer(h, m) * 2f64.powi(m as i32)) * f)
}

/// `∫ Z_m(x, y) e^{⟨u,x⟩} dσ(x)` for m = 0..=m_max.
pub fn exp_integral_quadrature(
    zonal: &ZonalEvaluator,
    m_max: usize,
    u: &[f64],
    y: &[f64],
    q: &SphereQuadrature,
) -> Result<Vec<f64>> {
    let ny = norm_sq(y).sqrt();
    q.integrate_many(m_max + 1, |x, out| {
        let s = if ny == 0.0 {
            0.0
        } else {
            (dot(x, y) / ny).clamp(-1.0, 1.0)
        };
        zonal.unit_all(s, out);
        let e = dot(u, x).exp();
        let mut scale = e;
        for o in out.iter_mut() {
            *o *= scale;
            scale *= ny;
        }
    })
}

/// `Z_m(u, v) / ((n/2)_m² 4^m) · ₀F₁(−; n/2+m; |u|²/4) ₀F₁(−; n/2+m; |v|²/4)`.
pub fn double_exp_closed(zonal: &ZonalEvaluator, m: usize, u: &[f64], v: &[f64]) -> Result<f64> {
    let h = zonal.dim() as f64 / 2.0;
    let ctl = SeriesControl::default();
    let c = h + m as f64;
    let fu = hyp0f1(c, norm_sq(u) / 4.0, &ctl)?;
    let fv = hyp0f1(c, norm_sq(v) / 4.0, &ctl)?;
    let p = pochhammer(h, m);
    Ok(zonal.eval(m, u, v)? / (p * p * 4f64.powi(m as i32)) * fu * fv)
}

/// `∬ Z_m(x, y) e^{⟨u,x⟩} e^{⟨v,y⟩} dσ dσ` for m = 0..=m_max.
pub fn double_exp_quadrature(
    zonal: &ZonalEvaluator,
    m_max: usize,
    u: &[f64],
    v: &[f64],
    q: &SphereQuadrature,
) -> Result<Vec<f64>> {
    let g: Vec<f64> = q.nodes().map(|x| dot(u, x).exp()).collect();
    let h: Vec<f64> = q.nodes().map(|y| dot(v, y).exp()).collect();
    q.integrate_pairs_weighted(&g, &h, m_max + 1, |x, y, out| {
        zonal.unit_all(dot(x, y).clamp(-1.0, 1.0), out);
    })
}

fn check_laguerre_params(b: f64, c: f64, x: f64) -> Result<()> {
    if !(b > 0.0 && c > 0.0) {
        return Err(Error::Domain(format!("need b, c > 0, got b = {b}, c = {c}")));
    }
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(format!("need −1 < x < 1, got {x}")));
    }
    Ok(())
}

/// `Γ(b) (1+x)^b ₂F₁(b, 1+b−c; c; x)`.
pub fn laguerre_transform_closed(b: f64, c: f64, x: f64) -> Result<f64> {
    check_laguerre_params(b, c, x)?;
    let f = hyp2f1(b, 1.0 + b - c, c, x, &SeriesControl::default())?;
    Ok(gamma(b) * (1.0 + x).powf(b) * f)
}

/// `∫_0^∞ t^{b−1} ₀F₁(−; c; t² x/(1+x)²) e^{−t} dt` by generalized
/// Gauss–Laguerre quadrature on the rescaled variable t = sτ.
///
/// The integrand decays like e^{−(1−β)t} with β = 2√(x/(1+x)²) for x > 0,
/// so the scale is matched to that rate, and capped so the ₀F₁ factor at
/// the largest node stays within range.
pub fn laguerre_transform_quadrature(b: f64, c: f64, x: f64, points: usize) -> Result<f64> {
    check_laguerre_params(b, c, x)?;
    let rule = GaussRule::laguerre(points, b - 1.0)?;
    let z = x / ((1.0 + x) * (1.0 + x));
    let beta = 2.0 * z.abs().sqrt();
    let tau_max = rule.nodes.last().copied().unwrap_or(0.0);
    let s = if z >= 0.0 {
        let matched = 1.0 / (1.0 - beta).sqrt();
        if beta > 0.0 {
            matched.min(600.0 / (beta * tau_max))
        } else {
            matched
        }
    } else {
        // oscillatory Bessel regime; |1 − iβ|^{−1/2}
        (1.0 + beta * beta).powf(-0.25)
    };
    let ctl = SeriesControl::new(1e-16, 1_000_000)?;
    let mut sum = 0.0;
    for (&tau, &w) in rule.nodes.iter().zip(&rule.weights) {
        let t = s * tau;
        sum += w * ((1.0 - s) * tau).exp() * hyp0f1(c, t * t * z, &ctl)?;
    }
    Ok(s.powf(b) * sum)
}

/// How [`f_value`] evaluates the per-degree pair integrals.
#[derive(Debug, Clone, Copy)]
pub enum FPath<'r> {
    /// The closed form of the Moebius pair integral.
    Closed,
    /// Raw pair quadrature with φ_a applied pointwise.
    Quadrature(&'r AxialPairQuadrature),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FEstimate {
    pub value: f64,
    /// |c_{m_max} · term_{m_max}|, the last summand, as a truncation indicator.
    pub tail: f64,
}

/// `F(a) = Σ_{m ≤ m_max} c_m ∬ Z_m(x, y) ⟨φ_a(x), φ_a(y)⟩ dσ dσ`, the sum over
/// coordinates j of the weighted Peter–Weyl norms of φ_{a,j}.
pub fn f_value(a: &[f64], c: &CoefficientSequence, m_max: usize, path: FPath<'_>) -> Result<FEstimate> {
    let n = a.len();
    if m_max > c.m_max() {
        return Err(Error::Degree {
            requested: m_max,
            max: c.m_max(),
        });
    }
    let map = MoebiusMap::new(a.to_vec())?;
    let a_sq = norm_sq(a);
    let terms = match path {
        FPath::Closed => (0..=m_max)
            .map(|m| moebius_pair_closed(n, m, a_sq))
            .collect::<Result<Vec<_>>>()?,
        FPath::Quadrature(rule) => moebius_pair_quadrature(&map, m_max, rule)?,
    };
    let value = terms.iter().enumerate().map(|(m, t)| c.get(m) * t).sum();
    Ok(FEstimate {
        value,
        tail: (c.get(m_max) * terms[m_max]).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random_unit;
    use crate::invariant::invariant_reference;
    use crate::specfun::phi_m_taylor;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn phi_m_values() {
        assert_eq!(phi_m_eval(4, 0, 0.0).unwrap(), 1.0);
        assert_eq!(phi_m_eval(3, -1, 0.3).unwrap(), 0.0);
        let t = phi_m_taylor(3, 1, 80).unwrap();
        let partial: f64 = t.eval(0.25) * 0.25;
        assert!((phi_m_eval(3, 1, 0.25).unwrap() - partial).abs() < 1e-13);
        assert!(phi_m_eval(3, -2, 0.1).is_err());
        assert!(phi_m_eval(3, 1, 1.0).is_err());
    }

    #[test]
    fn pair_closed_at_origin() {
        for n in 3..=6 {
            assert!(moebius_pair_closed(n, 0, 0.0).unwrap().abs() < 1e-15);
            assert!((moebius_pair_closed(n, 1, 0.0).unwrap() - 1.0).abs() < 1e-15);
            assert!(moebius_pair_closed(n, 2, 0.0).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn pair_quadrature_matches_closed_form() {
        let rule = AxialPairQuadrature::build(3, 40).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let dir = random_unit(&mut rng, 3);
        let a: Vec<f64> = dir.iter().map(|v| v * 0.5).collect();
        assert!(moebius_pair_residual(3, 2, &a, &rule).unwrap() < 1e-10);
        let map = MoebiusMap::new(a.clone()).unwrap();
        let lhs = poisson_pair_quadrature(&a, 3, &rule).unwrap();
        for (m, v) in lhs.iter().enumerate() {
            assert!((v - poisson_pair_closed(3, m, 0.25).unwrap()).abs() < 1e-10, "m={m}");
        }
        let q = moebius_pair_quadrature(&map, 4, &rule).unwrap();
        assert_eq!(q.len(), 5);
    }

    #[test]
    fn exp_integral_constant_term() {
        let q = SphereQuadrature::build(3, 16).unwrap();
        let z = ZonalEvaluator::new(3, 2).unwrap();
        let u = [1.0, 0.0, 0.0];
        let got = exp_integral_quadrature(&z, 2, &u, &[0.0, 1.0, 0.0], &q).unwrap();
        assert!((got[0] - 1f64.sinh()).abs() < 1e-13);
        let closed = exp_integral_closed(&z, 0, &u, &[0.0, 1.0, 0.0]).unwrap();
        assert!((closed - 1f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn laguerre_transform_grid() {
        for &(b, c) in &[(1.0, 1.5), (2.5, 3.0)] {
            for &x in &[-0.5, 0.0, 0.5] {
                let lhs = laguerre_transform_quadrature(b, c, x, LAGUERRE_POINTS).unwrap();
                let rhs = laguerre_transform_closed(b, c, x).unwrap();
                assert!((lhs - rhs).abs() < 1e-10, "b={b} c={c} x={x}: {lhs} vs {rhs}");
            }
        }
        assert!(laguerre_transform_closed(0.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn f_at_origin_is_c1() {
        let c = invariant_reference(4, 10).unwrap();
        let f = f_value(&[0.0; 4], &c, 10, FPath::Closed).unwrap();
        assert!((f.value - 3.0).abs() < 1e-14);
        let arbitrary = CoefficientSequence::new(3, vec![0.5, 1.7, 3.0]).unwrap();
        let f = f_value(&[0.0; 3], &arbitrary, 2, FPath::Closed).unwrap();
        assert!((f.value - 1.7).abs() < 1e-14);
    }
}
