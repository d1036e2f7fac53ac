use crate::error::{Error, Result};
use crate::specfun::{phi_m_taylor, CompensatedSum};

/// Weights c_0..c_M of a rotation-invariant semi-norm `Σ_m c_m ‖f_m‖²`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    dim: usize,
    c: Vec<f64>,
}

impl CoefficientSequence {
    pub fn new(dim: usize, c: Vec<f64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Domain("coefficient sequence must not be empty".into()));
        }
        if let Some((m, v)) = c.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Domain(format!(
                "coefficient c_{m} = {v} must be finite and nonnegative"
            )));
        }
        Ok(Self { dim, c })
    }

    /// c_0 = 0, c_m = (n−1)_m / (m−1)! for 1 ≤ m ≤ m_max.
    pub fn reference(n: usize, m_max: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("dimension must be at least 3, got {n}")));
        }
        let nf = n as f64;
        // (n−1)_m/(m−1)! = m · Π_{j<m} (n−1+j)/(j+1)
        let mut ratio = 1.0;
        let mut c = vec![0.0; m_max + 1];
        for (m, slot) in c.iter_mut().enumerate().skip(1) {
            let j = (m - 1) as f64;
            ratio *= (nf - 1.0 + j) / (j + 1.0);
            *slot = m as f64 * ratio;
        }
        Ok(Self { dim: n, c })
    }

    /// The holomorphic analogue on the ball of C^n: `c_m = (c_1/n) m (n)_m / m!`.
    pub fn holomorphic(n: usize, c1: f64, m_max: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("complex dimension must be at least 1".into()));
        }
        let nf = n as f64;
        let mut ratio = 1.0;
        let mut c = vec![0.0; m_max + 1];
        for (m, slot) in c.iter_mut().enumerate().skip(1) {
            let j = (m - 1) as f64;
            ratio *= (nf + j) / (j + 1.0);
            *slot = c1 / nf * m as f64 * ratio;
        }
        Self::new(n, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m_max(&self) -> usize {
        self.c.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.c
    }

    /// c_m, or 0 past the end of the stored sequence.
    pub fn get(&self, m: usize) -> f64 {
        self.c.get(m).copied().unwrap_or(0.0)
    }

    /// d_m = c_m − c_{m−1} with c_{−1} = 0.
    pub fn difference(&self, m: usize) -> f64 {
        if m == 0 {
            self.get(0)
        } else {
            self.get(m) - self.get(m - 1)
        }
    }
}

pub fn invariant_reference(n: usize, m_max: usize) -> Result<CoefficientSequence> {
    CoefficientSequence::reference(n, m_max)
}

/// `(n−1)/(n−2) · (n−2)_m / (m−1)!`, the differences of the reference sequence.
pub fn reference_difference(n: usize, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let ratio = (0..m).fold(1.0, |acc, j| acc * (nf - 2.0 + j as f64) / (j as f64 + 1.0));
    (nf - 1.0) / (nf - 2.0) * m as f64 * ratio
}

/// `(2n−4)_k / k!`, the Taylor coefficients of `(1 − z)^{4−2n}`.
pub fn negative_binomial(n: usize, k: usize) -> f64 {
    let base = 2.0 * n as f64 - 4.0;
    (0..k).fold(1.0, |acc, j| acc * (base + j as f64) / (j as f64 + 1.0))
}

/// Runs the recurrence that determines d_2, d_3, … from d_1:
///
/// ```text
/// a_{k,0} (k+n−2)/(2k+n−2) d_{k+1} = (2n−4)_k/k! d_1 + a_{k,0} k/(2k+n−2) d_k
///     − Σ_{m<k} a_{m,k−m} [ (m+n−2)/(2m+n−2) d_{m+1} − m/(2m+n−2) d_m ]
/// ```
///
/// Returns d_1..d_K.
pub fn recurrence_solve_d(n: usize, d1: f64, k_max: usize) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension must be at least 3, got {n}")));
    }
    if k_max == 0 {
        return Ok(Vec::new());
    }
    let nf = n as f64;
    // a[m][j] = a_{m,j} for m + j ≤ K − 1
    let a = (0..k_max)
        .map(|m| phi_m_taylor(n, m, k_max - 1 - m).map(|t| t.coeffs))
        .collect::<Result<Vec<_>>>()?;
    let up = |m: usize| (m as f64 + nf - 2.0) / (2.0 * m as f64 + nf - 2.0);
    let down = |m: usize| m as f64 / (2.0 * m as f64 + nf - 2.0);

    // d[m] holds d_m; d_0 only ever appears multiplied by zero
    let mut d = vec![0.0; k_max + 1];
    d[1] = d1;
    for k in 1..k_max {
        let mut rhs = CompensatedSum::default();
        rhs.add(negative_binomial(n, k) * d1);
        rhs.add(a[k][0] * down(k) * d[k]);
        for m in 0..k {
            rhs.add(-a[m][k - m] * up(m) * d[m + 1]);
            rhs.add(a[m][k - m] * down(m) * d[m]);
        }
        d[k + 1] = rhs.value() / (a[k][0] * up(k));
    }
    d.remove(0);
    Ok(d)
}

/// Both sides of the coefficient identity `(1 − z)^{4−2n} = Σ_m (n−2)_m/m! Φ_m(z)`
/// at the power z^k, for k = 0..=K.
pub fn series_identity_coefficients(n: usize, k_max: usize) -> Result<Vec<(f64, f64)>> {
    let a = (0..=k_max)
        .map(|m| phi_m_taylor(n, m, k_max - m).map(|t| t.coeffs))
        .collect::<Result<Vec<_>>>()?;
    let nf = n as f64;
    let weight: Vec<f64> = (0..=k_max)
        .scan(1.0, |acc, m| {
            let w = *acc;
            *acc *= (nf - 2.0 + m as f64) / (m as f64 + 1.0);
            Some(w)
        })
        .collect();
    Ok((0..=k_max)
        .map(|k| {
            let rhs = (0..=k).map(|m| weight[m] * a[m][k - m]).sum();
            (negative_binomial(n, k), rhs)
        })
        .collect())
}

/// max_k |lhs_k − rhs_k| over [`series_identity_coefficients`].
pub fn series_identity_residual(n: usize, k_max: usize) -> Result<f64> {
    Ok(series_identity_coefficients(n, k_max)?
        .into_iter()
        .map(|(l, r)| (l - r).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_sequence_n3() {
        let c = invariant_reference(3, 5).unwrap();
        assert_eq!(c.values(), &[0.0, 2.0, 6.0, 12.0, 20.0, 30.0]);
        for m in 1..=5 {
            assert_eq!(c.difference(m), 2.0 * m as f64);
            assert_eq!(reference_difference(3, m), 2.0 * m as f64);
        }
        assert!(invariant_reference(2, 3).is_err());
    }

    #[test]
    fn differences_match_closed_form() {
        for n in 3..=8 {
            let c = invariant_reference(n, 25).unwrap();
            for m in 1..=25 {
                let d = reference_difference(n, m);
                assert!((c.difference(m) - d).abs() <= 1e-12 * d, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn d_recurrence_examples() {
        let d = recurrence_solve_d(3, 2.0, 6).unwrap();
        for (i, v) in d.iter().enumerate() {
            assert!((v - 2.0 * (i + 1) as f64).abs() < 1e-12, "{d:?}");
        }
        assert!(recurrence_solve_d(4, 0.0, 10).unwrap().iter().all(|&v| v == 0.0));
        let d = recurrence_solve_d(5, 4.0, 8).unwrap();
        for (i, v) in d.iter().enumerate() {
            let want = reference_difference(5, i + 1);
            assert!((v - want).abs() < 1e-10 * want.max(1.0), "m={} {v} vs {want}", i + 1);
        }
        assert!(recurrence_solve_d(3, 1.0, 0).unwrap().is_empty());
    }

    #[test]
    fn series_identity_low_order() {
        let c = series_identity_coefficients(3, 1).unwrap();
        assert_eq!(c[0], (1.0, 1.0));
        assert!((c[1].0 - 2.0).abs() < 1e-15 && (c[1].1 - 2.0).abs() < 1e-14);
        let c = series_identity_coefficients(4, 1).unwrap();
        assert!((c[1].0 - 4.0).abs() < 1e-15 && (c[1].1 - 4.0).abs() < 1e-14);
    }

    #[test]
    fn holomorphic_sequence() {
        let c = CoefficientSequence::holomorphic(2, 2.0, 6).unwrap();
        for m in 0..=6 {
            assert!((c.get(m) - (m * (m + 1)) as f64).abs() < 1e-12);
        }
        let c = CoefficientSequence::holomorphic(1, 1.0, 4).unwrap();
        assert_eq!(c.values(), &[0.0, 1.0, 2.0, 3.0, 4.0]);
        assert!(CoefficientSequence::new(3, vec![1.0, -1.0]).is_err());
    }
}
