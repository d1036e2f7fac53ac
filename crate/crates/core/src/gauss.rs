//! One-dimensional Gauss rules built from three-term recurrences.
//!
//! Nodes start from the eigenvalues of the symmetric Jacobi matrix
//! (Golub–Welsch), are polished by Newton steps on the recurrence, and the
//! weights come from the Christoffel function `1 / Σ_k p_k(x)²` of the
//! orthonormal polynomials, which keeps tiny weights relatively accurate.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::specfun::gamma;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Gauss–Gegenbauer rule for the weight `(1 − t²)^alpha` on [−1, 1].
    pub fn gegenbauer(points: usize, alpha: f64) -> Result<Self> {
        if points == 0 {
            return Err(Error::Domain("Gauss rule needs at least one point".into()));
        }
        if alpha <= -1.0 {
            return Err(Error::Domain(format!(
                "Gegenbauer exponent must exceed -1, got {alpha}"
            )));
        }
        let diag = vec![0.0; points];
        let off: Vec<f64> = (1..points)
            .map(|k| {
                let k = k as f64;
                let s = 2.0 * k + 2.0 * alpha;
                if k == 1.0 {
                    (1.0 / (3.0 + 2.0 * alpha)).sqrt()
                } else {
                    (k * (k + 2.0 * alpha) / ((s + 1.0) * (s - 1.0))).sqrt()
                }
            })
            .collect();
        let mu0 = std::f64::consts::PI.sqrt() * gamma(alpha + 1.0) / gamma(alpha + 1.5);
        let mut rule = Self::from_recurrence(&diag, &off, mu0);
        // the weight is even; enforce exact node symmetry
        let n = rule.nodes.len();
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
            let w = 0.5 * (rule.weights[i] + rule.weights[j]);
            rule.nodes[i] = -x;
            rule.nodes[j] = x;
            rule.weights[i] = w;
            rule.weights[j] = w;
        }
        if n % 2 == 1 {
            rule.nodes[n / 2] = 0.0;
        }
        Ok(rule)
    }

    /// Generalized Gauss–Laguerre rule for the weight `t^alpha e^{−t}` on [0, ∞).
    pub fn laguerre(points: usize, alpha: f64) -> Result<Self> {
        if points == 0 {
            return Err(Error::Domain("Gauss rule needs at least one point".into()));
        }
        if alpha <= -1.0 {
            return Err(Error::Domain(format!("Laguerre exponent must exceed -1, got {alpha}")));
        }
        let diag: Vec<f64> = (0..points).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
        let off: Vec<f64> = (1..points)
            .map(|k| {
                let k = k as f64;
                (k * (k + alpha)).sqrt()
            })
            .collect();
        Ok(Self::from_recurrence(&diag, &off, gamma(alpha + 1.0)))
    }

    /// `diag[k] = a_k` for k < N, `off[k-1] = b_k` for 1 ≤ k < N, in the
    /// orthonormal recurrence `b_{k+1} p_{k+1} = (x − a_k) p_k − b_k p_{k−1}`.
    fn from_recurrence(diag: &[f64], off: &[f64], mu0: f64) -> Self {
        let n = diag.len();
        let mut jacobi = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            jacobi[(k, k)] = diag[k];
        }
        for k in 1..n {
            jacobi[(k, k - 1)] = off[k - 1];
            jacobi[(k - 1, k)] = off[k - 1];
        }
        let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
        nodes.sort_by(|a, b| a.total_cmp(b));

        let p0 = 1.0 / mu0.sqrt();
        let eval = |x: f64| -> (f64, f64, f64) {
            // returns (q_N ∝ p_N, q_N', Σ_{k<N} p_k²)
            let (mut pm, mut p) = (0.0, p0);
            let (mut dpm, mut dp) = (0.0, 0.0);
            let mut sq = p * p;
            for k in 0..n - 1 {
                let bm = if k == 0 { 0.0 } else { off[k - 1] };
                let pn = ((x - diag[k]) * p - bm * pm) / off[k];
                let dpn = (p + (x - diag[k]) * dp - bm * dpm) / off[k];
                pm = p;
                p = pn;
                dpm = dp;
                dp = dpn;
                sq += p * p;
            }
            let bm = if n >= 2 { off[n - 2] } else { 0.0 };
            let q = (x - diag[n - 1]) * p - bm * pm;
            let dq = p + (x - diag[n - 1]) * dp - bm * dpm;
            (q, dq, sq)
        };

        let weights = nodes
            .iter_mut()
            .map(|x| {
                for _ in 0..4 {
                    let (q, dq, _) = eval(*x);
                    if dq == 0.0 {
                        break;
                    }
                    let step = q / dq;
                    *x -= step;
                    if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                        break;
                    }
                }
                1.0 / eval(*x).2
            })
            .collect();
        Self { nodes, weights }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{factorial, pochhammer};

    #[test]
    fn legendre_low_order() {
        let r = GaussRule::gegenbauer(2, 0.0).unwrap();
        let x = 1.0 / 3.0_f64.sqrt();
        assert!((r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gegenbauer_moments() {
        // ∫(1−t²)^α t^{2k} dt = B(k+1/2, α+1) = Γ(k+1/2)Γ(α+1)/Γ(k+α+3/2)
        for &alpha in &[-0.5, 0.0, 0.5, 1.0, 1.5] {
            let r = GaussRule::gegenbauer(20, alpha).unwrap();
            for k in 0..20 {
                let exact = gamma(k as f64 + 0.5) * gamma(alpha + 1.0) / gamma(k as f64 + alpha + 1.5);
                let got = r.integrate(|t| t.powi(2 * k));
                assert!((got - exact).abs() < 1e-13 * exact.max(1.0), "alpha={alpha} k={k}");
                let odd = r.integrate(|t| t.powi(2 * k + 1));
                assert!(odd.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn laguerre_moments() {
        for &alpha in &[0.0, 1.5] {
            let r = GaussRule::laguerre(64, alpha).unwrap();
            assert!(r.weights.iter().all(|&w| w > 0.0));
            for k in 0..12 {
                let exact = gamma(alpha + 1.0) * pochhammer(alpha + 1.0, k);
                let got = r.integrate(|t| t.powi(k as i32));
                assert!((got - exact).abs() < 1e-12 * exact, "alpha={alpha} k={k}");
            }
        }
        let r = GaussRule::laguerre(4, 0.0).unwrap();
        assert!((r.integrate(|t| t.powi(5)) - factorial(5)).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GaussRule::gegenbauer(0, 0.0).is_err());
        assert!(GaussRule::gegenbauer(4, -1.0).is_err());
        assert!(GaussRule::laguerre(4, -1.5).is_err());
    }
}
