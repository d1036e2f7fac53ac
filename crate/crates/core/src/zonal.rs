//! Zonal harmonics of R^n.
//!
//! Z_m(x, y) is the reproducing kernel of the degree-m spherical harmonics in
//! L²(S^{n−1}, σ), defined through the generating function
//!
//! ```text
//! Σ_m t^m Z_m(x, y) = (1 − t²|x|²|y|²) / (1 − 2t⟨x, y⟩ + t²|x|²|y|²)^{n/2}
//! ```
//!
//! On unit vectors it depends only on s = ⟨x, y⟩ and satisfies
//! `2s Z_m = (m+1)/(m+n/2) Z_{m+1} + (m+n−3)/(m+n/2−2) Z_{m−1}`, which
//! [`ZonalEvaluator`] runs upward from Z_0 = 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{dot, hermitian, norm_sq};
use crate::specfun::{factorial, pochhammer};

#[derive(Debug, Clone)]
pub struct ZonalEvaluator {
    dim: usize,
    m_max: usize,
    /// (m + n/2) / (m + 1)
    up: Vec<f64>,
    /// (m + n − 3) / (m + n/2 − 2), unused at m = 0
    down: Vec<f64>,
}

impl ZonalEvaluator {
    pub fn new(n: usize, m_max: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("dimension must be at least 3, got {n}")));
        }
        let h = n as f64 / 2.0;
        let up = (0..=m_max).map(|m| (m as f64 + h) / (m as f64 + 1.0)).collect();
        let down = (0..=m_max)
            .map(|m| {
                if m == 0 {
                    0.0
                } else {
                    (m as f64 + n as f64 - 3.0) / (m as f64 + h - 2.0)
                }
            })
            .collect();
        Ok(Self {
            dim: n,
            m_max,
            up,
            down,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// Multiplier of Z_{m+1} in the three-term relation: (m+1)/(m+n/2).
    pub fn raise_coeff(&self, m: usize) -> f64 {
        1.0 / self.up[m]
    }

    /// Multiplier of Z_{m−1} in the three-term relation; zero at m = 0, where
    /// the Z_{−1} term is absent.
    pub fn lower_coeff(&self, m: usize) -> f64 {
        self.down[m]
    }

    /// Writes Z_0..Z_{out.len()−1} on unit vectors with ⟨x, y⟩ = s.
    ///
    /// `out.len()` must not exceed `m_max + 1`.
    pub fn unit_all(&self, s: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        let mut prev = 0.0;
        for m in 0..out.len() - 1 {
            let cur = out[m];
            let lowered = if m == 0 { 0.0 } else { self.down[m] * prev };
            out[m + 1] = self.up[m] * (2.0 * s * cur - lowered);
            prev = cur;
        }
    }

    pub fn unit(&self, m: usize, s: f64) -> Result<f64> {
        self.check(m)?;
        let mut buf = vec![0.0; m + 1];
        self.unit_all(s, &mut buf);
        Ok(buf[m])
    }

    /// Z_m(x, y) for arbitrary points, by homogeneity of degree m in each argument.
    pub fn eval(&self, m: usize, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check(m)?;
        let nx = norm_sq(x).sqrt();
        let ny = norm_sq(y).sqrt();
        if m == 0 {
            return Ok(1.0);
        }
        if nx == 0.0 || ny == 0.0 {
            return Ok(0.0);
        }
        let s = (dot(x, y) / (nx * ny)).clamp(-1.0, 1.0);
        Ok(self.unit(m, s)? * (nx * ny).powi(m as i32))
    }

    fn check(&self, m: usize) -> Result<()> {
        if m > self.m_max {
            return Err(Error::Degree {
                requested: m,
                max: self.m_max,
            });
        }
        Ok(())
    }
}

/// The t^m coefficient of the generating function by binomial expansion:
///
/// `(1 − 2ts + t²P)^{−n/2} = Σ_j (n/2)_j/j! (2ts − t²P)^j`, then multiplied by
/// `(1 − t²P)`, with s = ⟨x, y⟩ and P = |x|²|y|².
pub fn zonal_generating_oracle(n: usize, m: usize, x: &[f64], y: &[f64]) -> f64 {
    let s = dot(x, y);
    let p = norm_sq(x) * norm_sq(y);
    let h = n as f64 / 2.0;
    let coeff = |deg: usize| -> f64 {
        // pairs (j, i) with j + i = deg and 0 ≤ i ≤ j
        (deg.div_ceil(2)..=deg)
            .map(|j| {
                let i = deg - j;
                pochhammer(h, j) / factorial(j) * binomial(j, i) * (2.0 * s).powi((j - i) as i32) * (-p).powi(i as i32)
            })
            .sum()
    };
    let head = coeff(m);
    if m >= 2 {
        head - p * coeff(m - 2)
    } else {
        head
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `Z_m(u, u) = |u|^{2m} (n/2)_m (n−2)_m / ((n/2−1)_m m!)`.
pub fn zonal_diag(n: usize, m: usize, u: &[f64]) -> f64 {
    let nf = n as f64;
    let scale = (0..m).fold(1.0, |acc, j| {
        let j = j as f64;
        acc * (nf / 2.0 + j) * (nf - 2.0 + j) / ((nf / 2.0 - 1.0 + j) * (1.0 + j))
    });
    norm_sq(u).powi(m as i32) * scale
}

/// Reproducing kernel of degree-m homogeneous polynomials on the sphere of
/// C^n: `(n)_m / m! · ⟨z, w⟩^m`.
pub fn complex_zonal(n: usize, m: usize, z: &[Complex64], w: &[Complex64]) -> Complex64 {
    let scale = (0..m).fold(1.0, |acc, j| acc * (n + j) as f64 / (j + 1) as f64);
    hermitian(z, w).powu(m as u32) * scale
}
