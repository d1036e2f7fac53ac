//! Hyperbolic-harmonic functions on the real unit ball.
//!
//! Every degree-m component of an H-harmonic function has the form
//! `f_m(rζ) = S_m(r²) r^m f_m(ζ)` with boundary values in the degree-m
//! spherical harmonics and the radial profile
//! `S_m(t) = (n−1)_m/(n/2)_m · ₂F₁(m, 1−n/2; m+n/2; t)`, normalized so S_m(1) = 1.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{dot, norm_sq};
use crate::specfun::{hyp2f1, pochhammer, SeriesControl};
use crate::sphere::SphereQuadrature;
use crate::zonal::ZonalEvaluator;

/// Default bound on `1 / (S_m(r²) r^m)` accepted by the projection.
pub const DEFAULT_AMPLIFICATION_CAP: f64 = 1e4;

/// Radial factor S_m(t) for 0 ≤ t ≤ 1.
pub fn radial_sm(n: usize, m: usize, t: f64) -> Result<f64> {
    radial_sm_with(n, m, t, &SeriesControl::default())
}

pub fn radial_sm_with(n: usize, m: usize, t: f64, ctl: &SeriesControl) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension must be at least 3, got {n}")));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("radial factor needs 0 <= t <= 1, got {t}")));
    }
    let nf = n as f64;
    let mf = m as f64;
    let pref = pochhammer(nf - 1.0, m) / pochhammer(nf / 2.0, m);
    Ok(pref * hyp2f1(mf, 1.0 - nf / 2.0, mf + nf / 2.0, t, ctl)?)
}

/// The solid H-harmonic `x ↦ S_m(|x|²) Z_m(x, p)` with unit pole p.
#[derive(Debug, Clone)]
pub struct SolidHarmonic {
    degree: usize,
    pole: Vec<f64>,
    zonal: ZonalEvaluator,
    ctl: SeriesControl,
}

impl SolidHarmonic {
    pub fn new(degree: usize, pole: Vec<f64>) -> Result<Self> {
        let nrm = norm_sq(&pole).sqrt();
        if (nrm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("pole must be a unit vector, |p| = {nrm}")));
        }
        let zonal = ZonalEvaluator::new(pole.len(), degree)?;
        Ok(Self {
            degree,
            pole,
            zonal,
            ctl: SeriesControl::new(1e-16, 1_000_000)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.pole.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn pole(&self) -> &[f64] {
        &self.pole
    }

    /// Value at a point of the closed ball; NaN if the radial series cannot be
    /// summed there (which quadrature reports as an evaluation error).
    pub fn eval(&self, x: &[f64]) -> f64 {
        let t = norm_sq(x).min(1.0);
        let z = self
            .zonal
            .eval(self.degree, x, &self.pole)
            .expect("degree within evaluator range");
        match radial_sm_with(self.dim(), self.degree, t, &self.ctl) {
            Ok(s) => s * z,
            Err(_) => f64::NAN,
        }
    }
}

/// Richardson extrapolation of [`hyperbolic_laplacian_fd`] from steps h and h/2,
/// cancelling the O(h²) term of the central stencil.
pub fn hyperbolic_laplacian_richardson<F>(f: F, x: &[f64], h: f64) -> Result<HyperbolicLaplacian>
where
    F: Fn(&[f64]) -> f64,
{
    let coarse = hyperbolic_laplacian_fd(&f, x, h)?;
    let fine = hyperbolic_laplacian_fd(&f, x, 0.5 * h)?;
    Ok(HyperbolicLaplacian {
        value: (4.0 * fine.value - coarse.value) / 3.0,
        scale: fine.scale,
    })
}

/// Central-difference evaluation of the hyperbolic Laplacian
/// `(1−|x|²)[(1−|x|²)Δf + 2(n−2)⟨x, ∇f⟩]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicLaplacian {
    pub value: f64,
    /// Sum of the absolute sizes of the assembled terms; the natural scale
    /// against which `value` is judged to vanish.
    pub scale: f64,
}

impl HyperbolicLaplacian {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.abs()
        } else {
            self.value.abs() / self.scale
        }
    }
}

pub fn hyperbolic_laplacian_fd<F>(f: F, x: &[f64], h: f64) -> Result<HyperbolicLaplacian>
where
    F: Fn(&[f64]) -> f64,
{
    let n = x.len();
    let r = norm_sq(x).sqrt();
    if !(h > 0.0) || r + 2.0 * h >= 1.0 {
        return Err(Error::Domain(format!(
            "finite-difference stencil of step {h} at radius {r} leaves the ball"
        )));
    }
    let f0 = f(x);
    let mut probe = x.to_vec();
    let mut lap_terms = Vec::with_capacity(n);
    let mut grad_terms = Vec::with_capacity(n);
    for i in 0..n {
        probe[i] = x[i] + h;
        let fp = f(&probe);
        probe[i] = x[i] - h;
        let fm = f(&probe);
        probe[i] = x[i];
        lap_terms.push((fp - 2.0 * f0 + fm) / (h * h));
        grad_terms.push(x[i] * (fp - fm) / (2.0 * h));
    }
    let c = 1.0 - r * r;
    let k = 2.0 * (n as f64 - 2.0);
    let value = c * (c * lap_terms.iter().sum::<f64>() + k * grad_terms.iter().sum::<f64>());
    let scale =
        c * (c * lap_terms.iter().map(|v| v.abs()).sum::<f64>() + k * grad_terms.iter().map(|v| v.abs()).sum::<f64>());
    Ok(HyperbolicLaplacian { value, scale })
}

/// Boundary values of the Peter–Weyl components f_0..f_{m_max} of an
/// H-harmonic f, recovered from samples of f on the sphere of radius r.
#[derive(Debug, Clone)]
pub struct PeterWeylComponents<'q> {
    quad: &'q SphereQuadrature,
    zonal: ZonalEvaluator,
    radius: f64,
    samples: Vec<f64>,
    /// 1 / (S_m(r²) r^m)
    inverse_profile: Vec<f64>,
    /// values[m][i] = f_m(ζ_i)
    values: Vec<Vec<f64>>,
}

impl<'q> PeterWeylComponents<'q> {
    pub fn dim(&self) -> usize {
        self.quad.dim()
    }

    pub fn m_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// f_m on the quadrature nodes.
    pub fn component(&self, m: usize) -> &[f64] {
        &self.values[m]
    }

    pub fn amplification(&self, m: usize) -> f64 {
        self.inverse_profile[m].abs()
    }

    /// f_m(ζ) at an arbitrary unit vector ζ.
    pub fn eval_component(&self, m: usize, zeta: &[f64]) -> f64 {
        let mut z = vec![0.0; m + 1];
        let sum: f64 = self
            .quad
            .nodes()
            .zip(self.quad.weights())
            .zip(&self.samples)
            .map(|((eta, &w), &s)| {
                self.zonal.unit_all(dot(zeta, eta).clamp(-1.0, 1.0), &mut z);
                w * s * z[m]
            })
            .sum();
        sum * self.inverse_profile[m]
    }

    /// ‖f_m‖² in L²(S^{n−1}, σ).
    pub fn norm_sq(&self, m: usize) -> f64 {
        self.values[m]
            .iter()
            .zip(self.quad.weights())
            .map(|(v, w)| w * v * v)
            .sum()
    }

    /// Σ_m S_m(|x|²) |x|^m f_m(x/|x|), the truncated expansion at an interior point.
    pub fn reconstruct(&self, x: &[f64]) -> Result<f64> {
        let r = norm_sq(x).sqrt();
        if r == 0.0 {
            return Ok(self.eval_component(0, self.quad.node(0)));
        }
        let zeta: Vec<f64> = x.iter().map(|v| v / r).collect();
        let n = self.dim();
        (0..=self.m_max())
            .map(|m| Ok(radial_sm(n, m, r * r)? * r.powi(m as i32) * self.eval_component(m, &zeta)))
            .sum()
    }
}

pub fn peter_weyl_project<'q, F>(
    f: F,
    m_max: usize,
    radius: f64,
    quad: &'q SphereQuadrature,
) -> Result<PeterWeylComponents<'q>>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    peter_weyl_project_with_cap(f, m_max, radius, quad, DEFAULT_AMPLIFICATION_CAP)
}

/// Recovers f_m(ζ) = ∫ f(rη) Z_m(ζ, η) dσ(η) / (S_m(r²) r^m) on every node.
pub fn peter_weyl_project_with_cap<'q, F>(
    f: F,
    m_max: usize,
    radius: f64,
    quad: &'q SphereQuadrature,
    cap: f64,
) -> Result<PeterWeylComponents<'q>>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::Domain(format!(
            "projection radius must lie in (0, 1), got {radius}"
        )));
    }
    let n = quad.dim();
    let inverse_profile = (0..=m_max)
        .map(|m| {
            let p = radial_sm(n, m, radius * radius)? * radius.powi(m as i32);
            let amplification = 1.0 / p.abs();
            if amplification > cap {
                return Err(Error::Conditioning {
                    degree: m,
                    amplification,
                    cap,
                });
            }
            Ok(1.0 / p)
        })
        .collect::<Result<Vec<_>>>()?;

    let samples = (0..quad.len())
        .into_par_iter()
        .map(|index| {
            let x: Vec<f64> = quad.node(index).iter().map(|v| v * radius).collect();
            let value = f(&x);
            if value.is_finite() {
                Ok(value)
            } else {
                Err(Error::Evaluation { index, value })
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let zonal = ZonalEvaluator::new(n, m_max)?;
    let per_node: Vec<Vec<f64>> = (0..quad.len())
        .into_par_iter()
        .map(|i| {
            let zeta = quad.node(i);
            let mut acc = vec![0.0; m_max + 1];
            let mut z = vec![0.0; m_max + 1];
            for ((eta, &w), &s) in quad.nodes().zip(quad.weights()).zip(&samples) {
                zonal.unit_all(dot(zeta, eta).clamp(-1.0, 1.0), &mut z);
                let ws = w * s;
                acc.iter_mut().zip(&z).for_each(|(a, zm)| *a += ws * zm);
            }
            acc.iter_mut().zip(&inverse_profile).for_each(|(a, p)| *a *= p);
            acc
        })
        .collect();
    let values = (0..=m_max).map(|m| per_node.iter().map(|v| v[m]).collect()).collect();

    Ok(PeterWeylComponents {
        quad,
        zonal,
        radius,
        samples,
        inverse_profile,
        values,
    })
}
