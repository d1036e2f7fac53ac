//! Integration over the unit sphere S^{n−1} against the normalized surface
//! measure σ (total mass 1).
//!
//! [`SphereQuadrature`] is a product rule in hyperspherical coordinates:
//! Gauss–Gegenbauer rules in `cos θ_j` for the polar angles (weight
//! `sin^{n−1−j} θ_j`) and an equispaced rule with `2·order` points on the
//! azimuth. It integrates every polynomial of degree `≤ 2·order − 1` exactly.
//!
//! [`AxialPairQuadrature`] integrates over pairs `(x, y)` of sphere points for
//! integrands that depend only on `⟨e, x⟩`, `⟨e, y⟩` and `⟨x, y⟩` for a fixed
//! unit axis `e`. Such integrands are invariant under rotations fixing `e`,
//! which reduces the 2(n−1)-dimensional integral to three Gauss rules.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gauss::GaussRule;
use crate::specfun::pochhammer;

pub const DEFAULT_NODE_BUDGET: usize = 4_000_000;

/// Nodes per parallel work item; fixed so sums are reduced in the same order
/// regardless of the thread count.
const CHUNK: usize = 512;

/// Default product-rule order for dimension `n`; `None` means the node count
/// is too large and Monte Carlo should be used instead.
pub fn default_order(n: usize) -> Option<usize> {
    match n {
        3 | 4 => Some(24),
        5 => Some(12),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    exact_degree: usize,
}

impl SphereQuadrature {
    pub fn build(n: usize, order: usize) -> Result<Self> {
        Self::build_with_budget(n, order, DEFAULT_NODE_BUDGET)
    }

    pub fn build_with_budget(n: usize, order: usize, budget: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("sphere dimension n must be at least 3, got {n}")));
        }
        if order < 2 {
            return Err(Error::Domain(format!(
                "quadrature order must be at least 2, got {order}"
            )));
        }
        let azimuth = 2 * order;
        let required = (0..n - 2)
            .try_fold(azimuth, |acc: usize, _| acc.checked_mul(order))
            .unwrap_or(usize::MAX);
        if required > budget {
            return Err(Error::Resource { required, budget });
        }

        // polar rule j (1-based) has weight (1 − t²)^{(n−2−j)/2}
        let polar: Vec<GaussRule> = (1..=n - 2)
            .map(|j| {
                let mut r = GaussRule::gegenbauer(order, (n - 2 - j) as f64 / 2.0)?;
                let total: f64 = r.weights.iter().sum();
                r.weights.iter_mut().for_each(|w| *w /= total);
                Ok(r)
            })
            .collect::<Result<_>>()?;
        let (az_cos, az_sin): (Vec<f64>, Vec<f64>) = (0..azimuth)
            .map(|k| {
                let phi = std::f64::consts::PI * k as f64 / order as f64;
                (phi.cos(), phi.sin())
            })
            .unzip();
        let az_weight = 1.0 / azimuth as f64;

        let mut nodes = Vec::with_capacity(required * n);
        let mut weights = Vec::with_capacity(required);
        let mut idx = vec![0usize; n - 2];
        loop {
            let mut w = az_weight;
            let mut prefix = 1.0;
            let mut head = Vec::with_capacity(n - 2);
            for (j, rule) in polar.iter().enumerate() {
                let t = rule.nodes[idx[j]];
                w *= rule.weights[idx[j]];
                head.push(prefix * t);
                prefix *= (1.0 - t * t).max(0.0).sqrt();
            }
            for k in 0..azimuth {
                nodes.extend_from_slice(&head);
                nodes.push(prefix * az_cos[k]);
                nodes.push(prefix * az_sin[k]);
                weights.push(w);
            }
            // mixed-radix increment over the polar indices
            let mut pos = n - 2;
            loop {
                if pos == 0 {
                    return Ok(Self {
                        dim: n,
                        nodes,
                        weights,
                        exact_degree: 2 * order - 1,
                    });
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < order {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn exact_degree(&self) -> usize {
        self.exact_degree
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.nodes.chunks_exact(self.dim)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ_i w_i f(x_i).
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let v = self.integrate_many(1, |x, out| out[0] = f(x))?;
        Ok(v[0])
    }

    /// Integrates `k` functions at once; `f` writes their values at a node
    /// into `out`.
    pub fn integrate_many<F>(&self, k: usize, f: F) -> Result<Vec<f64>>
    where
        F: Fn(&[f64], &mut [f64]) + Sync,
    {
        weighted_sum(&self.nodes, &self.weights, self.dim, k, &f)
    }

    /// Σ_i Σ_j w_i w_j f(x_i, y_j) for `k` integrands at once.
    pub fn integrate_pairs<F>(&self, k: usize, f: F) -> Result<Vec<f64>>
    where
        F: Fn(&[f64], &[f64], &mut [f64]) + Sync,
    {
        pair_sum(
            (&self.nodes, &self.weights),
            (&self.nodes, &self.weights),
            self.dim,
            k,
            &f,
        )
    }

    /// Σ_i Σ_j w_i g_i w_j h_j f(x_i, y_j), with per-node factors `g` and `h`
    /// evaluated once instead of once per pair.
    pub fn integrate_pairs_weighted<F>(&self, g: &[f64], h: &[f64], k: usize, f: F) -> Result<Vec<f64>>
    where
        F: Fn(&[f64], &[f64], &mut [f64]) + Sync,
    {
        if g.len() != self.len() || h.len() != self.len() {
            return Err(Error::Domain(format!(
                "node factors have lengths {} and {}, rule has {} nodes",
                g.len(),
                h.len(),
                self.len()
            )));
        }
        let wg: Vec<f64> = self.weights.iter().zip(g).map(|(w, v)| w * v).collect();
        let wh: Vec<f64> = self.weights.iter().zip(h).map(|(w, v)| w * v).collect();
        pair_sum((&self.nodes, &wg), (&self.nodes, &wh), self.dim, k, &f)
    }
}

fn weighted_sum<F>(nodes: &[f64], weights: &[f64], dim: usize, k: usize, f: &F) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    let partials = weights
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(c, ws)| {
            let mut acc = vec![0.0; k];
            let mut buf = vec![0.0; k];
            for (i, &w) in ws.iter().enumerate() {
                let index = c * CHUNK + i;
                f(&nodes[index * dim..(index + 1) * dim], &mut buf);
                for (a, &v) in acc.iter_mut().zip(&buf) {
                    if !v.is_finite() {
                        return Err(Error::Evaluation { index, value: v });
                    }
                    *a += w * v;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(reduce(partials, k))
}

fn pair_sum<F>((xs, wx): (&[f64], &[f64]), (ys, wy): (&[f64], &[f64]), dim: usize, k: usize, f: &F) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &[f64], &mut [f64]) + Sync,
{
    let partials = wx
        .par_iter()
        .enumerate()
        .map(|(i, &w_outer)| {
            let x = &xs[i * dim..(i + 1) * dim];
            let mut inner = vec![0.0; k];
            let mut buf = vec![0.0; k];
            for (j, &w) in wy.iter().enumerate() {
                f(x, &ys[j * dim..(j + 1) * dim], &mut buf);
                for (a, &v) in inner.iter_mut().zip(&buf) {
                    if !v.is_finite() {
                        return Err(Error::Evaluation {
                            index: i * wy.len() + j,
                            value: v,
                        });
                    }
                    *a += w * v;
                }
            }
            inner.iter_mut().for_each(|v| *v *= w_outer);
            Ok(inner)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(reduce(partials, k))
}

fn reduce(partials: Vec<Vec<f64>>, k: usize) -> Vec<f64> {
    partials.into_iter().fold(vec![0.0; k], |mut acc, p| {
        acc.iter_mut().zip(p).for_each(|(a, v)| *a += v);
        acc
    })
}

/// Closed-form moment `∫ x^α dσ = Π_i (1/2)_{α_i/2} / (n/2)_{|α|/2}` for even
/// exponents; zero if any exponent is odd.
pub fn monomial_moment(exponents: &[usize]) -> f64 {
    if exponents.iter().any(|e| e % 2 == 1) {
        return 0.0;
    }
    let n = exponents.len() as f64;
    let half: usize = exponents.iter().map(|e| e / 2).sum();
    let num: f64 = exponents.iter().map(|&e| pochhammer(0.5, e / 2)).product();
    num / pochhammer(n / 2.0, half)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
}

/// Monte Carlo average over uniform points of S^{n−1}, drawn as normalized
/// standard Gaussian vectors from a ChaCha8 stream seeded with `seed`.
pub fn mc_integrate<F>(n: usize, samples: usize, seed: u64, f: F) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> f64,
{
    if samples < 2 {
        return Err(Error::Domain(format!(
            "Monte Carlo needs at least 2 samples, got {samples}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n];
    let mut values = Vec::with_capacity(samples);
    for index in 0..samples {
        random_unit_into(&mut rng, &mut x);
        let v = f(&x);
        if !v.is_finite() {
            return Err(Error::Evaluation { index, value: v });
        }
        values.push(v);
    }
    let mean = values.iter().sum::<f64>() / samples as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
    Ok(McEstimate {
        estimate: mean,
        stderr: (var / samples as f64).sqrt(),
    })
}

/// Fills `x` with a uniform point of the unit sphere.
pub fn random_unit_into<R: rand::Rng>(rng: &mut R, x: &mut [f64]) {
    loop {
        for v in x.iter_mut() {
            *v = StandardNormal.sample(rng);
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-12 {
            x.iter_mut().for_each(|v| *v /= norm);
            return;
        }
    }
}

/// Product rule on S^{n−1} × S^{n−1} for integrands invariant under the
/// rotations that fix an axis.
#[derive(Debug, Clone)]
pub struct AxialPairQuadrature {
    dim: usize,
    xs: Vec<f64>,
    wx: Vec<f64>,
    ys: Vec<f64>,
    wy: Vec<f64>,
}

impl AxialPairQuadrature {
    /// Builds the rule about the axis `e_1`.
    ///
    /// Writing `x = (s, √(1−s²) ξ)`, `y = (u, √(1−u²) η)` with ξ, η on S^{n−2},
    /// `s` and `u` carry the weight `(1−s²)^{(n−3)/2}` and `t = ⟨ξ, η⟩` the
    /// weight `(1−t²)^{(n−4)/2}`; each factor uses `order` Gauss points.
    pub fn build(n: usize, order: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("sphere dimension n must be at least 3, got {n}")));
        }
        let normalized = |alpha: f64| -> Result<GaussRule> {
            let mut r = GaussRule::gegenbauer(order, alpha)?;
            let total: f64 = r.weights.iter().sum();
            r.weights.iter_mut().for_each(|w| *w /= total);
            Ok(r)
        };
        let axial = normalized((n as f64 - 3.0) / 2.0)?;
        let twist = normalized((n as f64 - 4.0) / 2.0)?;

        let mut xs = Vec::with_capacity(order * n);
        for &s in &axial.nodes {
            let mut x = vec![0.0; n];
            x[0] = s;
            x[1] = (1.0 - s * s).sqrt();
            xs.extend_from_slice(&x);
        }
        let mut ys = Vec::with_capacity(order * order * n);
        let mut wy = Vec::with_capacity(order * order);
        for (&u, &wu) in axial.nodes.iter().zip(&axial.weights) {
            let ru = (1.0 - u * u).sqrt();
            for (&t, &wt) in twist.nodes.iter().zip(&twist.weights) {
                let mut y = vec![0.0; n];
                y[0] = u;
                y[1] = ru * t;
                y[2] = ru * (1.0 - t * t).max(0.0).sqrt();
                ys.extend_from_slice(&y);
                wy.push(wu * wt);
            }
        }
        Ok(Self {
            dim: n,
            xs,
            wx: axial.weights,
            ys,
            wy,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of (x, y) node pairs.
    pub fn len(&self) -> usize {
        self.wx.len() * self.wy.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same rule about the unit axis `axis`, obtained by the Householder
    /// reflection that maps `e_1` to `axis`.
    pub fn oriented(&self, axis: &[f64]) -> Result<Self> {
        if axis.len() != self.dim {
            return Err(Error::Domain(format!(
                "axis has dimension {}, rule has {}",
                axis.len(),
                self.dim
            )));
        }
        let norm = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("axis must be a unit vector, |axis| = {norm}")));
        }
        let mut v = axis.iter().map(|a| -a).collect::<Vec<_>>();
        v[0] += 1.0;
        let vv: f64 = v.iter().map(|c| c * c).sum();
        let mut out = self.clone();
        if vv < 1e-30 {
            return Ok(out);
        }
        let reflect = |pts: &mut [f64]| {
            for p in pts.chunks_exact_mut(self.dim) {
                let dot: f64 = p.iter().zip(&v).map(|(a, b)| a * b).sum();
                let scale = 2.0 * dot / vv;
                p.iter_mut().zip(&v).for_each(|(a, b)| *a -= scale * b);
            }
        };
        reflect(&mut out.xs);
        reflect(&mut out.ys);
        Ok(out)
    }

    pub fn integrate_pairs<F>(&self, k: usize, f: F) -> Result<Vec<f64>>
    where
        F: Fn(&[f64], &[f64], &mut [f64]) + Sync,
    {
        pair_sum((&self.xs, &self.wx), (&self.ys, &self.wy), self.dim, k, &f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn nodes_and_weights_are_normalized() {
        for n in 3..=5 {
            let q = SphereQuadrature::build(n, 6).unwrap();
            assert_eq!(q.len(), 6usize.pow(n as u32 - 2) * 12);
            for x in q.nodes() {
                assert!((dot(x, x).sqrt() - 1.0).abs() < 1e-13);
            }
            assert!((q.weights().iter().sum::<f64>() - 1.0).abs() < 1e-13);
            assert!(q.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn small_moments() {
        let q = SphereQuadrature::build(3, 8).unwrap();
        assert!((q.integrate(|_| 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((q.integrate(|x| x[0].powi(4)).unwrap() - 0.2).abs() < 1e-14);
        for n in 3..=5 {
            let q = SphereQuadrature::build(n, 4).unwrap();
            let v = q.integrate(|x| x[0] * x[0]).unwrap();
            assert!((v - 1.0 / n as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn exponential_moment() {
        let q = SphereQuadrature::build(3, 16).unwrap();
        let v = q.integrate(|x| x[0].exp()).unwrap();
        assert!((v - 1.0_f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn moment_formula_examples() {
        assert_eq!(monomial_moment(&[4, 0, 0]), 0.2);
        assert_eq!(monomial_moment(&[1, 1, 0]), 0.0);
        assert!((monomial_moment(&[2, 0, 0, 0]) - 0.25).abs() < 1e-16);
    }

    #[test]
    fn budget_is_enforced() {
        match SphereQuadrature::build_with_budget(6, 20, 1000) {
            Err(Error::Resource { required, budget }) => {
                assert_eq!(required, 20usize.pow(4) * 40);
                assert_eq!(budget, 1000);
            }
            other => panic!("expected resource error, got {other:?}"),
        }
        assert!(SphereQuadrature::build(2, 4).is_err());
        assert!(SphereQuadrature::build(3, 1).is_err());
    }

    #[test]
    fn non_finite_values_are_reported_with_index() {
        let q = SphereQuadrature::build(3, 4).unwrap();
        let bad = 5;
        let target = q.node(bad).to_vec();
        let err = q
            .integrate(|x| if x == target.as_slice() { f64::NAN } else { 1.0 })
            .unwrap_err();
        assert!(matches!(err, Error::Evaluation { index, .. } if index == bad));
    }

    #[test]
    fn monte_carlo_constant_and_odd() {
        let c = mc_integrate(4, 100, 1, |_| 1.0).unwrap();
        assert_eq!(c.estimate, 1.0);
        assert_eq!(c.stderr, 0.0);
        let odd = mc_integrate(3, 100_000, 7, |x| x[0]).unwrap();
        assert!(odd.estimate.abs() <= 4.0 * odd.stderr);
        assert!(mc_integrate(3, 1, 7, |x| x[0]).is_err());
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let a = mc_integrate(5, 1000, 42, |x| x[0].exp()).unwrap();
        let b = mc_integrate(5, 1000, 42, |x| x[0].exp()).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn axial_rule_matches_product_rule() {
        for n in [3usize, 4] {
            let full = SphereQuadrature::build(n, 12).unwrap();
            let axial = AxialPairQuadrature::build(n, 24).unwrap();
            let f = |x: &[f64], y: &[f64], out: &mut [f64]| {
                let s = dot(x, y);
                out[0] = (0.3 * x[0] + 0.5 * y[0] * y[0] + s).exp() * (1.0 + s * x[0]);
            };
            let a = full.integrate_pairs(1, f).unwrap()[0];
            let b = axial.integrate_pairs(1, f).unwrap()[0];
            assert!((a - b).abs() < 1e-12, "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn oriented_rule_is_consistent() {
        let axial = AxialPairQuadrature::build(4, 16).unwrap();
        let mut axis = vec![0.2, -0.4, 0.5, 0.3];
        let norm = dot(&axis, &axis).sqrt();
        axis.iter_mut().for_each(|v| *v /= norm);
        let turned = axial.oriented(&axis).unwrap();
        let ax = axis.clone();
        let f = move |e: Vec<f64>| {
            move |x: &[f64], y: &[f64], out: &mut [f64]| {
                out[0] = (dot(&e, x) * 0.7 - dot(&e, y) * 0.2 + dot(x, y)).exp();
            }
        };
        let a = axial.integrate_pairs(1, f(vec![1.0, 0.0, 0.0, 0.0])).unwrap()[0];
        let b = turned.integrate_pairs(1, f(ax)).unwrap()[0];
        assert!((a - b).abs() < 1e-13);
        assert!(axial.oriented(&[1.0, 1.0, 0.0, 0.0]).is_err());
    }
}
