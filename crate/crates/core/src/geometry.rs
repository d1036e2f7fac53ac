//! Moebius self-maps of the real unit ball, the boundary scalar-product
//! identity they satisfy, and the boundary kernel of the holomorphic
//! automorphisms of the complex ball.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Above this radius the map's denominators approach zero and residuals degrade.
pub const NEAR_BOUNDARY_RADIUS: f64 = 0.95;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

/// The involutive automorphism φ_a of the unit ball of R^n interchanging 0 and a:
///
/// ```text
/// φ_a(x) = (a |x − a|² + (1 − |a|²)(a − x)) / (1 − 2⟨x, a⟩ + |x|² |a|²)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct MoebiusMap {
    a: Vec<f64>,
    a_sq: f64,
}

impl MoebiusMap {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.len() < 3 {
            return Err(Error::Domain(format!("dimension must be at least 3, got {}", a.len())));
        }
        let a_sq = norm_sq(&a);
        if !(a_sq < 1.0) {
            return Err(Error::Domain(format!(
                "Moebius point must lie in the open ball, |a| = {}",
                a_sq.sqrt()
            )));
        }
        Ok(Self { a, a_sq })
    }

    pub fn point(&self) -> &[f64] {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn radius(&self) -> f64 {
        self.a_sq.sqrt()
    }

    pub fn is_near_boundary(&self) -> bool {
        self.radius() > NEAR_BOUNDARY_RADIUS
    }

    /// Scalars (α, β) with φ_a(x) = α a + β x.
    pub fn coefficients(&self, x: &[f64]) -> (f64, f64) {
        let xa = dot(x, &self.a);
        let x_sq = norm_sq(x);
        let diff_sq = x_sq - 2.0 * xa + self.a_sq;
        let denom = 1.0 - 2.0 * xa + x_sq * self.a_sq;
        let c = 1.0 - self.a_sq;
        ((diff_sq + c) / denom, -c / denom)
    }

    /// ⟨φ_a(x), φ_a(y)⟩ through the map itself, without allocating.
    pub fn image_scalar_product(&self, x: &[f64], y: &[f64]) -> f64 {
        let (ax, bx) = self.coefficients(x);
        let (ay, by) = self.coefficients(y);
        ax * ay * self.a_sq + ax * by * dot(&self.a, y) + bx * ay * dot(x, &self.a) + bx * by * dot(x, y)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.a.len()];
        self.apply_into(x, &mut out);
        out
    }

    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        let xa = dot(x, &self.a);
        let x_sq = norm_sq(x);
        let diff_sq = x_sq - 2.0 * xa + self.a_sq;
        let denom = 1.0 - 2.0 * xa + x_sq * self.a_sq;
        let c = 1.0 - self.a_sq;
        for ((o, &ai), &xi) in out.iter_mut().zip(&self.a).zip(x) {
            *o = (ai * diff_sq + c * (ai - xi)) / denom;
        }
    }

    /// Closed form of ⟨φ_a(x), φ_a(y)⟩ for unit x, y.
    pub fn boundary_scalar_product(&self, x: &[f64], y: &[f64]) -> f64 {
        let c = 1.0 - self.a_sq;
        let dx = 1.0 - 2.0 * dot(&self.a, x) + self.a_sq;
        let dy = 1.0 - 2.0 * dot(&self.a, y) + self.a_sq;
        1.0 - (1.0 - dot(x, y)) * c * c / (dx * dy)
    }

    /// |⟨φ_a(x), φ_a(y)⟩ − closed form| for unit vectors x, y.
    pub fn scalar_product_residual(&self, x: &[f64], y: &[f64]) -> f64 {
        let direct = dot(&self.apply(x), &self.apply(y));
        (direct - self.boundary_scalar_product(x, y)).abs()
    }
}

/// Hermitian product Σ z_j conj(w_j).
pub fn hermitian(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

/// ⟨φ̄_a(ζ), φ̄_a(η)⟩ for unit ζ, η of C^n, where φ̄_a is the holomorphic
/// automorphism of the complex ball interchanging 0 and a:
///
/// ```text
/// 1 − (1 − |a|²)(1 − ⟨ζ, η⟩) / ((1 − ⟨ζ, a⟩)(1 − ⟨a, η⟩))
/// ```
pub fn holo_kernel(a: &[Complex64], zeta: &[Complex64], eta: &[Complex64]) -> Complex64 {
    let a_sq = hermitian(a, a).re;
    let num = (1.0 - a_sq) * (Complex64::new(1.0, 0.0) - hermitian(zeta, eta));
    let den = (Complex64::new(1.0, 0.0) - hermitian(zeta, a)) * (Complex64::new(1.0, 0.0) - hermitian(a, eta));
    Complex64::new(1.0, 0.0) - num / den
}

/// Reads a point of R^{2n} as a point of C^n, `z_j = x_{2j} + i x_{2j+1}`.
pub fn complexify(x: &[f64]) -> Vec<Complex64> {
    x.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect()
}

pub fn random_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    crate::sphere::random_unit_into(rng, &mut x);
    x
}

/// Uniform point of the closed ball of the given radius.
pub fn random_ball_point<R: Rng>(rng: &mut R, n: usize, radius: f64) -> Vec<f64> {
    let dir = random_unit(rng, n);
    let r = radius * rng.random::<f64>().powf(1.0 / n as f64);
    dir.into_iter().map(|v| v * r).collect()
}

/// Row-major n×n orthogonal matrix from Gram–Schmidt on a Gaussian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    n: usize,
    m: Vec<f64>,
}

impl Rotation {
    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
        while rows.len() < n {
            let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
            // two passes for numerical orthogonality
            for _ in 0..2 {
                for r in &rows {
                    let p = dot(&v, r);
                    v.iter_mut().zip(r).for_each(|(a, b)| *a -= p * b);
                }
            }
            let nv = norm_sq(&v).sqrt();
            if nv > 1e-8 {
                v.iter_mut().for_each(|a| *a /= nv);
                rows.push(v);
            }
        }
        Self { n, m: rows.concat() }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.m.chunks_exact(self.n).map(|row| dot(row, x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interchanges_origin_and_point() {
        let map = MoebiusMap::new(vec![0.3, 0.1, -0.2]).unwrap();
        let at0 = map.apply(&[0.0, 0.0, 0.0]);
        let ata = map.apply(map.point());
        for i in 0..3 {
            assert!((at0[i] - map.point()[i]).abs() < 1e-13);
            assert!(ata[i].abs() < 1e-13);
        }
    }

    #[test]
    fn coefficient_form_matches_apply() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let map = MoebiusMap::new(random_ball_point(&mut rng, 4, 0.9)).unwrap();
        let x = random_ball_point(&mut rng, 4, 1.0);
        let y = random_unit(&mut rng, 4);
        let (al, be) = map.coefficients(&x);
        let img = map.apply(&x);
        for i in 0..4 {
            assert!((img[i] - (al * map.point()[i] + be * x[i])).abs() < 1e-14);
        }
        let direct = dot(&map.apply(&x), &map.apply(&y));
        assert!((map.image_scalar_product(&x, &y) - direct).abs() < 1e-13);
    }

    #[test]
    fn zero_point_is_antipodal_map() {
        let map = MoebiusMap::new(vec![0.0; 4]).unwrap();
        let x = [0.1, -0.5, 0.2, 0.3];
        let y = map.apply(&x);
        for i in 0..4 {
            assert_eq!(y[i], -x[i]);
        }
    }

    #[test]
    fn rejects_outside_and_low_dimension() {
        assert!(MoebiusMap::new(vec![0.6, 0.8, 0.0]).is_err());
        assert!(MoebiusMap::new(vec![0.1, 0.1]).is_err());
        assert!(MoebiusMap::new(vec![0.96, 0.0, 0.0]).unwrap().is_near_boundary());
    }

    #[test]
    fn scalar_product_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_unit(&mut rng, 3);
        let y = random_unit(&mut rng, 3);
        let zero = MoebiusMap::new(vec![0.0; 3]).unwrap();
        assert!(zero.scalar_product_residual(&x, &y) < 1e-15);
        let map = MoebiusMap::new(vec![0.3, 0.1, -0.2]).unwrap();
        assert!((map.boundary_scalar_product(&x, &x) - 1.0).abs() < 1e-15);
        assert!(map.scalar_product_residual(&x, &x) < 1e-14);
        assert!(map.scalar_product_residual(&x, &y) < 1e-12);
    }

    #[test]
    fn holo_kernel_examples() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let v = holo_kernel(&[c(0.5)], &[c(1.0)], &[c(-1.0)]);
        assert!((v - c(-1.0)).norm() < 1e-15);
        // classical disc automorphism (ζ − a)/(1 − āζ)
        let a = Complex64::new(0.3, -0.2);
        let z = Complex64::from_polar(1.0, 0.7);
        let w = Complex64::from_polar(1.0, -2.1);
        let disc = |u: Complex64| (u - a) / (Complex64::new(1.0, 0.0) - a.conj() * u);
        let direct = disc(z) * disc(w).conj();
        assert!((holo_kernel(&[a], &[z], &[w]) - direct).norm() < 1e-14);
        assert!((holo_kernel(&[a], &[z], &[z]) - c(1.0)).norm() < 1e-15);
        let zero = [c(0.0), c(0.0)];
        let zz = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let ww = [Complex64::new(0.0, 1.0), c(0.0)];
        assert!((holo_kernel(&zero, &zz, &ww) - hermitian(&zz, &ww)).norm() < 1e-15);
    }

    #[test]
    fn rotation_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = Rotation::random(&mut rng, 5);
        let x = random_unit(&mut rng, 5);
        let y = random_unit(&mut rng, 5);
        assert!((dot(&u.apply(&x), &u.apply(&y)) - dot(&x, &y)).abs() < 1e-14);
    }
}
