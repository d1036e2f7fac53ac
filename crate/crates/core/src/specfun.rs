//! Scalar special functions: rising factorials, the hypergeometric series
//! ₀F₁ and ₂F₁, and Taylor data of the squared ₂F₁ profile that drives the
//! uniqueness recurrence.

use crate::error::{Error, Result};

/// Truncation policy shared by the hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    max_terms: usize,
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Domain(format!(
                "series rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::Domain("series max_terms must be positive".into()));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 10_000,
        }
    }
}

/// Taylor coefficients of a generating expression; `coeffs[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoeffs {
    pub coeffs: Vec<f64>,
    pub origin: String,
}

impl TaylorCoeffs {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluates the truncated polynomial at `x` (Horner).
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Rising factorial `x (x+1) ... (x+m-1)`, by direct product.
pub fn pochhammer(x: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (x + j as f64))
}

pub fn factorial(m: usize) -> f64 {
    pochhammer(1.0, m)
}

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `1/Γ(x)`, which vanishes at the poles of Γ.
fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sums `1 + Σ_k t_k` where `t_{k+1} = t_k * ratio(k)`.
///
/// Stops once a term is both below `rel_tol` times the partial sum and smaller
/// than its predecessor, or when a term is exactly zero (terminating series).
fn sum_ratio_series(ctl: &SeriesControl, mut ratio: impl FnMut(usize) -> f64) -> Result<f64> {
    let mut acc = CompensatedSum::default();
    let mut term = 1.0_f64;
    acc.add(term);
    for k in 0..ctl.max_terms {
        let next = term * ratio(k);
        if next == 0.0 {
            return Ok(acc.value());
        }
        acc.add(next);
        if next.abs() <= ctl.rel_tol * acc.value().abs() && next.abs() < term.abs() {
            return Ok(acc.value());
        }
        if !next.is_finite() {
            return Err(Error::Truncation {
                terms: k + 2,
                last_term: next.abs(),
            });
        }
        term = next;
    }
    Err(Error::Truncation {
        terms: ctl.max_terms + 1,
        last_term: term.abs(),
    })
}

/// Below this magnitude of a negative argument the ₀F₁ series is summed
/// directly; cancellation grows like `exp(2 sqrt|x|)`.
const HYP0F1_SERIES_NEG_LIMIT: f64 = 4.0;

/// ₀F₁(−; c; x) = Σ x^k / ((c)_k k!).
///
/// Large negative arguments with `c > 0` are evaluated through the Bessel
/// representation `Γ(c) (w/2)^{1-c} J_{c-1}(w)`, `w = 2 sqrt(-x)`, using
/// normalized backward recurrence; the alternating series is useless there.
pub fn hyp0f1(c: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!(
            "0F1 lower parameter must not be a nonpositive integer, got {c}"
        )));
    }
    if x < -HYP0F1_SERIES_NEG_LIMIT && c > 0.0 {
        return Ok(hyp0f1_negative_bessel(c, -x));
    }
    sum_ratio_series(ctl, |k| {
        let k = k as f64;
        x / ((c + k) * (k + 1.0))
    })
}

/// ₀F₁(−; c; −y) for y > 0, c > 0 via Miller's algorithm.
///
/// With ν = c − 1 and w = 2 sqrt(y), the unnormalized backward sequence
/// f_μ ∝ J_{ν+μ}(w) is normalized by the Neumann sum
/// Σ_k coef_k J_{ν+2k}(w) = (w/2)^ν / Γ(ν+1), and
/// ₀F₁ = Γ(ν+1) (w/2)^{-ν} J_ν(w) = f_0 / Σ_k coef_k f_{2k}.
fn hyp0f1_negative_bessel(c: f64, y: f64) -> f64 {
    let nu = c - 1.0;
    let w = 2.0 * y.sqrt();
    let mut top = (w + 40.0 + 4.0 * w.sqrt()).ceil() as usize;
    if top % 2 == 1 {
        top += 1;
    }
    // coef_0 = 1, coef_k = (ν+2k) (ν+1)_{k-1} / k!
    let half = top / 2;
    let mut coef = Vec::with_capacity(half + 1);
    coef.push(1.0);
    let mut r = 1.0;
    for k in 1..=half {
        if k > 1 {
            let kf = k as f64;
            r *= (nu + kf - 1.0) / kf;
        }
        coef.push((nu + 2.0 * k as f64) * r);
    }

    let mut above = 0.0_f64;
    let mut current = 1e-280_f64;
    let mut norm = coef[half] * current;
    for mu in (1..=top).rev() {
        let below = 2.0 * (nu + mu as f64) / w * current - above;
        above = current;
        current = below;
        let idx = mu - 1;
        if idx % 2 == 0 {
            norm += coef[idx / 2] * current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
        }
    }
    current / norm
}

/// Gauss hypergeometric series ₂F₁(a, b; c; x).
///
/// Defined for |x| < 1, at x = 1 when c − a − b > 0 (Gauss summation), or for
/// any x when the series terminates. On 0.5 < x < 1 the Euler transform
/// `(1−x)^{c−a−b} ₂F₁(c−a, c−b; c; x)` is used when it turns the series into
/// a terminating one.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!(
            "2F1 lower parameter must not be a nonpositive integer, got {c}"
        )));
    }
    let terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    let excess = c - a - b;
    if !terminating {
        if x.abs() > 1.0 || (x == -1.0 && excess <= -1.0) {
            return Err(Error::Domain(format!(
                "2F1 argument {x} outside the disc of convergence"
            )));
        }
        if x == 1.0 {
            if excess <= 0.0 {
                return Err(Error::Domain(format!(
                    "2F1 diverges at x = 1 when c - a - b = {excess} <= 0"
                )));
            }
            return Ok(gamma(c) * gamma(excess) * recip_gamma(c - a) * recip_gamma(c - b));
        }
        if x > 0.5 && excess > 0.0 && (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) {
            let inner = hyp2f1_series(c - a, c - b, c, x, ctl)?;
            return Ok((1.0 - x).powf(excess) * inner);
        }
    }
    hyp2f1_series(a, b, c, x, ctl)
}

fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    sum_ratio_series(ctl, |k| {
        let k = k as f64;
        (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
    })
}

/// Coefficients `(a)_k (b)_k / ((c)_k k!)` for k = 0..=k_max.
pub fn hyp2f1_coeffs(a: f64, b: f64, c: f64, k_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max + 1);
    let mut t = 1.0;
    out.push(t);
    for k in 0..k_max {
        let kf = k as f64;
        t *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        out.push(t);
    }
    out
}

/// `(n−2)_m m! / ((n/2)_m (n/2−1)_m)`, the normalization shared by the
/// squared radial profile and the diagonal of the zonal harmonic.
pub fn phi_prefactor(n: usize, m: usize) -> f64 {
    let nf = n as f64;
    (0..m).fold(1.0, |acc, j| {
        let j = j as f64;
        acc * (nf - 2.0 + j) * (1.0 + j) / ((nf / 2.0 + j) * (nf / 2.0 - 1.0 + j))
    })
}

fn check_real_dim(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension must be at least 3, got {n}")));
    }
    Ok(())
}

/// Taylor coefficients a_{m,0..=k_max} of Φ_m(x)/x^m, i.e. of
/// `phi_prefactor(n, m) · ₂F₁(n/2−1, m+n−2; m+n/2; x)²`.
///
/// The square is an exact Cauchy product of the base coefficients.
pub fn phi_m_taylor(n: usize, m: usize, k_max: usize) -> Result<TaylorCoeffs> {
    check_real_dim(n)?;
    let nf = n as f64;
    let mf = m as f64;
    let base = hyp2f1_coeffs(nf / 2.0 - 1.0, mf + nf - 2.0, mf + nf / 2.0, k_max);
    let pref = phi_prefactor(n, m);
    let coeffs = (0..=k_max)
        .map(|k| {
            let mut acc = CompensatedSum::default();
            for i in 0..=k {
                acc.add(base[i] * base[k - i]);
            }
            pref * acc.value()
        })
        .collect();
    Ok(TaylorCoeffs {
        coeffs,
        origin: format!("Phi_m(x)/x^m, n={n}, m={m}"),
    })
}
