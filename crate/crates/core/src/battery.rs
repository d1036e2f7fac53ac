//! The verification battery: every identity of the library checked against
//! an independent evaluation, per dimension, in a fixed order.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{dot, random_ball_point, random_unit, MoebiusMap};
use crate::hharmonic::{hyperbolic_laplacian_fd, hyperbolic_laplacian_richardson, peter_weyl_project, SolidHarmonic};
use crate::invariant::{
    double_exp_closed, double_exp_quadrature, exp_integral_closed, exp_integral_quadrature, f_value,
    holo_c_recurrence_check, holo_f_closed, holo_pair_closed, holo_pair_quadrature, invariant_reference,
    laguerre_transform_closed, laguerre_transform_quadrature, moebius_pair_closed, moebius_pair_quadrature,
    poisson_pair_closed, poisson_pair_quadrature, recurrence_solve_d, reference_difference, semi_norm_sq,
    series_identity_residual, CoefficientSequence, FPath, LAGUERRE_POINTS,
};
use crate::report::{CheckResult, VerificationReport};
use crate::sphere::{default_order, monomial_moment, AxialPairQuadrature, SphereQuadrature, DEFAULT_NODE_BUDGET};
use crate::zonal::{zonal_generating_oracle, ZonalEvaluator};

/// Environment variable capping the worker pool size.
pub const THREADS_ENV: &str = "HHINV_THREADS";

/// Per-factor order of the axial pair rule.
pub const PAIR_ORDER: usize = 48;
/// Axial pair order for the raw-quadrature F path, which reaches high degrees.
pub const F_ORACLE_ORDER: usize = 64;
/// Truncation degree of F on the closed-form path.
pub const F_TERMS: usize = 80;
/// Truncation degree of F on the raw-quadrature path.
pub const F_ORACLE_TERMS: usize = 60;
/// Truncation degree of the holomorphic F.
pub const HOLO_TERMS: usize = 400;
/// Order of the S³ rule for the holomorphic pair integrals.
pub const HOLO_ORDER: usize = 12;
/// Largest |a| at which the S³ rule resolves the holomorphic pair integrals.
pub const HOLO_ORACLE_RADIUS: f64 = 0.5;
/// Highest degree of the holomorphic pair-integral check.
pub const HOLO_DEGREE: usize = 3;
/// Degrees at which semi-norm invariance is measured.
pub const SEMINORM_DEGREES: (usize, usize) = (8, 12);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Family {
    pub name: &'static str,
    pub default_tol: f64,
    pub summary: &'static str,
}

const fn fam(name: &'static str, default_tol: f64, summary: &'static str) -> Family {
    Family {
        name,
        default_tol,
        summary,
    }
}

/// Check families in report order.
pub const FAMILIES: &[Family] = &[
    fam(
        "quadrature-moments",
        1e-12,
        "sphere rule vs closed-form monomial moments",
    ),
    fam(
        "moebius-scalar-product",
        1e-12,
        "<phi_a(x), phi_a(y)> vs its closed form on the sphere",
    ),
    fam(
        "zonal-recurrence",
        1e-10,
        "three-term relation applied to generating-function values",
    ),
    fam(
        "zonal-generating",
        1e-11,
        "recurrence evaluator vs generating-function coefficients",
    ),
    fam("zonal-reproducing", 1e-9, "reproducing property of Z_m"),
    fam("zonal-orthogonality", 1e-9, "orthogonality of Z_m and Z_k for m != k"),
    fam("exp-integral", 1e-8, "integral of Z_m(x, y) e^<u,x> vs 0F1 closed form"),
    fam(
        "double-exp-integral",
        1e-7,
        "double integral of Z_m e^<u,x> e^<v,y> vs 0F1 closed form",
    ),
    fam(
        "laguerre-transform",
        1e-8,
        "Laguerre transform of 0F1 vs 2F1 closed form",
    ),
    fam(
        "poisson-pair-integral",
        1e-7,
        "double integral of Z_m over Poisson-type denominators",
    ),
    fam(
        "moebius-pair-integral",
        1e-7,
        "double integral of Z_m <phi_a(x), phi_a(y)> vs closed form",
    ),
    fam("f-constancy", 1e-6, "F(a) = c_1 for the reference coefficients"),
    fam("d-recurrence", 1e-10, "recurrence for d_m vs closed form, relative"),
    fam("d-linearity", 1e-13, "recurrence output is linear in d_1"),
    fam(
        "series-identity",
        1e-10,
        "(1-z)^(4-2n) vs weighted sum of Phi_m, coefficientwise",
    ),
    fam(
        "peter-weyl",
        1e-8,
        "projection recovers the components of solid harmonics",
    ),
    fam(
        "seminorm-invariance",
        1e-3,
        "relative change of the semi-norm under f -> f o phi_a",
    ),
    fam(
        "seminorm-truncation",
        1.0,
        "ratio of invariance deviations at the two truncation degrees",
    ),
    fam(
        "hlaplacian",
        1e-4,
        "finite-difference hyperbolic Laplacian of solid harmonics",
    ),
    fam("hlaplacian-order", 0.25, "|observed finite-difference order - 2|"),
    fam(
        "holo-recurrence",
        1e-12,
        "c_0 - c_1 = (m!/(n)_m)(c_m - c_{m+1}) for the holomorphic sequence",
    ),
    fam("holo-constancy", 1e-10, "holomorphic F(a) = c_1"),
    fam(
        "holo-pair-integral",
        1e-6,
        "complex-sphere quadrature vs closed form of the pair integral",
    ),
];

pub fn family(name: &str) -> Option<&'static Family> {
    FAMILIES.iter().find(|f| f.name == name)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryConfig {
    pub dims: Vec<usize>,
    pub m_max: usize,
    /// Product-rule order for every dimension; `None` uses [`default_order`].
    pub quad_order: Option<usize>,
    pub proj_radius: f64,
    /// Per-family tolerance overrides.
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
    /// Families to run; empty means all.
    pub only: Vec<String>,
    /// Evaluate F and the holomorphic F by raw quadrature instead of closed forms.
    pub oracle: bool,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            dims: vec![3, 4, 5],
            m_max: 6,
            quad_order: None,
            proj_radius: 0.6,
            tolerances: BTreeMap::new(),
            seed: 42,
            only: Vec::new(),
            oracle: false,
        }
    }
}

/// Order of the product rule used for double integrals over S^{n−1} × S^{n−1}.
pub fn double_order(n: usize) -> Option<usize> {
    match n {
        3 => Some(24),
        4 => Some(12),
        5 => Some(8),
        _ => None,
    }
}

impl BatteryConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.dims.is_empty() {
            return bad("at least one dimension is required".into());
        }
        if let Some(n) = self.dims.iter().find(|&&n| n < 3) {
            return bad(format!("dimension {n} is below 3"));
        }
        if self.m_max < 1 {
            return bad("m_max must be at least 1".into());
        }
        if let Some(q) = self.quad_order {
            if q < 4 {
                return bad(format!("quadrature order {q} is below 4"));
            }
            for &n in &self.dims {
                let required = (0..n - 2)
                    .try_fold(2 * q, |acc: usize, _| acc.checked_mul(q))
                    .unwrap_or(usize::MAX);
                if required > DEFAULT_NODE_BUDGET {
                    return bad(format!(
                        "order {q} needs {required} nodes in dimension {n}, budget is {DEFAULT_NODE_BUDGET}"
                    ));
                }
            }
        }
        if !(self.proj_radius > 0.0 && self.proj_radius < 1.0) {
            return bad(format!("projection radius {} is not in (0, 1)", self.proj_radius));
        }
        for (name, tol) in &self.tolerances {
            if family(name).is_none() {
                return bad(format!("unknown check family {name:?}"));
            }
            if !(tol.is_finite() && *tol > 0.0) {
                return bad(format!("tolerance for {name} must be positive, got {tol}"));
            }
        }
        if let Some(name) = self.only.iter().find(|n| family(n).is_none()) {
            return bad(format!("unknown check family {name:?}"));
        }
        Ok(())
    }

    pub fn tolerance(&self, family_name: &str) -> f64 {
        self.tolerances
            .get(family_name)
            .copied()
            .or_else(|| family(family_name).map(|f| f.default_tol))
            .unwrap_or(0.0)
    }

    pub fn single_order(&self, n: usize) -> Option<usize> {
        self.quad_order.or_else(|| default_order(n))
    }

    fn selected(&self, family_name: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|o| o == family_name)
    }

    fn echo(&self, omitted: &[Value]) -> Value {
        let orders: BTreeMap<String, Option<usize>> = self
            .dims
            .iter()
            .map(|&n| (n.to_string(), self.single_order(n)))
            .collect();
        let tolerances: BTreeMap<&str, f64> = FAMILIES.iter().map(|f| (f.name, self.tolerance(f.name))).collect();
        json!({
            "dims": self.dims,
            "m_max": self.m_max,
            "quad_order": orders,
            "proj_radius": self.proj_radius,
            "seed": self.seed,
            "oracle": self.oracle,
            "only": self.only,
            "tolerances": tolerances,
            "omitted": omitted,
        })
    }
}

type Job = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync>;

/// Runs every selected check and assembles the report.
///
/// Only configuration problems are returned as errors; a check that cannot
/// be evaluated becomes a failed entry carrying the error message.
pub fn run_battery(cfg: &BatteryConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(
            v.parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?,
        ),
        Err(_) => None,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;

    let (jobs, omitted) = plan(cfg);
    let results: Vec<Vec<CheckResult>> = pool.install(|| jobs.par_iter().map(|job| job()).collect());
    Ok(VerificationReport::new(
        cfg.echo(&omitted),
        results.into_iter().flatten().collect(),
    ))
}

fn plan(cfg: &BatteryConfig) -> (Vec<Job>, Vec<Value>) {
    let mut jobs: Vec<Job> = Vec::new();
    let mut omitted = Vec::new();
    for (fi, f) in FAMILIES.iter().enumerate() {
        if !cfg.selected(f.name) {
            continue;
        }
        let tol = cfg.tolerance(f.name);
        let name = f.name;
        let mut push_dims = |needs: Needs| {
            for &n in &cfg.dims {
                let ctx = Ctx {
                    n,
                    tol,
                    seed: mix_seed(cfg.seed, fi, n),
                    m_max: cfg.m_max,
                    radius: cfg.proj_radius,
                    oracle: cfg.oracle,
                    single: cfg.single_order(n),
                    double: double_order(n),
                };
                let missing = match needs {
                    Needs::Nothing => None,
                    Needs::Single if ctx.single.is_none() => Some("no product rule within the node budget"),
                    Needs::Double if ctx.double.is_none() => Some("no double-integral rule for this dimension"),
                    Needs::Dim3 if n != 3 => Some("measured in dimension 3 only"),
                    Needs::Dim3 if ctx.single.is_none() => Some("no product rule within the node budget"),
                    _ => None,
                };
                if let Some(reason) = missing {
                    omitted.push(json!({"family": name, "n": n, "reason": reason}));
                    continue;
                }
                let run = runner(name);
                jobs.push(Box::new(move || run(&ctx)));
            }
        };
        match name {
            "quadrature-moments" | "zonal-reproducing" | "zonal-orthogonality" | "exp-integral" | "peter-weyl" => {
                push_dims(Needs::Single)
            }
            "double-exp-integral" => push_dims(Needs::Double),
            "seminorm-invariance" | "seminorm-truncation" => push_dims(Needs::Dim3),
            "laguerre-transform" | "holo-recurrence" | "holo-constancy" | "holo-pair-integral" => {
                let ctx = Ctx {
                    n: 0,
                    tol,
                    seed: mix_seed(cfg.seed, fi, 0),
                    m_max: cfg.m_max,
                    radius: cfg.proj_radius,
                    oracle: cfg.oracle,
                    single: None,
                    double: None,
                };
                let run = runner(name);
                jobs.push(Box::new(move || run(&ctx)));
            }
            _ => push_dims(Needs::Nothing),
        }
    }
    (jobs, omitted)
}

#[derive(Clone, Copy)]
enum Needs {
    Nothing,
    Single,
    Double,
    Dim3,
}

#[derive(Debug, Clone, Copy)]
struct Ctx {
    n: usize,
    tol: f64,
    seed: u64,
    m_max: usize,
    radius: f64,
    oracle: bool,
    single: Option<usize>,
    double: Option<usize>,
}

impl Ctx {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn single_rule(&self) -> Result<SphereQuadrature> {
        SphereQuadrature::build(self.n, self.single.expect("planned with a single rule"))
    }
}

fn mix_seed(seed: u64, family_index: usize, n: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((family_index as u64) << 32) ^ n as u64
}

fn runner(name: &str) -> fn(&Ctx) -> Vec<CheckResult> {
    match name {
        "quadrature-moments" => quadrature_moments,
        "moebius-scalar-product" => moebius_scalar_product,
        "zonal-recurrence" => zonal_recurrence,
        "zonal-generating" => zonal_generating,
        "zonal-reproducing" => zonal_reproducing,
        "zonal-orthogonality" => zonal_orthogonality,
        "exp-integral" => exp_integral,
        "double-exp-integral" => double_exp_integral,
        "laguerre-transform" => laguerre_transform,
        "poisson-pair-integral" => poisson_pair_integral,
        "moebius-pair-integral" => moebius_pair_integral,
        "f-constancy" => f_constancy,
        "d-recurrence" => d_recurrence,
        "d-linearity" => d_linearity,
        "series-identity" => series_identity,
        "peter-weyl" => peter_weyl,
        "seminorm-invariance" => seminorm_invariance,
        "seminorm-truncation" => seminorm_truncation,
        "hlaplacian" => hlaplacian,
        "hlaplacian-order" => hlaplacian_order,
        "holo-recurrence" => holo_recurrence,
        "holo-constancy" => holo_constancy,
        "holo-pair-integral" => holo_pair_integral,
        other => unreachable!("family {other} has no runner"),
    }
}

fn params(v: Value) -> BTreeMap<String, Value> {
    match v {
        Value::Object(m) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

fn label(family: &str, p: &BTreeMap<String, Value>) -> String {
    let inner: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{family}[{}]", inner.join(","))
}

fn check(family: &str, p: Value, tol: f64, residual: Result<f64>) -> CheckResult {
    let p = params(p);
    let name = label(family, &p);
    match residual {
        Ok(r) => CheckResult::measured(family, name, p, r, tol),
        Err(e) => CheckResult::errored(family, name, p, tol, &e),
    }
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter()
        .fold(0.0, |acc, v| if v.is_nan() { f64::NAN } else { acc.max(v.abs()) })
}

fn scaled(dir: &[f64], r: f64) -> Vec<f64> {
    dir.iter().map(|v| v * r).collect()
}

/// Exponent tuples with all entries even and total degree ≤ `max_degree`.
fn even_exponents(n: usize, max_degree: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for h in 0..=left {
            cur.push(2 * h);
            rec(n, left - h, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_degree / 2, &mut Vec::new(), &mut out);
    out
}

fn quadrature_moments(ctx: &Ctx) -> Vec<CheckResult> {
    let fam = "quadrature-moments";
    let res = (|| {
        let q = ctx.single_rule()?;
        let degree = q.exact_degree().min(16);
        let exps = even_exponents(ctx.n, degree);
        let got = q.integrate_many(exps.len(), |x, out| {
            for (o, e) in out.iter_mut().zip(&exps) {
                *o = x.iter().zip(e).map(|(xi, &k)| xi.powi(k as i32)).product();
            }
        })?;
        Ok((
            degree,
            max_abs(got.iter().zip(&exps).map(|(g, e)| g - monomial_moment(e))),
        ))
    })();
    let degree = res.as_ref().map(|r| r.0).unwrap_or(0);
    vec![check(
        fam,
        json!({"n": ctx.n, "order": ctx.single, "max_degree": degree}),
        ctx.tol,
        res.map(|r| r.1),
    )]
}

fn moebius_scalar_product(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let samples = 1000;
    let res = (|| {
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let map = MoebiusMap::new(random_ball_point(&mut rng, ctx.n, 0.9))?;
            let x = random_unit(&mut rng, ctx.n);
            let y = random_unit(&mut rng, ctx.n);
            worst = worst.max(map.scalar_product_residual(&x, &y));
        }
        Ok(worst)
    })();
    vec![check(
        "moebius-scalar-product",
        json!({"n": ctx.n, "samples": samples, "max_radius": 0.9}),
        ctx.tol,
        res,
    )]
}

fn zonal_top(ctx: &Ctx) -> usize {
    ctx.m_max.max(10)
}

fn zonal_recurrence(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let top = zonal_top(ctx);
    let samples = 1000;
    let res = (|| {
        let ev = ZonalEvaluator::new(ctx.n, top)?;
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x = random_unit(&mut rng, ctx.n);
            let y = random_unit(&mut rng, ctx.n);
            let s = dot(&x, &y);
            let z: Vec<f64> = (0..=top).map(|m| zonal_generating_oracle(ctx.n, m, &x, &y)).collect();
            for m in 0..top {
                let lower = if m == 0 { 0.0 } else { ev.lower_coeff(m) * z[m - 1] };
                worst = worst.max((2.0 * s * z[m] - ev.raise_coeff(m) * z[m + 1] - lower).abs());
            }
        }
        Ok(worst)
    })();
    vec![check(
        "zonal-recurrence",
        json!({"n": ctx.n, "m_max": top, "samples": samples}),
        ctx.tol,
        res,
    )]
}

fn zonal_generating(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let top = zonal_top(ctx);
    let samples = 200;
    let res = (|| {
        let ev = ZonalEvaluator::new(ctx.n, top)?;
        let mut worst: f64 = 0.0;
        let mut z = vec![0.0; top + 1];
        for _ in 0..samples {
            let x = random_unit(&mut rng, ctx.n);
            let y = random_unit(&mut rng, ctx.n);
            ev.unit_all(dot(&x, &y), &mut z);
            for (m, v) in z.iter().enumerate() {
                worst = worst.max((v - zonal_generating_oracle(ctx.n, m, &x, &y)).abs());
            }
        }
        Ok(worst)
    })();
    vec![check(
        "zonal-generating",
        json!({"n": ctx.n, "m_max": top, "samples": samples}),
        ctx.tol,
        res,
    )]
}

fn zonal_reproducing(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let m_max = ctx.m_max;
    let res = (|| {
        let q = ctx.single_rule()?;
        let ev = ZonalEvaluator::new(ctx.n, m_max)?;
        let mut worst: f64 = 0.0;
        for _ in 0..3 {
            let p = random_unit(&mut rng, ctx.n);
            let x = random_unit(&mut rng, ctx.n);
            let got = q.integrate_many(m_max + 1, |y, out| {
                let mut zx = vec![0.0; m_max + 1];
                ev.unit_all(dot(y, &p), out);
                ev.unit_all(dot(&x, y), &mut zx);
                out.iter_mut().zip(&zx).for_each(|(o, v)| *o *= v);
            })?;
            let mut want = vec![0.0; m_max + 1];
            ev.unit_all(dot(&x, &p), &mut want);
            worst = worst.max(max_abs(got.iter().zip(&want).map(|(g, w)| g - w)));
        }
        Ok(worst)
    })();
    vec![check(
        "zonal-reproducing",
        json!({"n": ctx.n, "m_max": m_max, "order": ctx.single}),
        ctx.tol,
        res,
    )]
}

fn zonal_orthogonality(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let m_max = ctx.m_max;
    let k = m_max + 1;
    let res = (|| {
        let q = ctx.single_rule()?;
        let ev = ZonalEvaluator::new(ctx.n, m_max)?;
        let x = random_unit(&mut rng, ctx.n);
        let x2 = random_unit(&mut rng, ctx.n);
        let got = q.integrate_many(k * k, |y, out| {
            let mut a = vec![0.0; k];
            let mut b = vec![0.0; k];
            ev.unit_all(dot(&x, y), &mut a);
            ev.unit_all(dot(&x2, y), &mut b);
            for i in 0..k {
                for j in 0..k {
                    out[i * k + j] = a[i] * b[j];
                }
            }
        })?;
        Ok(max_abs(
            (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .map(|(i, j)| got[i * k + j]),
        ))
    })();
    vec![check(
        "zonal-orthogonality",
        json!({"n": ctx.n, "m_max": m_max, "order": ctx.single}),
        ctx.tol,
        res,
    )]
}

const EXP_NORMS: [f64; 3] = [2.0, 1.3, 0.7];

fn exp_integral(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let m_max = ctx.m_max;
    let q = ctx.single_rule();
    EXP_NORMS
        .iter()
        .map(|&r| {
            let u = scaled(&random_unit(&mut rng, ctx.n), r);
            let y = random_unit(&mut rng, ctx.n);
            let res = (|| {
                let q = q.as_ref().map_err(Clone::clone)?;
                let ev = ZonalEvaluator::new(ctx.n, m_max)?;
                let got = exp_integral_quadrature(&ev, m_max, &u, &y, q)?;
                let want = (0..=m_max)
                    .map(|m| exp_integral_closed(&ev, m, &u, &y))
                    .collect::<Result<Vec<_>>>()?;
                Ok(max_abs(got.iter().zip(&want).map(|(g, w)| g - w)))
            })();
            check(
                "exp-integral",
                json!({"n": ctx.n, "m_max": m_max, "u_norm": r, "order": ctx.single}),
                ctx.tol,
                res,
            )
        })
        .collect()
}

fn double_exp_integral(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let m_max = ctx.m_max;
    let order = ctx.double.expect("planned with a double rule");
    let q = SphereQuadrature::build(ctx.n, order);
    [(2.0, 2.0), (2.0, 0.7)]
        .iter()
        .map(|&(ru, rv)| {
            let u = scaled(&random_unit(&mut rng, ctx.n), ru);
            let v = scaled(&random_unit(&mut rng, ctx.n), rv);
            let res = (|| {
                let q = q.as_ref().map_err(Clone::clone)?;
                let ev = ZonalEvaluator::new(ctx.n, m_max)?;
                let got = double_exp_quadrature(&ev, m_max, &u, &v, q)?;
                let want = (0..=m_max)
                    .map(|m| double_exp_closed(&ev, m, &u, &v))
                    .collect::<Result<Vec<_>>>()?;
                Ok(max_abs(got.iter().zip(&want).map(|(g, w)| g - w)))
            })();
            check(
                "double-exp-integral",
                json!({"n": ctx.n, "m_max": m_max, "u_norm": ru, "v_norm": rv, "order": order}),
                ctx.tol,
                res,
            )
        })
        .collect()
}

fn laguerre_transform(ctx: &Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &(b, c) in &[(1.0, 1.5), (2.5, 3.0)] {
        for &x in &[-0.5, 0.0, 0.5] {
            let res = laguerre_transform_quadrature(b, c, x, LAGUERRE_POINTS)
                .and_then(|l| Ok(l - laguerre_transform_closed(b, c, x)?))
                .map(f64::abs);
            out.push(check(
                "laguerre-transform",
                json!({"b": b, "c": c, "x": x, "points": LAGUERRE_POINTS}),
                ctx.tol,
                res,
            ));
        }
    }
    out
}

fn poisson_pair_integral(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let m_max = ctx.m_max;
    let rule = AxialPairQuadrature::build(ctx.n, PAIR_ORDER);
    [0.0, 0.2, 0.4, 0.6]
        .iter()
        .map(|&r| {
            let a = scaled(&random_unit(&mut rng, ctx.n), r);
            let res = (|| {
                let rule = rule.as_ref().map_err(Clone::clone)?;
                let got = poisson_pair_quadrature(&a, m_max, rule)?;
                let want = (0..=m_max)
                    .map(|m| poisson_pair_closed(ctx.n, m, r * r))
                    .collect::<Result<Vec<_>>>()?;
                Ok(max_abs(got.iter().zip(&want).map(|(g, w)| g - w)))
            })();
            check(
                "poisson-pair-integral",
                json!({"n": ctx.n, "m_max": m_max, "a_norm": r, "order": PAIR_ORDER}),
                ctx.tol,
                res,
            )
        })
        .collect()
}

fn moebius_pair_integral(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let m_max = ctx.m_max;
    let rule = AxialPairQuadrature::build(ctx.n, PAIR_ORDER);
    [0.0, 0.3, 0.5, 0.7]
        .iter()
        .map(|&r| {
            let a = scaled(&random_unit(&mut rng, ctx.n), r);
            let res = (|| {
                let rule = rule.as_ref().map_err(Clone::clone)?;
                let map = MoebiusMap::new(a.clone())?;
                let got = moebius_pair_quadrature(&map, m_max, rule)?;
                let want = (0..=m_max)
                    .map(|m| moebius_pair_closed(ctx.n, m, r * r))
                    .collect::<Result<Vec<_>>>()?;
                Ok(max_abs(got.iter().zip(&want).map(|(g, w)| g - w)))
            })();
            check(
                "moebius-pair-integral",
                json!({"n": ctx.n, "m_max": m_max, "a_norm": r, "order": PAIR_ORDER}),
                ctx.tol,
                res,
            )
        })
        .collect()
}

fn f_constancy(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let samples = 10;
    let (terms, path) = if ctx.oracle {
        (F_ORACLE_TERMS, "quadrature")
    } else {
        (F_TERMS, "closed")
    };
    let res = (|| {
        let c = invariant_reference(ctx.n, terms)?;
        let rule = if ctx.oracle {
            Some(AxialPairQuadrature::build(ctx.n, F_ORACLE_ORDER)?)
        } else {
            None
        };
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let a = random_ball_point(&mut rng, ctx.n, 0.7);
            let p = rule.as_ref().map_or(FPath::Closed, FPath::Quadrature);
            let f = f_value(&a, &c, terms, p)?;
            worst = worst.max((f.value - c.get(1)).abs());
        }
        Ok(worst)
    })();
    vec![check(
        "f-constancy",
        json!({"n": ctx.n, "samples": samples, "max_radius": 0.7, "terms": terms, "path": path}),
        ctx.tol,
        res,
    )]
}

const D_TERMS: usize = 20;

fn d_recurrence(ctx: &Ctx) -> Vec<CheckResult> {
    let res = recurrence_solve_d(ctx.n, ctx.n as f64 - 1.0, D_TERMS).map(|d| {
        d.iter()
            .enumerate()
            .map(|(i, v)| {
                let want = reference_difference(ctx.n, i + 1);
                (v - want).abs() / want
            })
            .fold(0.0, f64::max)
    });
    vec![check(
        "d-recurrence",
        json!({"n": ctx.n, "terms": D_TERMS}),
        ctx.tol,
        res,
    )]
}

fn d_linearity(ctx: &Ctx) -> Vec<CheckResult> {
    let d1 = ctx.n as f64 - 1.0;
    let res = (|| {
        let once = recurrence_solve_d(ctx.n, d1, D_TERMS)?;
        let twice = recurrence_solve_d(ctx.n, 2.0 * d1, D_TERMS)?;
        Ok(max_abs(once.iter().zip(&twice).map(|(a, b)| 2.0 * a - b)))
    })();
    vec![check(
        "d-linearity",
        json!({"n": ctx.n, "terms": D_TERMS}),
        ctx.tol,
        res,
    )]
}

const SERIES_TERMS: usize = 30;

fn series_identity(ctx: &Ctx) -> Vec<CheckResult> {
    vec![check(
        "series-identity",
        json!({"n": ctx.n, "terms": SERIES_TERMS}),
        ctx.tol,
        series_identity_residual(ctx.n, SERIES_TERMS),
    )]
}

fn peter_weyl(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let m_max = ctx.m_max;
    let degrees: Vec<usize> = [1, 3].into_iter().filter(|&k| k <= m_max).collect();
    let res = (|| {
        let q = ctx.single_rule()?;
        let hs = degrees
            .iter()
            .map(|&k| SolidHarmonic::new(k, random_unit(&mut rng, ctx.n)))
            .collect::<Result<Vec<_>>>()?;
        let pw = peter_weyl_project(|x| hs.iter().map(|h| h.eval(x)).sum(), m_max, ctx.radius, &q)?;
        let ev = ZonalEvaluator::new(ctx.n, m_max)?;
        let mut worst: f64 = 0.0;
        for m in 0..=m_max {
            let pole = hs.iter().find(|h| h.degree() == m).map(|h| h.pole());
            for (node, got) in q.nodes().zip(pw.component(m)) {
                let want = match pole {
                    Some(p) => ev.eval(m, node, p)?,
                    None => 0.0,
                };
                worst = worst.max((got - want).abs());
            }
        }
        Ok(worst)
    })();
    vec![check(
        "peter-weyl",
        json!({"n": ctx.n, "m_max": m_max, "radius": ctx.radius, "degrees": degrees, "order": ctx.single}),
        ctx.tol,
        res,
    )]
}

/// Solid-harmonic test sums: degrees 1..=2 and 1..=4, unit coefficients.
const SEMINORM_TESTS: [usize; 2] = [2, 4];
const SEMINORM_RADII: [f64; 2] = [0.2, 0.4];

/// Relative semi-norm deviations under f → f∘φ_a at the two truncation degrees.
fn seminorm_deviations(ctx: &Ctx, top_degree: usize, a_norm: f64) -> Result<(f64, f64)> {
    let mut rng = ctx.rng();
    let hs = (1..=4)
        .map(|k| SolidHarmonic::new(k, random_unit(&mut rng, ctx.n)))
        .collect::<Result<Vec<_>>>()?;
    let a = scaled(&random_unit(&mut rng, ctx.n), a_norm);
    let hs = &hs[..top_degree];
    let q = ctx.single_rule()?;
    let (lo, hi) = SEMINORM_DEGREES;
    let c = invariant_reference(ctx.n, hi)?;
    let map = MoebiusMap::new(a)?;
    let f = |x: &[f64]| hs.iter().map(|h| h.eval(x)).sum::<f64>();
    let g = |x: &[f64]| f(&map.apply(x));
    let dev = |m: usize| -> Result<f64> {
        let base = semi_norm_sq(f, &c, m, ctx.radius, &q)?;
        let moved = semi_norm_sq(g, &c, m, ctx.radius, &q)?;
        Ok(base.relative_deviation(&moved))
    };
    Ok((dev(lo)?, dev(hi)?))
}

fn seminorm_invariance(ctx: &Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &top in &SEMINORM_TESTS {
        for &r in &SEMINORM_RADII {
            let res = seminorm_deviations(ctx, top, r).map(|d| d.0);
            out.push(check(
                "seminorm-invariance",
                json!({"n": ctx.n, "degrees": format!("1..={top}"), "a_norm": r,
                       "m_max": SEMINORM_DEGREES.0, "radius": ctx.radius}),
                ctx.tol,
                res,
            ));
        }
    }
    out
}

fn seminorm_truncation(ctx: &Ctx) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &top in &SEMINORM_TESTS {
        for &r in &SEMINORM_RADII {
            let res = seminorm_deviations(ctx, top, r).map(|(lo, hi)| hi / lo);
            out.push(check(
                "seminorm-truncation",
                json!({"n": ctx.n, "degrees": format!("1..={top}"), "a_norm": r,
                       "m_max": [SEMINORM_DEGREES.0, SEMINORM_DEGREES.1], "radius": ctx.radius}),
                ctx.tol,
                res,
            ));
        }
    }
    out
}

const FD_POINTS: usize = 20;
const FD_STEP: f64 = 1e-3;

fn hlaplacian(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let top = ctx.m_max.min(5);
    let res = (|| {
        let hs = (1..=top)
            .map(|k| SolidHarmonic::new(k, random_unit(&mut rng, ctx.n)))
            .collect::<Result<Vec<_>>>()?;
        let mut worst: f64 = 0.0;
        for _ in 0..FD_POINTS {
            let x = random_ball_point(&mut rng, ctx.n, 0.6);
            for h in &hs {
                worst = worst.max(hyperbolic_laplacian_richardson(|p| h.eval(p), &x, FD_STEP)?.relative());
            }
        }
        Ok(worst)
    })();
    vec![check(
        "hlaplacian",
        json!({"n": ctx.n, "points": FD_POINTS, "step": FD_STEP, "stencil": "richardson", "max_radius": 0.6, "degrees": format!("1..={top}")}),
        ctx.tol,
        res,
    )]
}

fn hlaplacian_order(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let (coarse, fine) = (4e-3, 2e-3);
    let res = (|| {
        let hs = [3, 4]
            .iter()
            .map(|&k| SolidHarmonic::new(k, random_unit(&mut rng, ctx.n)))
            .collect::<Result<Vec<_>>>()?;
        let (mut sc, mut sf) = (0.0, 0.0);
        for _ in 0..FD_POINTS {
            let x = random_ball_point(&mut rng, ctx.n, 0.6);
            for h in &hs {
                sc += hyperbolic_laplacian_fd(|p| h.eval(p), &x, coarse)?.value.abs();
                sf += hyperbolic_laplacian_fd(|p| h.eval(p), &x, fine)?.value.abs();
            }
        }
        Ok(((sc / sf).log2() - 2.0).abs())
    })();
    vec![check(
        "hlaplacian-order",
        json!({"n": ctx.n, "points": FD_POINTS, "steps": [coarse, fine], "degrees": [3, 4]}),
        ctx.tol,
        res,
    )]
}

const HOLO_DIMS: [usize; 2] = [1, 2];

fn holo_recurrence(ctx: &Ctx) -> Vec<CheckResult> {
    HOLO_DIMS
        .iter()
        .map(|&n| {
            check(
                "holo-recurrence",
                json!({"n_complex": n, "c1": n as f64, "terms": 10}),
                ctx.tol,
                holo_c_recurrence_check(n, n as f64, 10),
            )
        })
        .collect()
}

/// A point of C^2 with the given modulus.
fn complex_point(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<Complex64> {
    let x = scaled(&random_unit(rng, 2 * n), r);
    x.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect()
}

fn holo_constancy(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let quad = if ctx.oracle {
        Some(SphereQuadrature::build(4, HOLO_ORDER))
    } else {
        None
    };
    let mut out = Vec::new();
    for &n in &HOLO_DIMS {
        for &r in &[0.2, 0.5, 0.8] {
            let a = complex_point(&mut rng, n, r);
            let use_quad = quad.is_some() && n == 2 && r <= HOLO_ORACLE_RADIUS;
            let res = (|| {
                let c = CoefficientSequence::holomorphic(n, n as f64, HOLO_TERMS)?;
                let mut f = holo_f_closed(&c, r, HOLO_TERMS)?;
                if use_quad {
                    let q = quad
                        .as_ref()
                        .expect("built in oracle mode")
                        .as_ref()
                        .map_err(Clone::clone)?;
                    let low = holo_pair_quadrature(&a, HOLO_DEGREE, q)?;
                    for (m, v) in low.iter().enumerate() {
                        f += c.get(m) * (v.re - holo_pair_closed(n, m, r * r));
                    }
                }
                Ok((f - c.get(1)).abs())
            })();
            let path = if use_quad { "quadrature-low-degrees" } else { "closed" };
            out.push(check(
                "holo-constancy",
                json!({"n_complex": n, "a_norm": r, "terms": HOLO_TERMS, "path": path}),
                ctx.tol,
                res,
            ));
        }
    }
    out
}

fn holo_pair_integral(ctx: &Ctx) -> Vec<CheckResult> {
    let mut rng = ctx.rng();
    let n = 2;
    let q = SphereQuadrature::build(2 * n, HOLO_ORDER);
    [0.0, 0.3, 0.5]
        .iter()
        .map(|&r| {
            let a = complex_point(&mut rng, n, r);
            let res = (|| {
                let q = q.as_ref().map_err(Clone::clone)?;
                let got = holo_pair_quadrature(&a, HOLO_DEGREE, q)?;
                Ok(got
                    .iter()
                    .enumerate()
                    .map(|(m, v)| (v - Complex64::new(holo_pair_closed(n, m, r * r), 0.0)).norm())
                    .fold(0.0, f64::max))
            })();
            check(
                "holo-pair-integral",
                json!({"n_complex": n, "a_norm": r, "m_max": HOLO_DEGREE, "order": HOLO_ORDER}),
                ctx.tol,
                res,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_configs() {
        assert!(BatteryConfig::default().validate().is_ok());
        let bad = [
            BatteryConfig {
                dims: vec![2],
                ..Default::default()
            },
            BatteryConfig {
                m_max: 0,
                ..Default::default()
            },
            BatteryConfig {
                proj_radius: 1.0,
                ..Default::default()
            },
            BatteryConfig {
                quad_order: Some(3),
                ..Default::default()
            },
            BatteryConfig {
                quad_order: Some(200),
                ..Default::default()
            },
            BatteryConfig {
                only: vec!["nonsense".into()],
                ..Default::default()
            },
            BatteryConfig {
                tolerances: [("moebius-scalar-product".to_string(), -1.0)].into(),
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(matches!(run_battery(&cfg), Err(Error::Config(_))), "{cfg:?}");
        }
    }

    #[test]
    fn even_exponent_enumeration() {
        let e = even_exponents(3, 4);
        // half-exponents summing to at most 2 in 3 parts
        assert_eq!(e.len(), 10);
        assert!(e
            .iter()
            .all(|v| v.iter().all(|k| k % 2 == 0) && v.iter().sum::<usize>() <= 4));
    }

    #[test]
    fn filtered_run_is_canonical() {
        let cfg = BatteryConfig {
            dims: vec![4, 3],
            only: vec!["series-identity".into(), "d-linearity".into()],
            ..Default::default()
        };
        let r = run_battery(&cfg).unwrap();
        let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "d-linearity[n=4,terms=20]",
                "d-linearity[n=3,terms=20]",
                "series-identity[n=4,terms=30]",
                "series-identity[n=3,terms=30]"
            ]
        );
        assert!(r.all_passed());
    }
}
