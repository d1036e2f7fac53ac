use hhinv::geometry::{dot, random_unit};
use hhinv::sphere::SphereQuadrature;
use hhinv::zonal::{zonal_diag, ZonalEvaluator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn reproducing_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [3, 4] {
        let q = SphereQuadrature::build(n, 24).unwrap();
        let ev = ZonalEvaluator::new(n, 6).unwrap();
        let x = random_unit(&mut rng, n);
        let p = random_unit(&mut rng, n);
        for m in 0..=6 {
            let got = q
                .integrate(|y| ev.unit(m, dot(y, &p)).unwrap() * ev.unit(m, dot(&x, y)).unwrap())
                .unwrap();
            let want = ev.eval(m, &x, &p).unwrap();
            assert!((got - want).abs() < 1e-9, "n={n} m={m}: {got} vs {want}");
        }
    }
}

#[test]
fn orthogonality_and_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 3;
    let q = SphereQuadrature::build(n, 24).unwrap();
    let ev = ZonalEvaluator::new(n, 6).unwrap();
    let x = random_unit(&mut rng, n);
    let y = random_unit(&mut rng, n);
    for m in 0..=6 {
        for k in 0..=6 {
            let got = q
                .integrate(|z| ev.unit(m, dot(&x, z)).unwrap() * ev.unit(k, dot(&y, z)).unwrap())
                .unwrap();
            let want = if m == k { ev.eval(m, &x, &y).unwrap() } else { 0.0 };
            assert!((got - want).abs() < 1e-9, "m={m} k={k}");
        }
        // Z_m(x, x) is the dimension of the degree-m harmonics: 2m + 1 on S²
        assert!((zonal_diag(n, m, &x) - (2 * m + 1) as f64).abs() < 1e-12);
    }
}
