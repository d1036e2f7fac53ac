use hhinv::geometry::{random_unit, Rotation};
use hhinv::hharmonic::{peter_weyl_project, SolidHarmonic};
use hhinv::sphere::SphereQuadrature;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn test_function(rng: &mut ChaCha8Rng, n: usize) -> Vec<SolidHarmonic> {
    (1..=3)
        .map(|k| SolidHarmonic::new(k, random_unit(rng, n)).unwrap())
        .collect()
}

#[test]
fn projection_is_rotation_equivariant() {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let hs = test_function(&mut rng, n);
    let f = |x: &[f64]| hs.iter().map(|h| h.eval(x)).sum::<f64>();
    let u = Rotation::random(&mut rng, n);
    let g = |x: &[f64]| f(&u.apply(x));
    let q = SphereQuadrature::build(n, 24).unwrap();
    let pf = peter_weyl_project(f, 5, 0.6, &q).unwrap();
    let pg = peter_weyl_project(g, 5, 0.6, &q).unwrap();
    for _ in 0..5 {
        let zeta = random_unit(&mut rng, n);
        for m in 0..=5 {
            let a = pg.eval_component(m, &zeta);
            let b = pf.eval_component(m, &u.apply(&zeta));
            assert!((a - b).abs() < 1e-10, "m={m}: {a} vs {b}");
        }
    }
}

#[test]
fn projection_is_idempotent() {
    let n = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let hs = test_function(&mut rng, n);
    let f = |x: &[f64]| hs.iter().map(|h| h.eval(x)).sum::<f64>();
    let q = SphereQuadrature::build(n, 12).unwrap();
    let once = peter_weyl_project(f, 4, 0.6, &q).unwrap();
    let twice = peter_weyl_project(|x| once.reconstruct(x).unwrap(), 4, 0.6, &q).unwrap();
    for m in 0..=4 {
        for (a, b) in once.component(m).iter().zip(twice.component(m)) {
            assert!((a - b).abs() < 1e-10, "m={m}");
        }
    }
}

#[test]
fn reconstruction_matches_interior_values() {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let hs = test_function(&mut rng, n);
    let f = |x: &[f64]| hs.iter().map(|h| h.eval(x)).sum::<f64>();
    let q = SphereQuadrature::build(n, 24).unwrap();
    let pw = peter_weyl_project(f, 4, 0.6, &q).unwrap();
    for r in [0.0, 0.3, 0.8] {
        let x: Vec<f64> = random_unit(&mut rng, n).iter().map(|v| v * r).collect();
        assert!((pw.reconstruct(&x).unwrap() - f(&x)).abs() < 1e-10, "r={r}");
    }
}
