use hhinv::geometry::{dot, random_ball_point, random_unit, MoebiusMap, Rotation};
use hhinv::zonal::ZonalEvaluator;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn moebius_map_is_an_involution(n in 3usize..7, seed in any::<u64>(), r in 0.0f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = MoebiusMap::new(random_ball_point(&mut rng, n, r)).unwrap();
        let x = random_ball_point(&mut rng, n, 0.95);
        let back = map.apply(&map.apply(&x));
        for (a, b) in x.iter().zip(&back) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_maps_to_boundary(n in 3usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = MoebiusMap::new(random_ball_point(&mut rng, n, 0.9)).unwrap();
        let x = random_unit(&mut rng, n);
        let y = map.apply(&x);
        prop_assert!((dot(&y, &y) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zonal_kernel_is_rotation_invariant(n in 3usize..7, m in 0usize..9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ev = ZonalEvaluator::new(n, m).unwrap();
        let u = Rotation::random(&mut rng, n);
        let x = random_unit(&mut rng, n);
        let y = random_unit(&mut rng, n);
        let a = ev.eval(m, &x, &y).unwrap();
        let b = ev.eval(m, &u.apply(&x), &u.apply(&y)).unwrap();
        prop_assert!((a - b).abs() < 1e-11 * a.abs().max(1.0));
    }
}

#[test]
fn boundary_scalar_product_over_many_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 3..=5 {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let map = MoebiusMap::new(random_ball_point(&mut rng, n, 0.9)).unwrap();
            let x = random_unit(&mut rng, n);
            let y = random_unit(&mut rng, n);
            worst = worst.max(map.scalar_product_residual(&x, &y));
        }
        assert!(worst < 1e-12, "n={n}: {worst:e}");
    }
}

#[test]
fn moebius_maps_commute_with_rotations() {
    // U φ_a(x) = φ_{Ua}(U x)
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_ball_point(&mut rng, 4, 0.8);
    let u = Rotation::random(&mut rng, 4);
    let x = random_ball_point(&mut rng, 4, 0.9);
    let lhs = u.apply(&MoebiusMap::new(a.clone()).unwrap().apply(&x));
    let rhs = MoebiusMap::new(u.apply(&a)).unwrap().apply(&u.apply(&x));
    for (l, r) in lhs.iter().zip(&rhs) {
        assert!((l - r).abs() < 1e-13);
    }
}
