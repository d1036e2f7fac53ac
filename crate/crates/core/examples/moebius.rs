//! Moebius maps of the ball: the involution property and the boundary scalar-product identity.

use hhinv::geometry::{dot, random_ball_point, random_unit, MoebiusMap};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hhinv::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let map = MoebiusMap::new(vec![0.5, -0.2, 0.3])?;

    let x = random_ball_point(&mut rng, 3, 0.9);
    let back = map.apply(&map.apply(&x));
    let err = x.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("phi_a(phi_a(x)) = x up to {err:.1e}");
    println!("phi_a(0) = {:?}", map.apply(&[0.0; 3]));

    let u = random_unit(&mut rng, 3);
    let v = random_unit(&mut rng, 3);
    println!(
        "<phi_a(u), phi_a(v)> direct {:.15}  closed form {:.15}  (<u, v> = {:.4})",
        dot(&map.apply(&u), &map.apply(&v)),
        map.boundary_scalar_product(&u, &v),
        dot(&u, &v)
    );
    Ok(())
}
