//! Solid H-harmonics: annihilation by the hyperbolic Laplacian and recovery by harmonic projection.

use hhinv::geometry::random_unit;
use hhinv::hharmonic::{hyperbolic_laplacian_fd, peter_weyl_project, SolidHarmonic};
use hhinv::sphere::SphereQuadrature;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hhinv::Result<()> {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h2 = SolidHarmonic::new(2, random_unit(&mut rng, n))?;
    let h3 = SolidHarmonic::new(3, random_unit(&mut rng, n))?;
    let f = |x: &[f64]| h2.eval(x) + 0.5 * h3.eval(x);

    let x = [0.2, -0.3, 0.1];
    for h in [4e-3, 2e-3, 1e-3] {
        let lap = hyperbolic_laplacian_fd(f, &x, h)?;
        println!(
            "step {h:.0e}: hyperbolic Laplacian {:+.3e}, relative {:.2e}",
            lap.value,
            lap.relative()
        );
    }

    let q = SphereQuadrature::build(n, 24)?;
    let pw = peter_weyl_project(f, 5, 0.6, &q)?;
    for m in 0..=5 {
        println!(
            "degree {m}: |f_m|^2 = {:.3e}  noise amplification {:.1}",
            pw.norm_sq(m),
            pw.amplification(m)
        );
    }
    println!("f(x) = {:.12}, reconstructed {:.12}", f(&x), pw.reconstruct(&x)?);
    Ok(())
}
