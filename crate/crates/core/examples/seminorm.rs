//! The invariant semi-norm of a sum of solid harmonics before and after composing with a Moebius map.

use hhinv::geometry::{random_unit, MoebiusMap};
use hhinv::hharmonic::SolidHarmonic;
use hhinv::invariant::{invariant_reference, semi_norm_sq};
use hhinv::sphere::SphereQuadrature;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hhinv::Result<()> {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h1 = SolidHarmonic::new(1, random_unit(&mut rng, n))?;
    let h2 = SolidHarmonic::new(2, random_unit(&mut rng, n))?;
    let f = |x: &[f64]| h1.eval(x) + h2.eval(x);
    let q = SphereQuadrature::build(n, 24)?;
    let c = invariant_reference(n, 16)?;
    let base = semi_norm_sq(f, &c, 16, 0.6, &q)?;
    println!("|f|^2 = {:.10}", base.value);

    for r in [0.1, 0.2, 0.3, 0.4] {
        let map = MoebiusMap::new(vec![0.0, r, 0.0])?;
        let g = |x: &[f64]| f(&map.apply(x));
        for m_max in [8, 12, 16] {
            let moved = semi_norm_sq(g, &c, m_max, 0.6, &q)?;
            let base = semi_norm_sq(f, &c, m_max, 0.6, &q)?;
            println!(
                "|a|={r} m_max={m_max:>2}: |f o phi_a|^2 = {:.10}  relative change {:.2e}",
                moved.value,
                base.relative_deviation(&moved)
            );
        }
    }
    Ok(())
}
