//! Zonal harmonics: recurrence values, the generating-function oracle and the reproducing property.

use hhinv::geometry::{dot, random_unit};
use hhinv::sphere::SphereQuadrature;
use hhinv::zonal::{zonal_generating_oracle, ZonalEvaluator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hhinv::Result<()> {
    let n = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = random_unit(&mut rng, n);
    let p = random_unit(&mut rng, n);
    let ev = ZonalEvaluator::new(n, 8)?;

    println!(" m   Z_m(x,p) recurrence     generating function");
    for m in 0..=8 {
        println!(
            "{m:>2}   {:>22.15}  {:>22.15}",
            ev.eval(m, &x, &p)?,
            zonal_generating_oracle(n, m, &x, &p)
        );
    }

    let q = SphereQuadrature::build(n, 24)?;
    let m = 5;
    let reproduced = q.integrate(|y| ev.unit(m, dot(y, &p)).unwrap() * ev.unit(m, dot(&x, y)).unwrap())?;
    println!(
        "integral of Z_5(y,p) Z_5(x,y) = {reproduced:.15}, Z_5(x,p) = {:.15}",
        ev.eval(m, &x, &p)?
    );
    Ok(())
}
