//! The holomorphic analogue on the complex ball.

use hhinv::invariant::{
    holo_c_recurrence_check, holo_f_closed, holo_pair_closed, holo_pair_quadrature, CoefficientSequence,
};
use hhinv::sphere::SphereQuadrature;
use num_complex::Complex64;

fn main() -> hhinv::Result<()> {
    let n = 2;
    let c = CoefficientSequence::holomorphic(n, 2.0, 400)?;
    println!("c_0..c_5 = {:?}", &c.values()[..6]);
    println!(
        "recurrence residual up to M=10: {:.1e}",
        holo_c_recurrence_check(n, 2.0, 10)?
    );
    for r in [0.2, 0.5, 0.8] {
        println!("|a|={r}: F(a) = {:.15}", holo_f_closed(&c, r, 400)?);
    }

    let q = SphereQuadrature::build(2 * n, 12)?;
    let a = [Complex64::new(0.3, 0.1), Complex64::new(0.0, -0.2)];
    let a_sq: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    for (m, v) in holo_pair_quadrature(&a, 3, &q)?.iter().enumerate() {
        println!("m={m}: quadrature {v:.12}  closed {:.12}", holo_pair_closed(n, m, a_sq));
    }
    Ok(())
}
