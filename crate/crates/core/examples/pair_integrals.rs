//! Double sphere integrals of Z_m composed with a Moebius map, and the constancy of F(a).

use hhinv::geometry::MoebiusMap;
use hhinv::invariant::{f_value, invariant_reference, moebius_pair_closed, moebius_pair_quadrature, FPath};
use hhinv::sphere::AxialPairQuadrature;

fn main() -> hhinv::Result<()> {
    let n = 3;
    let rule = AxialPairQuadrature::build(n, 48)?;
    let a = vec![0.3, 0.4, 0.0];
    let map = MoebiusMap::new(a.clone())?;
    let quad = moebius_pair_quadrature(&map, 4, &rule)?;
    for (m, q) in quad.iter().enumerate() {
        println!(
            "m={m}: quadrature {q:+.15}  closed {:+.15}",
            moebius_pair_closed(n, m, 0.25)?
        );
    }

    let c = invariant_reference(n, 80)?;
    for r in [0.0, 0.3, 0.6, 0.9] {
        let f = f_value(&[r, 0.0, 0.0], &c, 80, FPath::Closed)?;
        println!("|a|={r}: F(a) = {:.12} (tail bound {:.1e})", f.value, f.tail);
    }
    Ok(())
}
