//! Product Gauss rules on S^{n-1}: exactness on monomials and a Monte Carlo cross-check.

use hhinv::sphere::{default_order, mc_integrate, monomial_moment, SphereQuadrature};

fn main() -> hhinv::Result<()> {
    for n in 3..=5 {
        let order = default_order(n).expect("default order exists for n <= 5");
        let q = SphereQuadrature::build(n, order)?;
        let mut e = vec![0; n];
        e[0] = 4;
        e[1] = 2;
        let got = q.integrate(|x| x[0].powi(4) * x[1].powi(2))?;
        let mc = mc_integrate(n, 200_000, 7, |x| x[0].powi(4) * x[1].powi(2))?;
        println!(
            "n={n} order={order} nodes={:>6} exact to degree {:>2}: rule {got:.15} closed {:.15} MC {:.5} ± {:.1e}",
            q.len(),
            q.exact_degree(),
            monomial_moment(&e),
            mc.estimate,
            mc.stderr
        );
    }
    Ok(())
}
