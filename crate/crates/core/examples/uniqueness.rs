//! The recurrence that fixes c_m from c_1, and the series identity behind it.

use hhinv::invariant::{recurrence_solve_d, reference_difference, series_identity_coefficients};

fn main() -> hhinv::Result<()> {
    for n in [3, 4, 5] {
        let d = recurrence_solve_d(n, n as f64 - 1.0, 8)?;
        println!("n={n}");
        for (i, v) in d.iter().enumerate() {
            println!(
                "  d_{} = {v:>14.6}  closed form {:>14.6}",
                i + 1,
                reference_difference(n, i + 1)
            );
        }
    }
    println!("coefficients of (1-z)^(4-2n) for n=4 vs the weighted profile sum:");
    for (k, (lhs, rhs)) in series_identity_coefficients(4, 6)?.into_iter().enumerate() {
        println!("  z^{k}: {lhs:>10.3} {rhs:>18.12}");
    }
    Ok(())
}
