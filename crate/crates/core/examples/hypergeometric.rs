//! Hypergeometric building blocks: 0F1, 2F1, the radial profile Phi_m and a Laguerre transform.

use hhinv::invariant::{laguerre_transform_closed, laguerre_transform_quadrature, phi_m_eval, LAGUERRE_POINTS};
use hhinv::specfun::{hyp0f1, hyp2f1, SeriesControl};

fn main() -> hhinv::Result<()> {
    let ctl = SeriesControl::default();
    // 0F1(; 3/2; -x²/4) = sin(x)/x
    let x: f64 = 7.0;
    println!(
        "0F1(;3/2;-49/4) = {:.15}  sin(7)/7 = {:.15}",
        hyp0f1(1.5, -x * x / 4.0, &ctl)?,
        x.sin() / x
    );
    // 2F1(1, 1; 2; z) = -ln(1-z)/z
    let z: f64 = 0.9;
    println!(
        "2F1(1,1;2;0.9)  = {:.15}  -ln(0.1)/0.9 = {:.15}",
        hyp2f1(1.0, 1.0, 2.0, z, &ctl)?,
        -(1.0 - z).ln() / z
    );

    for m in 0..4 {
        println!("Phi_{m}(0.25) for n=3: {:.12}", phi_m_eval(3, m, 0.25)?);
    }

    for x in [-0.5, 0.0, 0.5] {
        println!(
            "Laguerre transform b=2.5 c=3 x={x:>4}: quadrature {:.15} closed {:.15}",
            laguerre_transform_quadrature(2.5, 3.0, x, LAGUERRE_POINTS)?,
            laguerre_transform_closed(2.5, 3.0, x)?
        );
    }
    Ok(())
}
