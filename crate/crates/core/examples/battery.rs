//! Run a slice of the verification battery from code and inspect the report.

use hhinv::battery::{run_battery, BatteryConfig};
use hhinv::report::ReportFormat;

fn main() -> hhinv::Result<()> {
    let cfg = BatteryConfig {
        dims: vec![3, 4],
        only: vec!["moebius-pair-integral".into(), "series-identity".into()],
        ..Default::default()
    };
    let report = run_battery(&cfg)?;
    for c in &report.checks {
        println!(
            "{:<5} {:.2e} < {:.0e}  {}",
            c.pass,
            c.residual.unwrap_or(f64::NAN),
            c.tol,
            c.name
        );
    }
    println!("{} passed, {} failed", report.summary.pass, report.summary.fail);
    print!(
        "{}",
        report
            .render(ReportFormat::Csv)?
            .lines()
            .take(2)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!();
    Ok(())
}
