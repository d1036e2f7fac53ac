use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use hhinv::battery::{run_battery, BatteryConfig};
use hhinv::report::ReportFormat;
use hhinv::Error;

#[derive(Parser)]
#[command(
    name = "hhinv",
    version,
    about = "Numerical verification of Moebius-invariant harmonic analysis identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification battery and emit a report.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Real dimensions n ≥ 3.
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    dims: Vec<usize>,
    /// Highest harmonic degree for the per-degree checks.
    #[arg(long = "mmax", default_value_t = 6)]
    m_max: usize,
    /// Product-rule order for every dimension (default: 24 for n ≤ 4, 12 for n = 5).
    #[arg(long)]
    quad_order: Option<usize>,
    /// Sphere radius used by the harmonic projection.
    #[arg(long, default_value_t = 0.6)]
    radius: f64,
    /// Tolerance override, e.g. `--tol-family exp-integral=1e-9`. Repeatable.
    #[arg(long = "tol-family", value_name = "NAME=VAL")]
    tol_family: Vec<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Run only these check families.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Evaluate F by raw double quadrature instead of closed forms.
    #[arg(long)]
    oracle: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// List check families and their default tolerances, then exit.
    #[arg(long)]
    list: bool,
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn main() -> ExitCode {
    let Command::Verify(args) = Cli::parse().command;
    if args.list {
        for f in hhinv::battery::FAMILIES {
            println!("{:<24} {:<8e} {}", f.name, f.default_tol, f.summary);
        }
        return ExitCode::SUCCESS;
    }
    match verify(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e:#}");
            let config = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Config(_))));
            ExitCode::from(if config { EXIT_CONFIG } else { EXIT_FAIL })
        }
    }
}

fn parse_tolerance(s: &str) -> anyhow::Result<(String, f64)> {
    let (name, val) = s
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("--tol-family expects NAME=VAL, got {s:?}")))?;
    let tol = val
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("tolerance {val:?} for {name} is not a number")))?;
    Ok((name.to_string(), tol))
}

fn verify(args: VerifyArgs) -> anyhow::Result<bool> {
    let format: ReportFormat = args.format.parse()?;
    let cfg = BatteryConfig {
        dims: args.dims,
        m_max: args.m_max,
        quad_order: args.quad_order,
        proj_radius: args.radius,
        tolerances: args
            .tol_family
            .iter()
            .map(|s| parse_tolerance(s))
            .collect::<anyhow::Result<_>>()?,
        seed: args.seed,
        only: args.only,
        oracle: args.oracle,
    };
    cfg.validate()?;
    let report = run_battery(&cfg)?;
    let text = report.render(format)?;
    match &args.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    for c in report.failures() {
        let residual = c.residual.map_or_else(|| "n/a".to_string(), |r| format!("{r:.3e}"));
        eprintln!("FAIL {} residual {residual} tol {:.1e}", c.name, c.tol);
        if let Some(m) = &c.message {
            eprintln!("     {m}");
        }
    }
    eprintln!("{} passed, {} failed", report.summary.pass, report.summary.fail);
    if report.checks.is_empty() {
        return Err(anyhow!("no checks were selected"));
    }
    Ok(report.all_passed())
}
