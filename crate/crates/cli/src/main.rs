//! Command line entry point.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or solve error.

mod config;
mod run;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{ConfigLayer, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "quintic-gw",
    version,
    about = "Exact Gromov-Witten invariants of the quintic threefold: solve, verify, tabulate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the potentials genus by genus and emit per-genus reports.
    Solve(CommonArgs),
    /// Run a named verification suite and emit a pass/fail report.
    Verify(VerifyArgs),
    /// Emit the invariant table N_{g,d}.
    Table(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Highest genus to solve (initial data required from genus 3 up).
    #[arg(long)]
    genus: Option<u32>,
    /// Truncation order of every q-series.
    #[arg(long)]
    order: Option<usize>,
    /// Extra exact q-orders every fit must verify.
    #[arg(long)]
    margin: Option<usize>,
    /// Propagator shifts: "c1a=…;c1b=…;c2=…;c3=…" with comma-separated
    /// coefficient lists, constant term first; or "zero" / "special".
    #[arg(long)]
    gauge: Option<String>,
    /// File of lines "g d value" supplying invariants N_{g,d}.
    #[arg(long = "initial-data")]
    initial_data: Option<PathBuf>,
    /// Output format: json or csv.
    #[arg(long)]
    format: Option<String>,
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which checks to run: mirror, oracle, hae, or all.
    #[arg(long)]
    suite: Option<String>,
    /// Highest genus the oracle suite compares (1..=3).
    #[arg(long = "genus-max")]
    genus_max: Option<u32>,
}

fn layer(common: &CommonArgs, suite: Option<String>, genus_max: Option<u32>) -> ConfigLayer {
    ConfigLayer {
        genus: common.genus,
        order: common.order,
        margin: common.margin,
        gauge: common.gauge.clone(),
        initial_data: common.initial_data.clone(),
        format: common.format.clone(),
        out: common.out.clone(),
        suite,
        genus_max,
    }
}

fn emit(cfg: &RunConfig, text: &str) -> quintic_gw::Result<()> {
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| {
            quintic_gw::Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> quintic_gw::Result<i32> {
    let (cfg, result) = match &cli.command {
        Command::Solve(common) => {
            let cfg = config::resolve(
                layer(common, None, None),
                common.config.as_ref(),
                OutputFormat::Json,
            )?;
            let result = run::cmd_solve(&cfg)?;
            (cfg, result)
        }
        Command::Verify(args) => {
            let cfg = config::resolve(
                layer(&args.common, args.suite.clone(), args.genus_max),
                args.common.config.as_ref(),
                OutputFormat::Json,
            )?;
            let result = run::cmd_verify(&cfg)?;
            (cfg, result)
        }
        Command::Table(common) => {
            let cfg = config::resolve(
                layer(common, None, None),
                common.config.as_ref(),
                OutputFormat::Csv,
            )?;
            let result = run::cmd_table(&cfg)?;
            (cfg, result)
        }
    };
    let (text, code) = result;
    emit(&cfg, &text)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
