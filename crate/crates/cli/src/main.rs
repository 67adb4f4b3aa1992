use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use fdisac::harness::{
    builtin_scenario, csv_string, emit_csv, emit_curve, run_scenario, validate_scenario, Mode, Scenario,
    BUILTIN_SCENARIOS,
};

/// Full-duplex ISAC baseband simulator.
///
/// Set FDISAC_WORKERS to override the Monte-Carlo worker count and RUST_LOG
/// for progress output.
#[derive(Parser)]
#[command(name = "fdisac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (or a builtin scenario by name) and write CSV.
    Run {
        scenario: String,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// analytic, mc or both.
        #[arg(long)]
        mode: Option<Mode>,
        /// Print a text sparkline per metric to stderr.
        #[arg(long)]
        curve: bool,
    },
    /// List the builtin scenarios.
    ListScenarios,
    /// Check a scenario file without running it.
    Validate { scenario: String },
}

fn load(arg: &str) -> Result<Scenario> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(sc) = builtin_scenario(arg) {
            return Ok(sc?);
        }
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read scenario {arg}"))?;
    Ok(validate_scenario(&text)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { scenario, trials, seed, out, mode, curve } => {
            let sc = load(&scenario)?.with_overrides(trials, seed, mode)?;
            log::info!("running {} ({} series)", sc.name, sc.series.len());
            let rows = run_scenario(&sc)?;
            match &out {
                Some(path) => {
                    emit_csv(&rows, path).with_context(|| format!("cannot write {}", path.display()))?;
                    eprintln!("wrote {} rows to {}", rows.len(), path.display());
                }
                None => print!("{}", csv_string(&rows)?),
            }
            if curve {
                eprint!("{}", emit_curve(&rows)?);
            }
        }
        Command::ListScenarios => {
            for (name, json) in BUILTIN_SCENARIOS {
                let description = validate_scenario(json).map(|s| s.description).unwrap_or_default();
                println!("{name:<18} {description}");
            }
        }
        Command::Validate { scenario } => {
            let sc = load(&scenario)?;
            let sweep = sc.sweep.as_ref().map_or(0, |s| s.values.len());
            println!(
                "{}: ok (N = {}, J = {}, K = {}, {} series, {} sweep points)",
                sc.name,
                sc.waveform.n(),
                sc.waveform.j(),
                sc.waveform.k(),
                sc.series.len(),
                sweep
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<fdisac::Error>() {
                Some(fdisac::Error::ConfigInvalid(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
