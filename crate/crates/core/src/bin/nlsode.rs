use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nlsode::config::{ExperimentConfig, ExperimentKind};
use nlsode::run::run_experiment;
use nlsode::Error;

/// Run one experiment and report pass/fail per check.
///
/// Exit status: 0 when every check passes, 1 when a check fails or the run
/// aborts, 2 on usage or configuration errors.
#[derive(Parser, Debug)]
#[command(name = "nlsode", version)]
struct Cli {
    /// simulate | fgr | standing-wave | scatter-report | virial | damping | decay-probe
    kind: String,
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: ./out/<kind>)
    #[arg(long)]
    out: Option<PathBuf>,
    /// section.key=value, may be repeated
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn is_usage(e: &Error) -> bool {
    match e {
        Error::Config { .. } | Error::InvalidArgument(_) | Error::InvalidGrid(_) => true,
        Error::Context { source, .. } => is_usage(source),
        _ => false,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = cli
        .kind
        .parse::<ExperimentKind>()
        .and_then(|kind| ExperimentConfig::load(&cli.config, Some(kind), &cli.overrides))
        .and_then(|cfg| {
            let out = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from("out").join(cfg.kind.map_or("run", |k| k.name())));
            run_experiment(&cfg, &out)
        });
    match result {
        Ok(outcome) => {
            for r in &outcome.records {
                println!("{}", r.to_line());
            }
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
