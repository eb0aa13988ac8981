//! Config-driven run: parse TOML with overrides, echo it, run, read the summary.
//!
//! `cargo run --release --example config_run -- configs/fgr.toml [section.key=value ...]`

use std::path::PathBuf;

use nlsode::config::ExperimentConfig;
use nlsode::run::run_experiment;

fn main() -> nlsode::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = PathBuf::from(args.next().unwrap_or_else(|| "configs/fgr.toml".into()));
    let overrides: Vec<String> = args.collect();
    let cfg = ExperimentConfig::load(&path, None, &overrides)?;
    print!("{}", cfg.echo());

    let out = std::env::temp_dir().join(format!("nlsode-{}", cfg.kind()?));
    let outcome = run_experiment(&cfg, &out)?;
    println!("--- {} -> {}", outcome.kind, out.display());
    for r in &outcome.records {
        println!("{}", r.to_line());
    }

    // the echo is a complete config: re-running it gives the same records
    let again = ExperimentConfig::from_toml_str(&cfg.echo(), &[])?;
    let repeat = run_experiment(&again, &out)?;
    println!("repeat identical: {}", repeat.records == outcome.records);
    Ok(())
}
