//! Run a config-driven experiment and print the result and delta tables.
//!
//! ```text
//! cargo run --release --example run_experiment [CONFIG] [OUT_DIR]
//! ```
//!
//! Without arguments, runs the bundled regression config over the
//! planted-entity pool and writes into a temporary directory.

use std::path::PathBuf;

use segbench::harness::table::{cells_csv, deltas_csv};
use segbench::harness::{emit, run_experiment, ExperimentConfig, OutputFormat};

fn main() -> segbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/regression.toml"));
    let mut cfg = ExperimentConfig::load(&config)?;
    cfg.output_dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("segbench-example"));

    let table = run_experiment(&cfg)?;
    print!("{}", cells_csv(&table)?);
    println!();
    print!("{}", deltas_csv(&table)?);
    for f in &table.failures {
        eprintln!("failed: {} {} {} {}: {}", f.algorithm, f.dataset, f.variant, f.sample_id, f.message);
    }
    for path in emit(&table, OutputFormat::Both, &cfg.output_dir)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}
