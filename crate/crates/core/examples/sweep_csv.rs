//! Programmatic sweep with the same record format as the CLI, written to stdout
//! as CSV.

use wgs_mbqc::harness::{run_sweep, write_csv, AlphaGrid, SweepConfig};
use wgs_mbqc::Gate;

fn main() -> wgs_mbqc::Result<()> {
    let cfg = SweepConfig {
        gates: vec![Gate::T, Gate::Cnot],
        alpha: AlphaGrid::Points(vec![1.0, 2.78, 5.31]),
        lambdas: vec![1.0, 0.9],
        ns: Some(vec![1]),
        sigmas: vec![0.0, 0.05],
        realizations: 200,
        ..Default::default()
    };
    let out = run_sweep(&cfg)?;
    for f in &out.failures {
        eprintln!("failed: {f:?}");
    }
    write_csv(&out.records, std::io::stdout().lock())?;
    Ok(())
}
