//! Unsharp measurements on the first n measured qubits: percentage drop of the
//! threshold-clamped fidelity, with the sharp-optimal corrections frozen and
//! re-optimized.

use wgs_mbqc::robustness::rf_delta;
use wgs_mbqc::{Gate, GateSetup};

fn main() -> wgs_mbqc::Result<()> {
    let setup = GateSetup::new(Gate::Hadamard);
    let alpha = 6.0;
    println!("H at α = {alpha}");
    println!("lambda  n   delta(frozen)  delta(reopt)");
    for lambda in [0.95, 0.85, 0.75] {
        for n in 1..=setup.n_measured() {
            let frozen = rf_delta(&setup, alpha, lambda, n, false)?;
            let re = rf_delta(&setup, alpha, lambda, n, true)?;
            println!("{lambda:5.2}  {n}   {:10.3} %  {:10.3} %", frozen.delta, re.delta);
        }
    }
    Ok(())
}
