//! Nearest-neighbour limit: every branch of the measurement record is the
//! target gate up to a Pauli byproduct, so the corrected channel is exact.

use wgs_mbqc::wgs::Falloff;
use wgs_mbqc::{Gate, GateSetup, Optimizer};

fn main() -> wgs_mbqc::Result<()> {
    for gate in Gate::ALL {
        let setup = GateSetup::new(gate);
        let h = setup.ordered_hamiltonian(Falloff::NearestNeighbour);
        let eval = setup.evaluate_sharp(&h, Optimizer::Affine)?;
        println!(
            "{:<5} |V_m| = {}  F_opt = {:.15}  F_pMBQC = {:.15}  policy {}",
            setup.gate_label(),
            setup.n_measured(),
            eval.optimized,
            eval.restricted,
            eval.policy
        );
    }
    Ok(())
}
