//! Cluster-state stabilizer expectations of the resource state: all +1 in the
//! nearest-neighbour limit, degraded once long-range tails are present.

use wgs_mbqc::wgs::{check_cluster_stabilizers, evolve_diagonal, ordered_couplings, plus_state, Falloff};
use wgs_mbqc::{Gate, GateSetup};

fn main() -> wgs_mbqc::Result<()> {
    let g = GateSetup::new(Gate::Hadamard).geometry;
    let psi = plus_state(g.n_qubits());
    for falloff in [Falloff::NearestNeighbour, Falloff::from(8.0), Falloff::from(4.0), Falloff::from(2.0)] {
        let state = evolve_diagonal(&psi, &ordered_couplings(&g, falloff))?;
        let rep = check_cluster_stabilizers(&state, &g)?;
        let ks: Vec<String> = rep.expectations.iter().map(|k| format!("{k:+.4}")).collect();
        println!("{falloff:?}: [{}]  all pass: {}", ks.join(", "), rep.all_pass);
    }
    Ok(())
}
