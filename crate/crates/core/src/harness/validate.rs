//! Quick invariant suite behind the `validate` subcommand.

use serde::Serialize;

use crate::channel::{assemble_channel, ContributionTable};
use crate::error::Result;
use crate::experiment::{GateSetup, Optimizer};
use crate::gates::{analytic_restricted_fidelity, Gate};
use crate::linalg::{
    c, max_abs, pauli_x, pauli_z, trace, validate_channel, ChannelRepr, OperatorBasis, CHANNEL_TOL,
};
use crate::wgs::{
    check_cluster_stabilizers, completeness_defect, evolve_diagonal, ordered_couplings,
    plus_state, Falloff,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

const ALPHAS: [f64; 4] = [0.0, 1.0, 2.5, 6.0];
const LAMBDAS: [f64; 2] = [1.0, 0.85];

pub fn run_validation() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    for d in [2, 4] {
        let b = OperatorBasis::new(d)?;
        let mut worst: f64 = 0.0;
        for (i, u) in b.elements().iter().enumerate() {
            for (j, v) in b.elements().iter().enumerate() {
                let expect = if i == j { d as f64 } else { 0.0 };
                worst = worst.max((trace(&(u.adjoint() * v)).norm() - expect).abs());
            }
        }
        out.push(check(format!("basis orthogonality d={d}"), worst < 1e-12, format!("{worst:.2e}")));
    }

    for gate in Gate::ALL {
        let setup = GateSetup::new(gate);
        let mut cptp = 0.0f64;
        let mut complete = 0.0f64;
        let mut hierarchy = true;
        for alpha in ALPHAS {
            let h = setup.ordered_hamiltonian(alpha);
            for lambda in LAMBDAS {
                let n = if lambda == 1.0 { 0 } else { setup.n_measured() };
                let branches = setup.branches(&h, lambda, n)?;
                complete = complete.max(completeness_defect(&branches));
                let sharp = setup.evaluate_sharp(&h, Optimizer::Affine)?;
                let ch = assemble_channel(&branches, &sharp.policy)?;
                cptp = cptp.max(validate_channel(&ch).max_violation);
                if lambda == 1.0 {
                    let table = ContributionTable::new(&branches, &setup.spec.target, &setup.basis)?;
                    let per = table.optimize_per_outcome().1;
                    hierarchy &= sharp.restricted <= sharp.optimized + 1e-12
                        && sharp.optimized <= per + 1e-12;
                }
            }
        }
        out.push(check(format!("{gate} channels CPTP"), cptp < CHANNEL_TOL, format!("{cptp:.2e}")));
        out.push(check(format!("{gate} branch completeness"), complete < 1e-12, format!("{complete:.2e}")));
        out.push(check(format!("{gate} restricted <= affine <= per-outcome"), hierarchy, ""));

        let nn = setup.evaluate_sharp(&setup.ordered_hamiltonian(Falloff::NearestNeighbour), Optimizer::Affine)?;
        out.push(check(
            format!("{gate} nearest-neighbour limit is exact"),
            (nn.optimized - 1.0).abs() < 1e-10,
            format!("F = {:.15}, {}", nn.optimized, nn.policy),
        ));
    }

    for gate in Gate::SINGLE_QUBIT {
        let setup = GateSetup::new(gate);
        let mut worst: f64 = 0.0;
        for i in 0..40 {
            let a = 0.2 * i as f64;
            let num = setup.restricted_fidelity(a)?;
            worst = worst.max((num - analytic_restricted_fidelity(gate, a)?).abs());
        }
        out.push(check(format!("{gate} closed form matches channel"), worst < 1e-10, format!("{worst:.2e}")));
    }

    for gate in [Gate::Hadamard, Gate::Cnot] {
        let g = GateSetup::new(gate).geometry;
        let psi = plus_state(g.n_qubits());
        let nn = evolve_diagonal(&psi, &ordered_couplings(&g, Falloff::NearestNeighbour))?;
        let nn_ok = check_cluster_stabilizers(&nn, &g)?.all_pass;
        let wgs = evolve_diagonal(&psi, &ordered_couplings(&g, 4.0))?;
        let wgs_ok = check_cluster_stabilizers(&wgs, &g)?.all_pass;
        out.push(check(
            format!("{gate} resource stabilizers (NN pass, α=4 fails)"),
            nn_ok && !wgs_ok,
            format!("nn {nn_ok}, α=4 {wgs_ok}"),
        ));
    }

    let b = OperatorBasis::new(2)?;
    let ch = ChannelRepr::from_kraus(vec![
        pauli_x() * c(0.3f64.sqrt(), 0.0),
        pauli_z() * c(0.7f64.sqrt(), 0.0),
    ])?;
    let dev = b
        .elements()
        .iter()
        .map(|u| max_abs(&(ch.apply(u).unwrap() - ch.apply_superoperator(u))))
        .fold(0.0, f64::max);
    out.push(check("superoperator agrees with Kraus action", dev < 1e-12, format!("{dev:.2e}")));

    Ok(out)
}
