use nalgebra::DMatrix;
use proptest::prelude::*;
use wgs_mbqc::channel::{
    assemble_channel, average_gate_fidelity, classical_threshold, pauli_sum_fidelity, ContributionTable,
};
use wgs_mbqc::linalg::{c, trace, validate_channel, ChannelRepr, CMatrix, OperatorBasis, C64};
use wgs_mbqc::wgs::Falloff;
use wgs_mbqc::{Gate, GateSetup, Optimizer};

/// Trace-preserving channels: `F̄ = (Σ_k |Tr(U†K_k)|² + d) / (d(d+1))`.
fn kraus_oracle(ch: &ChannelRepr, u: &CMatrix) -> f64 {
    let d = u.nrows() as f64;
    let s: f64 = ch.kraus().iter().map(|k| trace(&(u.adjoint() * k)).norm_sqr()).sum();
    (s + d) / (d * (d + 1.0))
}

fn random_unitary(d: usize, entries: &[(f64, f64)]) -> CMatrix {
    let m = DMatrix::from_iterator(d, d, entries.iter().map(|&(re, im)| c(re, im)));
    m.qr().q()
}

#[test]
fn fidelities_match_kraus_oracle() {
    for gate in Gate::ALL {
        let setup = GateSetup::new(gate);
        for alpha in [0.0, 0.5, 1.32, 2.0, 3.5, 6.0, 11.0] {
            let h = setup.ordered_hamiltonian(alpha);
            for (lambda, n) in [(1.0, 0), (0.85, 1), (0.6, setup.n_measured())] {
                let branches = setup.branches(&h, lambda, n).unwrap();
                let table = ContributionTable::new(&branches, &setup.spec.target, &setup.basis).unwrap();
                for policy in [table.optimize_affine().unwrap().0, setup.pmbqc_policy()] {
                    let ch = assemble_channel(&branches, &policy).unwrap();
                    let oracle = kraus_oracle(&ch, &setup.spec.target);
                    let via_basis = average_gate_fidelity(&ch, &setup.spec.target, &setup.basis).unwrap();
                    let via_table = table.fidelity(&policy).unwrap();
                    assert!((oracle - via_basis).abs() < 1e-12, "{gate} α={alpha}: {oracle} vs {via_basis}");
                    assert!((oracle - via_table).abs() < 1e-12, "{gate} α={alpha}: {oracle} vs {via_table}");
                }
            }
        }
    }
}

#[test]
fn completely_depolarizing_gives_one_over_d() {
    for (d, u) in [(2, Gate::Hadamard), (4, Gate::Cnot)] {
        let setup = GateSetup::new(u);
        let ch = ChannelRepr::completely_depolarizing(d).unwrap();
        let f = average_gate_fidelity(&ch, &setup.spec.target, &setup.basis).unwrap();
        assert!((f - 1.0 / d as f64).abs() < 1e-14);
    }
    assert_eq!(classical_threshold(4), 0.4);
    assert!((classical_threshold(2) - 2.0 / 3.0).abs() < 1e-16);
}

#[test]
fn hierarchy_restricted_affine_per_outcome() {
    for gate in Gate::ALL {
        let setup = GateSetup::new(gate);
        for i in 0..=60 {
            let alpha = 0.2 * i as f64;
            let table = setup.table(&setup.ordered_hamiltonian(alpha), 1.0, 0).unwrap();
            let r = table.fidelity(&setup.pmbqc_policy()).unwrap();
            let a = table.optimize_affine().unwrap().1;
            let p = table.optimize_per_outcome().1;
            assert!(r <= a + 1e-12 && a <= p + 1e-12, "{gate} α={alpha}: {r} {a} {p}");
        }
    }
}

#[test]
fn restricted_equals_optimized_at_large_alpha() {
    // The optimal corrections coincide with the cluster-state ones once the
    // couplings are close enough to the NN limit.
    for gate in Gate::SINGLE_QUBIT {
        let setup = GateSetup::new(gate);
        for alpha in [2.5, 4.0, 8.0] {
            let s = setup.evaluate_sharp(&setup.ordered_hamiltonian(alpha), Optimizer::Affine).unwrap();
            assert!((s.restricted - s.optimized).abs() < 1e-12, "{gate} α={alpha}");
        }
    }
}

#[test]
fn cnot_optimal_policy_does_not_depend_on_alpha() {
    let setup = GateSetup::new(Gate::Cnot);
    let nn = setup
        .evaluate_sharp(&setup.ordered_hamiltonian(Falloff::NearestNeighbour), Optimizer::Affine)
        .unwrap()
        .policy;
    for i in 1..=60 {
        let alpha = 0.2 * i as f64;
        let p = setup.evaluate_sharp(&setup.ordered_hamiltonian(alpha), Optimizer::Affine).unwrap().policy;
        assert!(p.same_table(&nn), "α={alpha}: {p} vs {nn}");
    }
    assert!(nn.same_table(&setup.pmbqc_policy()));
}

#[test]
fn cptp_for_every_preset_channel() {
    for gate in Gate::ALL {
        let setup = GateSetup::new(gate);
        for alpha in [0.0, 1.0, 3.0, 7.0] {
            let h = setup.ordered_hamiltonian(alpha);
            let policy = setup.evaluate_sharp(&h, Optimizer::Affine).unwrap().policy;
            for lambda in [1.0, 0.9, 0.5, 0.0] {
                let n = if lambda == 1.0 { 0 } else { setup.n_measured() };
                let ch = assemble_channel(&setup.branches(&h, lambda, n).unwrap(), &policy).unwrap();
                let rep = validate_channel(&ch);
                assert!(rep.trace_preserving && rep.cp, "{gate} α={alpha} λ={lambda}: {rep:?}");
            }
        }
    }
}

fn unit_pair() -> impl Strategy<Value = (f64, f64)> {
    (-1.0f64..1.0, -1.0f64..1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pauli_form_matches_basis_form_on_random_qubit_channels(
        a in prop::collection::vec(unit_pair(), 4),
        b in prop::collection::vec(unit_pair(), 4),
        t in prop::collection::vec(unit_pair(), 4),
        p in 0.0f64..1.0,
    ) {
        let (ua, ub, target) = (random_unitary(2, &a), random_unitary(2, &b), random_unitary(2, &t));
        let ch = ChannelRepr::from_kraus(vec![ua * c(p.sqrt(), 0.0), ub * c((1.0 - p).sqrt(), 0.0)]).unwrap();
        let basis = OperatorBasis::new(2).unwrap();
        let f1 = average_gate_fidelity(&ch, &target, &basis).unwrap();
        let f2 = pauli_sum_fidelity(&ch, &target).unwrap();
        let f3 = kraus_oracle(&ch, &target);
        prop_assert!((f1 - f2).abs() < 1e-12);
        prop_assert!((f1 - f3).abs() < 1e-12);
    }

    #[test]
    fn fidelity_invariant_under_kraus_relabelling(
        a in prop::collection::vec(unit_pair(), 16),
        b in prop::collection::vec(unit_pair(), 16),
        w in prop::collection::vec(unit_pair(), 4),
        p in 0.0f64..1.0,
    ) {
        let target = wgs_mbqc::gates::cnot_matrix();
        let k0 = random_unitary(4, &a) * c(p.sqrt(), 0.0);
        let k1 = random_unitary(4, &b) * c((1.0 - p).sqrt(), 0.0);
        let basis = OperatorBasis::new(4).unwrap();
        let f = average_gate_fidelity(&ChannelRepr::from_kraus(vec![k0.clone(), k1.clone()]).unwrap(), &target, &basis).unwrap();
        // reordered
        let g = average_gate_fidelity(&ChannelRepr::from_kraus(vec![k1.clone(), k0.clone()]).unwrap(), &target, &basis).unwrap();
        // unitarily mixed: K'_i = Σ_j W_ij K_j
        let wm = random_unitary(2, &w);
        let mix = |i: usize| &k0 * wm[(i, 0)] + &k1 * wm[(i, 1)];
        let h = average_gate_fidelity(&ChannelRepr::from_kraus(vec![mix(0), mix(1)]).unwrap(), &target, &basis).unwrap();
        prop_assert!((f - g).abs() < 1e-12);
        prop_assert!((f - h).abs() < 1e-12);
        prop_assert!((f - kraus_oracle(&ChannelRepr::from_kraus(vec![k0, k1]).unwrap(), &target)).abs() < 1e-12);
    }

    #[test]
    fn unitary_channel_of_target_is_perfect(t in prop::collection::vec(unit_pair(), 4), phase in 0.0f64..6.3) {
        let u = random_unitary(2, &t);
        let ch = ChannelRepr::unitary(&u * C64::from_polar(1.0, phase));
        let f = average_gate_fidelity(&ch, &u, &OperatorBasis::new(2).unwrap()).unwrap();
        prop_assert!((f - 1.0).abs() < 1e-12);
    }
}
