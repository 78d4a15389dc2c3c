use wgs_mbqc::robustness::{
    clamped_drop, disorder_point, quenched_fidelity, relative_error, rf_delta, sample_disordered_couplings,
    DisorderConfig, SamplingMode,
};
use wgs_mbqc::{Gate, GateSetup, Optimizer};

#[test]
fn clamped_drop_examples() {
    assert!((clamped_drop(1.0, 0.95, 2.0 / 3.0) - 5.0).abs() < 1e-12);
    // Both below the classical threshold: no drop is attributed.
    assert_eq!(clamped_drop(0.6, 0.5, 2.0 / 3.0), 0.0);
    assert!((relative_error(0.9, 0.85, 0.4) - 50.0 / 9.0).abs() < 1e-12);
}

#[test]
fn near_sharp_measurements_are_continuous() {
    let setup = GateSetup::new(Gate::Hadamard);
    let d = rf_delta(&setup, 5.0, 1.0 - 1e-9, 4, false).unwrap().delta;
    assert!(d.abs() < 1e-6, "{d}");
}

#[test]
fn reoptimizing_never_hurts() {
    for gate in Gate::ALL {
        let setup = GateSetup::new(gate);
        for alpha in [0.5, 1.5, 3.0, 6.0] {
            for n in 1..=setup.n_measured() {
                let frozen = rf_delta(&setup, alpha, 0.75, n, false).unwrap();
                let re = rf_delta(&setup, alpha, 0.75, n, true).unwrap();
                assert!(re.fidelity_unsharp >= frozen.fidelity_unsharp - 1e-12);
            }
        }
    }
}

#[test]
fn fully_unsharp_chain_loses_information() {
    // λ = 0 on every measured qubit: outcomes carry no information.
    let setup = GateSetup::new(Gate::T);
    let r = rf_delta(&setup, 20.0, 0.0, 4, true).unwrap();
    assert!(r.fidelity_unsharp < 0.9, "{}", r.fidelity_unsharp);
    assert!(r.delta > 10.0);
}

#[test]
fn unsharp_example_values() {
    let h = GateSetup::new(Gate::Hadamard);
    let expected = [4.99, 9.61, 13.86, 17.47];
    for (n, e) in (1..=4).zip(expected) {
        let d = rf_delta(&h, 6.0, 0.85, n, false).unwrap().delta;
        assert!((d - e).abs() < 0.01, "n={n}: {d}");
    }
    let cnot = GateSetup::new(Gate::Cnot);
    let f = rf_delta(&cnot, 8.66, 0.95, 1, false).unwrap().fidelity_unsharp;
    assert!((f - 0.97).abs() < 0.005, "{f}");
}

#[test]
fn per_site_couplings_are_pair_averages() {
    let g = GateSetup::new(Gate::Hadamard).geometry;
    let bond = DisorderConfig { sigma: 0.1, ..Default::default() };
    let site = DisorderConfig { mode: SamplingMode::PerSite, ..bond.clone() };
    let hb = sample_disordered_couplings(&bond, &g, 0.0, 0).unwrap();
    let hs = sample_disordered_couplings(&site, &g, 0.0, 0).unwrap();
    assert_ne!(hb, hs);
    // Per-site: g_kl = (J_k + J_l)/2, so g_12 + g_34 = g_13 + g_24.
    let lhs = hs.coupling(1, 2) + hs.coupling(3, 4);
    let rhs = hs.coupling(1, 3) + hs.coupling(2, 4);
    assert!((lhs - rhs).abs() < 1e-14);
}

#[test]
fn quenched_average_independent_of_thread_count() {
    let setup = GateSetup::new(Gate::Cnot);
    let policy = setup.evaluate_sharp(&setup.ordered_hamiltonian(3.0), Optimizer::Affine).unwrap().policy;
    let cfg = DisorderConfig { sigma: 0.05, realizations: 64, seed: 11, ..Default::default() };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| quenched_fidelity(&setup, 3.0, &policy, &cfg).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
}

#[test]
fn stderr_shrinks_with_realizations() {
    let setup = GateSetup::new(Gate::Hadamard);
    let small = disorder_point(&setup, 4.5, &DisorderConfig { sigma: 0.1, realizations: 100, ..Default::default() })
        .unwrap();
    let large = disorder_point(&setup, 4.5, &DisorderConfig { sigma: 0.1, realizations: 1600, ..Default::default() })
        .unwrap();
    let ratio = small.quenched.stderr / large.quenched.stderr;
    assert!((2.5..6.0).contains(&ratio), "{ratio}");
}

#[test]
fn hadamard_disorder_matches_prototype_estimate() {
    let setup = GateSetup::new(Gate::Hadamard);
    let p = disorder_point(&setup, 4.5, &DisorderConfig { sigma: 0.05, realizations: 1000, ..Default::default() })
        .unwrap();
    assert!((p.delta - 1.16).abs() < 4.0 * p.delta_stderr + 0.05, "{} ± {}", p.delta, p.delta_stderr);
}
