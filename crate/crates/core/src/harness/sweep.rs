//! Grid sweeps over `(gate, α, λ, n, σ)`.

use rayon::prelude::*;
use serde::Serialize;

use super::config::SweepConfig;
use super::output::{fmt_f64, fmt_opt, CsvRecord};
use crate::error::{Error, Result};
use crate::experiment::{GateSetup, Optimizer, SharpEvaluation};
use crate::gates::{Gate, GateSpec};
use crate::robustness::{clamped_drop, quenched_fidelity_unsharp, DisorderConfig};

/// One output row. `n = 0` marks projective measurements (`λ = 1`), where
/// the unsharp count is irrelevant. Quantities that were not computed are
/// `None` (empty CSV field / JSON `null`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub gate: String,
    pub alpha: f64,
    pub lambda: f64,
    pub n: usize,
    pub sigma: f64,
    pub fid_opt: Option<f64>,
    pub fid_restricted: Option<f64>,
    pub fid_quenched: Option<f64>,
    pub stderr: Option<f64>,
    pub delta_rf: Option<f64>,
    pub f_classical: f64,
}

impl CsvRecord for SweepRecord {
    const HEADER: &'static [&'static str] = &[
        "gate",
        "alpha",
        "lambda",
        "n",
        "sigma",
        "fid_opt",
        "fid_restricted",
        "fid_quenched",
        "stderr",
        "delta_rf",
        "f_classical",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.gate.clone(),
            fmt_f64(self.alpha),
            fmt_f64(self.lambda),
            self.n.to_string(),
            fmt_f64(self.sigma),
            fmt_opt(self.fid_opt),
            fmt_opt(self.fid_restricted),
            fmt_opt(self.fid_quenched),
            fmt_opt(self.stderr),
            fmt_opt(self.delta_rf),
            fmt_f64(self.f_classical),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepFailure {
    pub gate: String,
    pub alpha: f64,
    pub lambda: f64,
    pub n: usize,
    pub sigma: f64,
    pub error: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub failures: Vec<SweepFailure>,
}

pub fn gate_setup(gate: Gate, cfg: &SweepConfig) -> Result<GateSetup> {
    Ok(GateSetup::from_spec(GateSpec::named(gate), cfg.distance_mode)?.with_time(cfg.time))
}

/// Runs the grid. Points are independent and evaluated in parallel; rows
/// come back in grid order (gate, α, λ, n, σ). Points that fail are
/// reported in `failures` rather than aborting the sweep.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let alphas = cfg.alpha.points();
    let setups = cfg.gates.iter().map(|&g| gate_setup(g, cfg)).collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(usize, f64)> =
        (0..setups.len()).flat_map(|g| alphas.iter().map(move |&a| (g, a))).collect();

    let chunks: Vec<SweepOutput> = tasks
        .par_iter()
        .map(|&(g, alpha)| sweep_point(&setups[g], alpha, cfg))
        .collect();

    let mut out = SweepOutput::default();
    for c in chunks {
        out.records.extend(c.records);
        out.failures.extend(c.failures);
    }
    Ok(out)
}

/// All `(λ, n, σ)` rows for one `(gate, α)`; the sharp optimum is shared.
fn sweep_point(setup: &GateSetup, alpha: f64, cfg: &SweepConfig) -> SweepOutput {
    let mut out = SweepOutput::default();
    let gate = setup.gate_label();
    let fail = |lambda, n, sigma, e: &Error| SweepFailure {
        gate: gate.clone(),
        alpha,
        lambda,
        n,
        sigma,
        error: e.to_string(),
    };

    let sharp = match setup.evaluate_sharp(&setup.ordered_hamiltonian(alpha), Optimizer::Affine) {
        Ok(s) => s,
        Err(e) => {
            out.failures.push(fail(f64::NAN, 0, f64::NAN, &e));
            return out;
        }
    };
    let all_n: Vec<usize> = (1..=setup.n_measured()).collect();
    for &lambda in &cfg.lambdas {
        let ns: &[usize] = if lambda == 1.0 { &[0] } else { cfg.ns.as_deref().unwrap_or(&all_n) };
        for &n in ns {
            for &sigma in &cfg.sigmas {
                match point(setup, alpha, lambda, n, sigma, &sharp, cfg) {
                    Ok(r) => out.records.push(r),
                    Err(e) => out.failures.push(fail(lambda, n, sigma, &e)),
                }
            }
        }
    }
    out
}

fn point(
    setup: &GateSetup,
    alpha: f64,
    lambda: f64,
    n: usize,
    sigma: f64,
    sharp: &SharpEvaluation,
    cfg: &SweepConfig,
) -> Result<SweepRecord> {
    let f_c = setup.f_classical();
    let (fid_opt, fid_restricted) = if lambda == 1.0 {
        (sharp.optimized, sharp.restricted)
    } else {
        let max = setup.n_measured();
        if n == 0 || n > max {
            return Err(Error::InvalidUnsharpCount { n, max });
        }
        let table = setup.table(&setup.ordered_hamiltonian(alpha), lambda, n)?;
        (table.fidelity(&sharp.policy)?, table.fidelity(&setup.pmbqc_policy())?)
    };
    let (fid_quenched, stderr) = if sigma > 0.0 {
        let dcfg = DisorderConfig {
            mean: 1.0,
            sigma,
            realizations: cfg.realizations,
            seed: cfg.seed,
            mode: cfg.sampling,
        };
        let q = quenched_fidelity_unsharp(setup, alpha, lambda, n, &sharp.policy, &dcfg)?;
        (Some(q.mean), Some(q.stderr))
    } else {
        (None, None)
    };
    Ok(SweepRecord {
        gate: setup.gate_label(),
        alpha,
        lambda,
        n,
        sigma,
        fid_opt: Some(fid_opt),
        fid_restricted: Some(fid_restricted),
        fid_quenched,
        stderr,
        delta_rf: Some(clamped_drop(sharp.optimized, fid_opt, f_c)),
        f_classical: f_c,
    })
}
