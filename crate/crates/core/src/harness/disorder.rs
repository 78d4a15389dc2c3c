//! `δ_σ` grids: ordered optimum vs. quenched average with the ordered policy.

use serde::Serialize;

use super::config::SweepConfig;
use super::output::{fmt_f64, CsvRecord};
use super::sweep::gate_setup;
use crate::error::Result;
use crate::experiment::Optimizer;
use crate::robustness::{quenched_fidelity, relative_error, DisorderConfig, QuenchedEstimate, SamplingMode};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisorderRecord {
    pub gate: String,
    pub alpha: f64,
    pub sigma: f64,
    pub sampling: SamplingMode,
    pub realizations: usize,
    pub seed: u64,
    pub fid_ordered: f64,
    pub fid_quenched: f64,
    pub stderr: f64,
    /// Percent.
    pub delta_sigma: f64,
    pub delta_stderr: f64,
    pub f_classical: f64,
}

impl CsvRecord for DisorderRecord {
    const HEADER: &'static [&'static str] = &[
        "gate",
        "alpha",
        "sigma",
        "sampling",
        "realizations",
        "seed",
        "fid_ordered",
        "fid_quenched",
        "stderr",
        "delta_sigma",
        "delta_stderr",
        "f_classical",
    ];

    fn fields(&self) -> Vec<String> {
        let sampling = match self.sampling {
            SamplingMode::PerBond => "per-bond",
            SamplingMode::PerSite => "per-site",
        };
        vec![
            self.gate.clone(),
            fmt_f64(self.alpha),
            fmt_f64(self.sigma),
            sampling.to_string(),
            self.realizations.to_string(),
            self.seed.to_string(),
            fmt_f64(self.fid_ordered),
            fmt_f64(self.fid_quenched),
            fmt_f64(self.stderr),
            fmt_f64(self.delta_sigma),
            fmt_f64(self.delta_stderr),
            fmt_f64(self.f_classical),
        ]
    }
}

/// One row per `(gate, α, σ)`; λ and n of the config are ignored. The
/// realizations of each point run in parallel.
pub fn run_disorder(cfg: &SweepConfig) -> Result<Vec<DisorderRecord>> {
    cfg.validate()?;
    let alphas = cfg.alpha.points();
    let mut rows = Vec::new();
    for &gate in &cfg.gates {
        let setup = gate_setup(gate, cfg)?;
        for &alpha in &alphas {
            let sharp = setup.evaluate_sharp(&setup.ordered_hamiltonian(alpha), Optimizer::Affine)?;
            for &sigma in &cfg.sigmas {
                let dcfg = DisorderConfig {
                    mean: 1.0,
                    sigma,
                    realizations: cfg.realizations,
                    seed: cfg.seed,
                    mode: cfg.sampling,
                };
                let q = if sigma == 0.0 {
                    QuenchedEstimate { mean: sharp.optimized, stderr: 0.0, realizations: 0 }
                } else {
                    quenched_fidelity(&setup, alpha, &sharp.policy, &dcfg)?
                };
                rows.push(DisorderRecord {
                    gate: setup.gate_label(),
                    alpha,
                    sigma,
                    sampling: cfg.sampling,
                    realizations: q.realizations,
                    seed: cfg.seed,
                    fid_ordered: sharp.optimized,
                    fid_quenched: q.mean,
                    stderr: q.stderr,
                    delta_sigma: relative_error(sharp.optimized, q.mean, setup.f_classical()),
                    delta_stderr: q.stderr / sharp.optimized * 100.0,
                    f_classical: setup.f_classical(),
                });
            }
        }
    }
    Ok(rows)
}
