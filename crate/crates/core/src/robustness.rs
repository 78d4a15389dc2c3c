//! Robustness of the gate fidelity against unsharp measurements and against
//! Gaussian disorder in the couplings.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::CorrectionPolicy;
use crate::error::{Error, Result};
use crate::experiment::{GateSetup, Optimizer};
use crate::wgs::{couplings, Falloff, Geometry, PhaseHamiltonian, Strength};

#[derive(Clone, Debug, Serialize)]
pub struct RobustnessRecord {
    pub gate: String,
    pub alpha: f64,
    pub lambda: f64,
    pub n: usize,
    /// Sharp fidelity with the optimized policy.
    pub fidelity_sharp: f64,
    /// Unsharp fidelity with the sharp-optimized (or re-optimized) policy.
    pub fidelity_unsharp: f64,
    /// Percentage drop of the threshold-clamped fidelity.
    pub delta: f64,
}

/// `[max(F₁, F_c) − max(F_λ, F_c)] / max(F₁, F_c) × 100`.
pub fn clamped_drop(sharp: f64, degraded: f64, f_classical: f64) -> f64 {
    let top = sharp.max(f_classical);
    (top - degraded.max(f_classical)) / top * 100.0
}

/// `Δⁿ` at `(α, λ, n)`. The unsharp channel reuses the corrections
/// optimized for projective measurements at the same `α` unless
/// `reoptimize` is set.
pub fn rf_delta(
    setup: &GateSetup,
    alpha: impl Into<Falloff>,
    lambda: f64,
    n: usize,
    reoptimize: bool,
) -> Result<RobustnessRecord> {
    let max = setup.n_measured();
    if n == 0 || n > max {
        return Err(Error::InvalidUnsharpCount { n, max });
    }
    let falloff = alpha.into();
    let h = setup.ordered_hamiltonian(falloff);
    let sharp = setup.evaluate_sharp(&h, Optimizer::Affine)?;
    let table = setup.table(&h, lambda, n)?;
    let fidelity_unsharp = if reoptimize {
        table.optimize_affine()?.1
    } else {
        table.fidelity(&sharp.policy)?
    };
    Ok(RobustnessRecord {
        gate: setup.gate_label(),
        alpha: falloff_value(falloff),
        lambda,
        n,
        fidelity_sharp: sharp.optimized,
        fidelity_unsharp,
        delta: clamped_drop(sharp.optimized, fidelity_unsharp, setup.f_classical()),
    })
}

pub(crate) fn falloff_value(f: Falloff) -> f64 {
    match f {
        Falloff::Power(a) => a,
        Falloff::NearestNeighbour => f64::INFINITY,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Each pair draws its own `J_kl`.
    #[default]
    PerBond,
    /// Each site draws `J_k`; pairs use `(J_k + J_l)/2`.
    PerSite,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisorderConfig {
    pub mean: f64,
    pub sigma: f64,
    pub realizations: usize,
    pub seed: u64,
    pub mode: SamplingMode,
}

impl Default for DisorderConfig {
    fn default() -> Self {
        Self { mean: 1.0, sigma: 0.0, realizations: 1000, seed: 0x5eed, mode: SamplingMode::PerBond }
    }
}

impl DisorderConfig {
    pub fn with_sigma(sigma: f64) -> Self {
        Self { sigma, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidConfig(format!("σ = {} must be ≥ 0", self.sigma)));
        }
        if self.realizations == 0 {
            return Err(Error::InvalidConfig("need at least one realization".into()));
        }
        Ok(())
    }

    /// Generator for realization `r`: one ChaCha stream per realization, so
    /// draws do not depend on evaluation order.
    pub fn rng(&self, realization: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(realization);
        rng
    }

    /// Raw coupling prefactors `J` for realization `r` (0-based `N × N`).
    pub fn sample_strengths(&self, n_qubits: usize, realization: u64) -> Result<Vec<Vec<f64>>> {
        self.validate()?;
        let normal = Normal::new(self.mean, self.sigma)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let mut rng = self.rng(realization);
        let mut j = vec![vec![0.0; n_qubits]; n_qubits];
        match self.mode {
            SamplingMode::PerBond => {
                for k in 0..n_qubits {
                    for l in k + 1..n_qubits {
                        let v = normal.sample(&mut rng);
                        j[k][l] = v;
                        j[l][k] = v;
                    }
                }
            }
            SamplingMode::PerSite => {
                let site: Vec<f64> = (0..n_qubits).map(|_| normal.sample(&mut rng)).collect();
                for k in 0..n_qubits {
                    for l in k + 1..n_qubits {
                        let v = 0.5 * (site[k] + site[l]);
                        j[k][l] = v;
                        j[l][k] = v;
                    }
                }
            }
        }
        Ok(j)
    }
}

/// Disordered couplings `g_kl = J_kl d(k,l)^{−α}` for realization `r`.
pub fn sample_disordered_couplings(
    cfg: &DisorderConfig,
    geom: &Geometry,
    alpha: f64,
    realization: u64,
) -> Result<PhaseHamiltonian> {
    let j = cfg.sample_strengths(geom.n_qubits(), realization)?;
    couplings(geom, Falloff::Power(alpha), &Strength::PerPair(j))
}

/// Compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(self) -> f64 {
        self.sum
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut k = KahanSum::default();
        for x in iter {
            k.add(x);
        }
        k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuenchedEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub realizations: usize,
}

/// Monte Carlo quenched average of the fidelity with a frozen policy.
pub fn quenched_fidelity(
    setup: &GateSetup,
    alpha: f64,
    policy: &CorrectionPolicy,
    cfg: &DisorderConfig,
) -> Result<QuenchedEstimate> {
    quenched_fidelity_unsharp(setup, alpha, 1.0, 0, policy, cfg)
}

/// As [`quenched_fidelity`], with the first `n` measurements at sharpness `lambda`.
pub fn quenched_fidelity_unsharp(
    setup: &GateSetup,
    alpha: f64,
    lambda: f64,
    n: usize,
    policy: &CorrectionPolicy,
    cfg: &DisorderConfig,
) -> Result<QuenchedEstimate> {
    cfg.validate()?;
    let samples: Vec<f64> = (0..cfg.realizations as u64)
        .into_par_iter()
        .map(|r| {
            let h = sample_disordered_couplings(cfg, &setup.geometry, alpha, r)?.with_time(setup.time);
            setup.fidelity_with_policy(&h, lambda, n, policy)
        })
        .collect::<Result<_>>()?;
    Ok(summarize(&samples))
}

pub fn summarize(samples: &[f64]) -> QuenchedEstimate {
    let r = samples.len();
    let mean = samples.iter().copied().collect::<KahanSum>().value() / r as f64;
    let stderr = if r > 1 {
        let var = samples.iter().map(|x| (x - mean).powi(2)).collect::<KahanSum>().value()
            / (r - 1) as f64;
        (var / r as f64).sqrt()
    } else {
        0.0
    };
    QuenchedEstimate { mean, stderr, realizations: r }
}

/// `δ_σ = [max(F̄, F_c) − max(⟨F̄⟩^σ, F_c)] / F̄ × 100`.
pub fn relative_error(ordered: f64, quenched: f64, f_classical: f64) -> f64 {
    (ordered.max(f_classical) - quenched.max(f_classical)) / ordered * 100.0
}

#[derive(Clone, Debug, Serialize)]
pub struct DisorderPoint {
    pub gate: String,
    pub alpha: f64,
    pub sigma: f64,
    pub ordered: f64,
    pub quenched: QuenchedEstimate,
    /// `δ_σ` in percent.
    pub delta: f64,
    /// Standard error of `δ_σ` in percentage points.
    pub delta_stderr: f64,
}

/// Ordered optimum, quenched average with the ordered policy, and `δ_σ`.
pub fn disorder_point(setup: &GateSetup, alpha: f64, cfg: &DisorderConfig) -> Result<DisorderPoint> {
    let sharp = setup.evaluate_sharp(&setup.ordered_hamiltonian(alpha), Optimizer::Affine)?;
    let quenched = quenched_fidelity(setup, alpha, &sharp.policy, cfg)?;
    Ok(DisorderPoint {
        gate: setup.gate_label(),
        alpha,
        sigma: cfg.sigma,
        ordered: sharp.optimized,
        quenched,
        delta: relative_error(sharp.optimized, quenched.mean, setup.f_classical()),
        delta_stderr: quenched.stderr / sharp.optimized * 100.0,
    })
}
