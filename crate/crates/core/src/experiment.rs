//! Gate + resource + measurement pattern bundled together, with the common
//! evaluations (optimized, restricted and frozen-policy fidelities).

use serde::{Deserialize, Serialize};

use crate::channel::{classical_threshold, ContributionTable, CorrectionPolicy};
use crate::error::Result;
use crate::gates::{measurement_plan, Gate, GateSpec};
use crate::linalg::OperatorBasis;
use crate::wgs::{
    all_branches, ordered_couplings, ConditionalMap, DistanceMode, Falloff, Geometry,
    MeasurementPlan, PhaseHamiltonian, DEFAULT_TIME,
};

/// Which correction family counts as "optimized".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimizer {
    /// `σ_x^{c₀+Σc_k s_k} σ_z^{d₀+Σd_k s_k}` per output qubit.
    #[default]
    Affine,
    /// Unconstrained Pauli choice per outcome (an upper bound).
    PerOutcome,
}

#[derive(Clone, Debug)]
pub struct GateSetup {
    pub spec: GateSpec,
    pub geometry: Geometry,
    pub plan: MeasurementPlan,
    pub basis: OperatorBasis,
    /// Evolution time; the cluster state forms at `t = π`.
    pub time: f64,
}

/// Evaluation of one `(gate, α)` point with projective measurements.
#[derive(Clone, Debug)]
pub struct SharpEvaluation {
    pub optimized: f64,
    pub policy: CorrectionPolicy,
    pub restricted: f64,
}

impl GateSetup {
    /// Default resource: the five-qubit chain, or the CNOT layout with
    /// Euclidean distances.
    pub fn new(gate: Gate) -> Self {
        Self::with_distance_mode(gate, DistanceMode::Euclidean)
    }

    pub fn with_distance_mode(gate: Gate, cnot_mode: DistanceMode) -> Self {
        Self::from_spec(GateSpec::named(gate), cnot_mode).expect("named gates have plans")
    }

    pub fn from_spec(spec: GateSpec, cnot_mode: DistanceMode) -> Result<Self> {
        let geometry = spec.geometry(cnot_mode);
        let plan = measurement_plan(&spec)?;
        let basis = OperatorBasis::new(spec.dim)?;
        Ok(Self { spec, geometry, plan, basis, time: DEFAULT_TIME })
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.time = t;
        self
    }

    pub fn gate_label(&self) -> String {
        self.spec.label()
    }

    pub fn f_classical(&self) -> f64 {
        classical_threshold(self.spec.dim)
    }

    pub fn n_measured(&self) -> usize {
        self.plan.len()
    }

    pub fn ordered_hamiltonian(&self, falloff: impl Into<Falloff>) -> PhaseHamiltonian {
        ordered_couplings(&self.geometry, falloff).with_time(self.time)
    }

    /// All conditional maps under `h`, with the first `n` measurements at
    /// sharpness `lambda`.
    pub fn branches(&self, h: &PhaseHamiltonian, lambda: f64, n: usize) -> Result<Vec<ConditionalMap>> {
        let plan = self.plan.with_unsharpness(lambda, n)?;
        all_branches(&self.geometry, h, &plan)
    }

    pub fn table(&self, h: &PhaseHamiltonian, lambda: f64, n: usize) -> Result<ContributionTable> {
        ContributionTable::new(&self.branches(h, lambda, n)?, &self.spec.target, &self.basis)
    }

    pub fn pmbqc_policy(&self) -> CorrectionPolicy {
        self.spec.pmbqc_policy()
    }

    pub fn evaluate_sharp(&self, h: &PhaseHamiltonian, optimizer: Optimizer) -> Result<SharpEvaluation> {
        let table = self.table(h, 1.0, 0)?;
        let (policy, optimized) = match optimizer {
            Optimizer::Affine => table.optimize_affine()?,
            Optimizer::PerOutcome => table.optimize_per_outcome(),
        };
        let restricted = table.fidelity(&self.pmbqc_policy())?;
        Ok(SharpEvaluation { optimized, policy, restricted })
    }

    /// Optimized sharp fidelity for uniform couplings at fall-off `alpha`.
    pub fn optimized_fidelity(&self, alpha: impl Into<Falloff>) -> Result<f64> {
        Ok(self.evaluate_sharp(&self.ordered_hamiltonian(alpha), Optimizer::Affine)?.optimized)
    }

    pub fn restricted_fidelity(&self, alpha: impl Into<Falloff>) -> Result<f64> {
        self.table(&self.ordered_hamiltonian(alpha), 1.0, 0)?.fidelity(&self.pmbqc_policy())
    }

    /// Fidelity of the (possibly unsharp, possibly disordered) channel with
    /// a frozen policy.
    pub fn fidelity_with_policy(
        &self,
        h: &PhaseHamiltonian,
        lambda: f64,
        n: usize,
        policy: &CorrectionPolicy,
    ) -> Result<f64> {
        self.table(h, lambda, n)?.fidelity(policy)
    }
}
