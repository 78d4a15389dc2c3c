use std::collections::BTreeMap;

use super::policy::{AffineCoefficients, CorrectionPolicy, PauliString};
use crate::error::{Error, Result};
use crate::linalg::{trace, ChannelRepr, CMatrix, OperatorBasis};
use crate::wgs::{ConditionalMap, Outcome};

/// Largest affine search space we are willing to enumerate.
const MAX_AFFINE_BITS: usize = 24;

/// Comparisons closer than this keep the earlier candidate.
const TIE_TOL: f64 = 1e-12;

/// Kraus set `{P(s) · V_{s,β}}`.
pub fn assemble_channel(branches: &[ConditionalMap], policy: &CorrectionPolicy) -> Result<ChannelRepr> {
    let kraus = branches
        .iter()
        .map(|m| {
            let p = policy.correction(m.branch.outcome)?;
            if 1usize << p.n_qubits != m.matrix.nrows() {
                return Err(Error::DimensionMismatch(format!(
                    "{}-qubit correction on a {}-row map",
                    p.n_qubits,
                    m.matrix.nrows()
                )));
            }
            Ok(p.matrix() * &m.matrix)
        })
        .collect::<Result<Vec<_>>>()?;
    ChannelRepr::from_kraus(kraus)
}

/// Per-outcome, per-correction contributions to the basis sum.
///
/// The average fidelity is linear in the channel, and the channel is a sum
/// over outcomes each carrying its own correction. Entry `(s, P)` holds
/// `Σ_β Σ_i Tr(U U_i† U† · P V_{s,β} U_i V_{s,β}† P†)`, so any policy's
/// fidelity is `(d² + Σ_s table[s][P(s)]) / (d²(d+1))`.
#[derive(Clone, Debug)]
pub struct ContributionTable {
    d: usize,
    n_outputs: usize,
    n_measured: usize,
    values: Vec<Vec<f64>>,
}

impl ContributionTable {
    pub fn new(branches: &[ConditionalMap], target: &CMatrix, basis: &OperatorBasis) -> Result<Self> {
        let d = basis.dim();
        let first = branches.first().ok_or(Error::EmptyChannel)?;
        if branches.iter().any(|m| m.matrix.shape() != (d, d)) || target.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "branch maps {:?} against dimension {d}",
                first.matrix.shape()
            )));
        }
        let n_outputs = d.trailing_zeros() as usize;

        let mut grouped: BTreeMap<Outcome, Vec<&CMatrix>> = BTreeMap::new();
        for m in branches {
            grouped.entry(m.branch.outcome).or_default().push(&m.matrix);
        }
        let n_outcomes = grouped.len();
        if !n_outcomes.is_power_of_two() || grouped.keys().any(|s| s.index() >= n_outcomes) {
            return Err(Error::InvalidPlan("branch outcomes do not cover a full record set".into()));
        }
        let n_measured = n_outcomes.trailing_zeros() as usize;

        let u_dag = target.adjoint();
        let conj_basis: Vec<CMatrix> =
            basis.elements().iter().map(|ui| target * ui.adjoint() * &u_dag).collect();
        let paulis: Vec<(CMatrix, CMatrix)> = PauliString::all(n_outputs)
            .map(|p| {
                let m = p.matrix();
                let md = m.adjoint();
                (m, md)
            })
            .collect();

        let values = grouped
            .values()
            .map(|maps| {
                let w: Vec<CMatrix> = basis
                    .elements()
                    .iter()
                    .map(|ui| {
                        maps.iter().fold(CMatrix::zeros(d, d), |acc, v| acc + *v * ui * v.adjoint())
                    })
                    .collect();
                paulis
                    .iter()
                    .map(|(p, pd)| {
                        conj_basis
                            .iter()
                            .zip(&w)
                            .map(|(a, wi)| trace(&(a * p * wi * pd)).re)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { d, n_outputs, n_measured, values })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n_measured(&self) -> usize {
        self.n_measured
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn value(&self, s: Outcome, p: PauliString) -> f64 {
        self.values[s.index()][p.code()]
    }

    fn to_fidelity(&self, total: f64) -> f64 {
        let d = self.d as f64;
        (d * d + total) / (d * d * (d + 1.0))
    }

    pub fn fidelity(&self, policy: &CorrectionPolicy) -> Result<f64> {
        let mut total = 0.0;
        for s in Outcome::all(self.n_measured) {
            total += self.value(s, policy.correction(s)?);
        }
        Ok(self.to_fidelity(total))
    }

    /// Independent best Pauli per outcome; ties keep the lexicographically
    /// first string.
    pub fn optimize_per_outcome(&self) -> (CorrectionPolicy, f64) {
        let mut total = 0.0;
        let table = self
            .values
            .iter()
            .map(|row| {
                let mut best = 0;
                for (code, &v) in row.iter().enumerate() {
                    if v > row[best] + TIE_TOL {
                        best = code;
                    }
                }
                total += row[best];
                PauliString::from_code(self.n_outputs, best)
            })
            .collect();
        let policy = CorrectionPolicy::per_outcome(self.n_measured, table).expect("full table");
        (policy, self.to_fidelity(total))
    }

    /// Exhaustive search over all affine exponent assignments.
    pub fn optimize_affine(&self) -> Result<(CorrectionPolicy, f64)> {
        let bits = AffineCoefficients::bit_count(self.n_outputs, self.n_measured);
        if bits > MAX_AFFINE_BITS {
            return Err(Error::InvalidConfig(format!(
                "affine search over 2^{bits} candidates is too large"
            )));
        }
        let outcomes: Vec<Outcome> = Outcome::all(self.n_measured).collect();
        let mut best_total = f64::NEG_INFINITY;
        let mut best_index = 0;
        for index in 0..1u64 << bits {
            let coeffs = AffineCoefficients::from_index(self.n_outputs, self.n_measured, index);
            let total: f64 = outcomes.iter().map(|&s| self.value(s, coeffs.pauli(s))).sum();
            if total > best_total + TIE_TOL {
                best_total = total;
                best_index = index;
            }
        }
        let coeffs = AffineCoefficients::from_index(self.n_outputs, self.n_measured, best_index);
        Ok((CorrectionPolicy::affine(coeffs), self.to_fidelity(best_total)))
    }
}

pub fn optimize_per_outcome(
    branches: &[ConditionalMap],
    target: &CMatrix,
    basis: &OperatorBasis,
) -> Result<(CorrectionPolicy, f64)> {
    Ok(ContributionTable::new(branches, target, basis)?.optimize_per_outcome())
}

pub fn optimize_affine(
    branches: &[ConditionalMap],
    target: &CMatrix,
    basis: &OperatorBasis,
) -> Result<(CorrectionPolicy, f64)> {
    ContributionTable::new(branches, target, basis)?.optimize_affine()
}

/// Fidelity with the cluster-state corrections held fixed.
pub fn restricted_fidelity(
    branches: &[ConditionalMap],
    target: &CMatrix,
    basis: &OperatorBasis,
    pmbqc_policy: &CorrectionPolicy,
) -> Result<f64> {
    ContributionTable::new(branches, target, basis)?.fidelity(pmbqc_policy)
}
