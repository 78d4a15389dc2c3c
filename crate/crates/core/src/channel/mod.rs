//! Corrected MBQC channels, average gate fidelity and corrective-unitary
//! search.

pub mod fidelity;
pub mod optimize;
pub mod policy;

pub use fidelity::{average_gate_fidelity, classical_threshold, pauli_sum_fidelity, FidelityReport};
pub use optimize::{
    assemble_channel, optimize_affine, optimize_per_outcome, restricted_fidelity, ContributionTable,
};
pub use policy::{AffineCoefficients, CorrectionPolicy, PauliString, PolicyMode};
