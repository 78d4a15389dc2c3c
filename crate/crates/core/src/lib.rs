//! Exact simulation of measurement-based single- and two-qubit gates on
//! weighted graph states prepared by power-law Ising evolution.
//!
//! The pipeline is: geometry → phase couplings → diagonal evolution →
//! branch-wise contraction into conditional maps → corrected channel →
//! average gate fidelity, optionally with unsharp measurements or
//! disordered couplings.

// NaN-rejecting guards are written as negated comparisons on purpose, and the
// coupling matrices are indexed symmetrically.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod channel;
pub mod error;
pub mod experiment;
pub mod gates;
pub mod harness;
pub mod linalg;
pub mod robustness;
pub mod wgs;

pub use error::{Error, Result};
pub use experiment::{GateSetup, Optimizer, SharpEvaluation};
pub use gates::{Gate, GateSpec};
