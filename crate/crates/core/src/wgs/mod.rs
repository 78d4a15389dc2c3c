//! Weighted-graph-state engine: geometries, power-law phase couplings,
//! diagonal evolution and measurement-branch contraction.

pub mod engine;
pub mod geometry;
pub mod hamiltonian;
pub mod plan;
pub mod stabilizer;

pub use engine::{
    all_branches, completeness_defect, conditional_map, evolve_diagonal, plus_state, prepare_register,
    ConditionalMap,
};
pub use geometry::{DistanceMode, Geometry, Preset, MAX_QUBITS};
pub use hamiltonian::{couplings, ordered_couplings, Falloff, PhaseHamiltonian, Strength, DEFAULT_TIME};
pub use plan::{branch_bras, eta_bra, Branch, BraFactor, MeasuredQubit, MeasurementPlan, Outcome, SignRule};
pub use stabilizer::{check_cluster_stabilizers, StabilizerReport};
