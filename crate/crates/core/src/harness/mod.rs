//! Sweeps, threshold extraction, table reproduction and machine-readable
//! output. The `wgs-mbqc` binary is a thin layer over this module.

pub mod config;
pub mod disorder;
pub mod output;
pub mod sweep;
pub mod table1;
pub mod thresholds;
pub mod validate;

pub use config::{AlphaGrid, OutputFormat, SweepConfig};
pub use disorder::{run_disorder, DisorderRecord};
pub use output::{emit_records, write_csv, write_json, write_records, CsvRecord};
pub use sweep::{run_sweep, SweepFailure, SweepOutput, SweepRecord};
pub use table1::{calibrate_cnot, format_table, table1_report, Table1Options, Table1Report};
pub use thresholds::{fidelity_curve, thresholds, ThresholdOptions, ThresholdReport, FT_ACCURACY};
pub use validate::{run_validation, Check};
