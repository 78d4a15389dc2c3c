//! The CNOT layout is two-dimensional, so "distance" is ambiguous. Each
//! convention is scored against the published CNOT row.

use wgs_mbqc::harness::{calibrate_cnot, ThresholdOptions};

fn main() -> wgs_mbqc::Result<()> {
    let cal = calibrate_cnot(&ThresholdOptions::default())?;
    for c in &cal.candidates {
        println!("{c:?}");
    }
    println!("selected: {}", cal.selected);
    Ok(())
}
