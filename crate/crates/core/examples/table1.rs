//! Threshold extraction (F_max, α_max, α_s, α_th) for all four gates, next to
//! the published values.

use wgs_mbqc::harness::{format_table, table1_report, Table1Options};

fn main() -> wgs_mbqc::Result<()> {
    let report = table1_report(&Table1Options::default())?;
    print!("{}", format_table(&report));
    Ok(())
}
