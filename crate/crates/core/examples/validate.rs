//! Built-in self-checks: CPTP, completeness, hierarchy, NN exactness, closed
//! forms and stabilizers.

fn main() -> wgs_mbqc::Result<()> {
    let checks = wgs_mbqc::harness::run_validation()?;
    for c in &checks {
        println!("{} {}  ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
