//! Optimized vs. restricted (cluster-state corrections) fidelity over α.
//!
//!     cargo run --release --example fidelity_curve -- T

use wgs_mbqc::Gate;
use wgs_mbqc::GateSetup;

fn main() -> wgs_mbqc::Result<()> {
    let gate: Gate = std::env::args().nth(1).as_deref().unwrap_or("H").parse()?;
    let setup = GateSetup::new(gate);
    let fc = setup.f_classical();
    println!("# {} (F_c = {fc:.4})", setup.gate_label());
    println!("alpha    F_opt    F_restr");
    for i in 0..=40 {
        let alpha = 0.25 * i as f64;
        let o = setup.optimized_fidelity(alpha)?;
        let r = setup.restricted_fidelity(alpha)?;
        let mark = if o > fc + 1e-12 { "" } else { "  <= F_c" };
        println!("{alpha:5.2}  {o:.5}  {r:.5}{mark}");
    }
    Ok(())
}
