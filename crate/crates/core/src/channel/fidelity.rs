use serde::Serialize;

use super::policy::CorrectionPolicy;
use crate::error::{Error, Result};
use crate::linalg::{
    trace, unitarity_defect, validate_channel, ChannelRepr, CMatrix, OperatorBasis, CHANNEL_TOL,
};

/// Best fidelity reachable by measure-and-prepare: `2/(d+1)`.
pub fn classical_threshold(d: usize) -> f64 {
    2.0 / (d as f64 + 1.0)
}

fn check_target(target: &CMatrix, d: usize) -> Result<()> {
    if target.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "target {:?} for dimension {d}",
            target.shape()
        )));
    }
    let defect = unitarity_defect(target);
    if defect >= CHANNEL_TOL {
        return Err(Error::NonUnitaryTarget(defect));
    }
    Ok(())
}

/// `Σ_i Tr(U U_i† U† Λ(U_i))` — the basis sum shared by every fidelity form.
pub(crate) fn basis_overlap(
    ch: &ChannelRepr,
    target: &CMatrix,
    basis: &OperatorBasis,
) -> Result<f64> {
    let u_dag = target.adjoint();
    let mut total = crate::linalg::c(0.0, 0.0);
    for ui in basis.elements() {
        let out = ch.apply(ui)?;
        total += trace(&(target * ui.adjoint() * &u_dag * out));
    }
    debug_assert!(total.im.abs() < CHANNEL_TOL, "imaginary residue {}", total.im);
    Ok(total.re)
}

/// Average gate fidelity through the operator-basis reduction
/// `F̄ = (d² + Σ_i Tr(U U_i† U† Λ(U_i))) / (d²(d+1))`.
pub fn average_gate_fidelity(
    ch: &ChannelRepr,
    target: &CMatrix,
    basis: &OperatorBasis,
) -> Result<f64> {
    let d = basis.dim();
    if ch.d_in() != d || ch.d_out() != d {
        return Err(Error::DimensionMismatch(format!(
            "channel {}→{} against basis dimension {d}",
            ch.d_in(),
            ch.d_out()
        )));
    }
    check_target(target, d)?;
    let d2 = (d * d) as f64;
    let f = (d2 + basis_overlap(ch, target, basis)?) / (d2 * (d as f64 + 1.0));
    if d == 2 && cfg!(debug_assertions) && validate_channel(ch).trace_preserving {
        let alt = pauli_sum_fidelity(ch, target)?;
        debug_assert!((alt - f).abs() < 1e-10, "Pauli-sum form {alt} vs {f}");
    }
    Ok(f)
}

/// Qubit form `1/2 + (1/12) Σ_{σ ∈ {x,y,z}} Tr(U σ U† Λ(σ))`, valid for
/// trace-preserving channels.
pub fn pauli_sum_fidelity(ch: &ChannelRepr, target: &CMatrix) -> Result<f64> {
    if ch.d_in() != 2 || ch.d_out() != 2 {
        return Err(Error::DimensionMismatch("Pauli-sum form needs a qubit channel".into()));
    }
    check_target(target, 2)?;
    let u_dag = target.adjoint();
    let paulis = [crate::linalg::pauli_x(), crate::linalg::pauli_y(), crate::linalg::pauli_z()];
    let mut sum = 0.0;
    for s in &paulis {
        sum += trace(&(target * s * &u_dag * ch.apply(s)?)).re;
    }
    Ok(0.5 + sum / 12.0)
}

/// One evaluated setting.
#[derive(Clone, Debug, Serialize)]
pub struct FidelityReport {
    pub gate: String,
    pub alpha: f64,
    pub lambda: f64,
    pub n: usize,
    pub fidelity: f64,
    pub policy: CorrectionPolicy,
    pub f_classical: f64,
}
