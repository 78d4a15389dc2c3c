//! Target gates, their measurement patterns with feed-forward, and closed-form
//! fidelities under the cluster-state (pMBQC) corrections.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::policy::{AffineCoefficients, CorrectionPolicy};
use crate::error::{Error, Result};
use crate::linalg::{c, identity, pauli_x, pauli_z, CMatrix, C64};
use crate::wgs::{DistanceMode, Geometry, MeasuredQubit, MeasurementPlan, SignRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gate {
    #[serde(rename = "H")]
    Hadamard,
    /// `R_z(π/2)`, the π/2-phase gate.
    #[serde(rename = "S")]
    PhaseHalfPi,
    #[serde(rename = "T")]
    T,
    #[serde(rename = "CNOT")]
    Cnot,
}

impl Gate {
    pub const ALL: [Gate; 4] = [Gate::Hadamard, Gate::PhaseHalfPi, Gate::T, Gate::Cnot];
    pub const SINGLE_QUBIT: [Gate; 3] = [Gate::Hadamard, Gate::PhaseHalfPi, Gate::T];

    pub fn as_str(self) -> &'static str {
        match self {
            Gate::Hadamard => "H",
            Gate::PhaseHalfPi => "S",
            Gate::T => "T",
            Gate::Cnot => "CNOT",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Gate::Cnot => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" | "hadamard" => Ok(Gate::Hadamard),
            "s" | "phase" | "pi/2-phase" | "rz(pi/2)" | "rz-pi2" => Ok(Gate::PhaseHalfPi),
            "t" => Ok(Gate::T),
            "cnot" | "cx" => Ok(Gate::Cnot),
            _ => Err(Error::UnknownGate(s.to_string())),
        }
    }
}

/// Which gate a spec describes; `Rotation` is an arbitrary `U(θ₁..θ₄)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    Named(Gate),
    Rotation,
}

#[derive(Clone, Debug)]
pub struct GateSpec {
    pub kind: GateKind,
    pub dim: usize,
    pub target: CMatrix,
    /// `(θ₁, θ₂, θ₃, θ₄)` for single-qubit gates.
    pub angles: Option<[f64; 4]>,
}

fn rot(pauli: &CMatrix, theta: f64) -> CMatrix {
    identity(2) * c((theta / 2.0).cos(), 0.0) - pauli * c(0.0, (theta / 2.0).sin())
}

/// `e^{−iθ₁} R_x(θ₂) R_z(θ₃) R_x(θ₄)` with `R_j(θ) = e^{−iθσ_j/2}`.
pub fn rotation_matrix(angles: [f64; 4]) -> CMatrix {
    let [t1, t2, t3, t4] = angles;
    let (x, z) = (pauli_x(), pauli_z());
    rot(&x, t2) * rot(&z, t3) * rot(&x, t4) * C64::from_polar(1.0, -t1)
}

/// CNOT on `(target, control)` ordering: `|t, c⟩ ↦ |t ⊕ c, c⟩`. The first
/// tensor factor is the target (qubit 1 in, qubit 3 out); the second is the
/// control (qubit 4, shared by input and output).
pub fn cnot_matrix() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for t in 0..2 {
        for ctl in 0..2 {
            m[(2 * (t ^ ctl) + ctl, 2 * t + ctl)] = c(1.0, 0.0);
        }
    }
    m
}

impl GateSpec {
    pub fn named(gate: Gate) -> Self {
        let angles = match gate {
            Gate::Hadamard => Some([PI / 2.0; 4]),
            Gate::PhaseHalfPi => Some([0.0, 0.0, PI / 2.0, 0.0]),
            Gate::T => Some([0.0, 0.0, PI / 4.0, 0.0]),
            Gate::Cnot => None,
        };
        let target = match angles {
            Some(a) => rotation_matrix(a),
            None => cnot_matrix(),
        };
        Self { kind: GateKind::Named(gate), dim: gate.dim(), target, angles }
    }

    pub fn rotation(angles: [f64; 4]) -> Self {
        Self { kind: GateKind::Rotation, dim: 2, target: rotation_matrix(angles), angles: Some(angles) }
    }

    pub fn gate(&self) -> Option<Gate> {
        match self.kind {
            GateKind::Named(g) => Some(g),
            GateKind::Rotation => None,
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            GateKind::Named(g) => g.as_str().to_string(),
            GateKind::Rotation => {
                let a = self.angles.unwrap_or_default();
                format!("U({:.4},{:.4},{:.4},{:.4})", a[0], a[1], a[2], a[3])
            }
        }
    }

    /// Resource geometry; the CNOT layout takes the given distance mode.
    pub fn geometry(&self, cnot_mode: DistanceMode) -> Geometry {
        match self.kind {
            GateKind::Named(Gate::Cnot) => Geometry::cnot_t(cnot_mode),
            _ => Geometry::single_gate_chain(DistanceMode::LabelChain),
        }
    }

    /// Cluster-state byproduct correction for this gate's plan.
    pub fn pmbqc_policy(&self) -> CorrectionPolicy {
        // Measurement positions: s₁..s₄ are bits 0..3 (single qubit), s₁, s₂ for CNOT.
        match self.kind {
            GateKind::Named(Gate::Cnot) => {
                // σ_z^{(3) s₁} σ_x^{(3) s₂} σ_z^{(4) s₁}
                let coeffs = AffineCoefficients::new(2, vec![0b100, 0b000], vec![0b010, 0b010]);
                CorrectionPolicy::fixed_pmbqc(coeffs)
            }
            GateKind::Named(Gate::Hadamard) => {
                // σ_x^{s₂+s₄} σ_z^{1+s₁+s₃}
                CorrectionPolicy::fixed_pmbqc(AffineCoefficients::new(4, vec![0b10100], vec![0b01011]))
            }
            _ => {
                // σ_x^{s₂+s₄} σ_z^{s₁+s₃}
                CorrectionPolicy::fixed_pmbqc(AffineCoefficients::new(4, vec![0b10100], vec![0b01010]))
            }
        }
    }
}

/// Looks up a named gate.
pub fn gate_spec(name: &str) -> Result<GateSpec> {
    Ok(GateSpec::named(name.parse()?))
}

/// Measurement pattern with feed-forward. Single-qubit gates measure
/// qubits 1–4 at `η₁ = 0`, `η₃ = −θ₃(−1)^{s₂}`, `η₄ = −θ₄(−1)^{s₁+s₃}`.
/// `η₂` follows the gate-specific operator for the named gates,
/// `η₂ = θ₂(−1)^{s₁}`, and the generic rule `η₂ = θ₂(−1)^{s₁+1}` for
/// arbitrary rotations. (They only differ when `θ₂ ≠ 0`, i.e. for H.)
/// CNOT measures qubits 1 and 2 at angle 0.
pub fn measurement_plan(spec: &GateSpec) -> Result<MeasurementPlan> {
    if spec.kind == GateKind::Named(Gate::Cnot) {
        return MeasurementPlan::fixed_angles(&[1, 2], &[0.0, 0.0]);
    }
    let [_, t2, t3, t4] = spec.angles.ok_or(Error::MissingAngles)?;
    let generic = spec.kind == GateKind::Rotation;
    let q = |label, base_angle, parity: &[usize], offset| MeasuredQubit {
        label,
        base_angle,
        sign: SignRule::new(parity, offset),
        lambda: 1.0,
    };
    MeasurementPlan::new(vec![
        q(1, 0.0, &[], false),
        q(2, t2, &[0], generic),
        q(3, -t3, &[1], false),
        q(4, -t4, &[0, 2], false),
    ])
}

/// `a_j = j^{−α} π` for `j = 2, 3, 4`, with `b₃ = a₂ + a₃`, `b₄ = b₃ + a₄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticTerms {
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub b3: f64,
    pub b4: f64,
}

impl AnalyticTerms {
    pub fn new(alpha: f64) -> Self {
        let a = |j: f64| j.powf(-alpha) * PI;
        let (a2, a3, a4) = (a(2.0), a(3.0), a(4.0));
        let b3 = a2 + a3;
        Self { a2, a3, a4, b3, b4: b3 + a4 }
    }
}

/// Closed-form average fidelity of H, `R_z(π/2)` or T on the five-qubit
/// chain with the cluster-state corrections, as a function of `α`.
pub fn analytic_restricted_fidelity(gate: Gate, alpha: f64) -> Result<f64> {
    let AnalyticTerms { a2, a3, a4, b3, b4 } = AnalyticTerms::new(alpha);
    let cos = f64::cos;
    let sin = f64::sin;
    let f = match gate {
        Gate::Hadamard => {
            (28.0
                + 2.0 * cos(a2)
                + 4.0 * cos(b3)
                + 2.0 * cos(2.0 * a2) * (cos(a4) + cos(b4))
                + cos(a2) * (3.0 * cos(a4) + 2.0 * cos(b3) + 4.0 * cos(b4) + cos(b3 + b4)))
                / 48.0
        }
        Gate::PhaseHalfPi => {
            (27.0
                + cos(2.0 * a2)
                + 3.0 * cos(a2)
                + 3.0 * cos(a3)
                + 2.0 * cos(b3)
                + cos(b3 + a2)
                + cos(b3 + a3)
                + 2.0
                    * cos(a2)
                    * (cos(a2 + a4) + cos(a3 + a4) + cos(a3) + cos(b4) + cos(b3 + b4)))
                / 48.0
        }
        Gate::T => {
            (53.0
                + cos(2.0 * a2)
                + 8.0 * cos(a2)
                + 6.0 * cos(a3)
                + 4.0 * cos(b3)
                + 2.0 * cos(b3 + a2)
                + 2.0 * cos(b3 + a3)
                + cos(a2)
                    * (4.0 * cos(a3)
                        + cos(a4)
                        + 3.0 * cos(a2 + a4)
                        + 2.0 * cos(a3 + a4)
                        + 6.0 * cos(b4)
                        + cos(a3 + b4)
                        + 3.0 * cos(b3 + b4)
                        - sin(a4)
                        + sin(a2 + a4)
                        + 2.0 * sin(a3 + a4)
                        - 2.0 * sin(b4)
                        - sin(a3 + b4)
                        + sin(b3 + b4)))
                / 96.0
        }
        Gate::Cnot => {
            return Err(Error::UnknownGate("no closed form for CNOT".into()));
        }
    };
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_unitary, max_abs};
    use crate::wgs::Outcome;

    /// `e^{−iφσ}` by eigen-decomposition of the Pauli: `P₊ e^{−iφ} + P₋ e^{iφ}`.
    fn exp_pauli(p: &CMatrix, phi: f64) -> CMatrix {
        let plus = (identity(2) + p) * c(0.5, 0.0);
        let minus = (identity(2) - p) * c(0.5, 0.0);
        plus * C64::from_polar(1.0, -phi) + minus * C64::from_polar(1.0, phi)
    }

    #[test]
    fn hadamard_decomposition() {
        let (x, z) = (pauli_x(), pauli_z());
        let oracle = exp_pauli(&x, PI / 4.0) * exp_pauli(&z, PI / 4.0) * exp_pauli(&x, PI / 4.0)
            * C64::from_polar(1.0, -PI / 2.0);
        let h = gate_spec("H").unwrap();
        assert!(max_abs(&(h.target.clone() - oracle)) < 1e-12);
        // Equal to the Hadamard up to a global phase of −1.
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let had = CMatrix::from_row_slice(2, 2, &[c(r, 0.), c(r, 0.), c(r, 0.), c(-r, 0.)]);
        assert!(max_abs(&(h.target + had)) < 1e-12);
    }

    #[test]
    fn t_gate_is_z_rotation() {
        let t = gate_spec("T").unwrap();
        assert!(max_abs(&(t.target - exp_pauli(&pauli_z(), PI / 8.0))) < 1e-12);
        let s = gate_spec("S").unwrap();
        assert!(max_abs(&(s.target - exp_pauli(&pauli_z(), PI / 4.0))) < 1e-12);
    }

    #[test]
    fn cnot_unitary_and_involutory() {
        let cn = gate_spec("CNOT").unwrap().target;
        assert!(is_unitary(&cn));
        assert!(max_abs(&(&cn * &cn - identity(4))) < 1e-15);
    }

    #[test]
    fn unknown_gate() {
        assert!(matches!(gate_spec("toffoli"), Err(Error::UnknownGate(_))));
    }

    #[test]
    fn hadamard_angles_for_zero_outcome() {
        let plan = measurement_plan(&gate_spec("H").unwrap()).unwrap();
        let got = plan.angles(Outcome(0));
        let expect = [0.0, PI / 2.0, -PI / 2.0, -PI / 2.0];
        for (g, e) in got.iter().zip(expect) {
            assert!((g - e).abs() < 1e-15);
        }
    }

    #[test]
    fn t_feed_forward() {
        let plan = measurement_plan(&gate_spec("T").unwrap()).unwrap();
        let s1 = Outcome::from_bits(&[1, 0, 0, 0]);
        assert!((plan.angle(2, s1) + PI / 4.0).abs() < 1e-15);
        assert_eq!(plan.angle(3, s1), -plan.angle(3, Outcome(0)));
        // A general rotation shows the η₄ flip with a non-zero θ₄.
        let rot = measurement_plan(&GateSpec::rotation([0.0, 0.3, 0.5, 0.7])).unwrap();
        assert!((rot.angle(3, s1) - 0.7).abs() < 1e-15);
        assert!((rot.angle(3, Outcome(0)) + 0.7).abs() < 1e-15);
        // Generic η₂ rule: θ₂(−1)^{s₁+1}.
        assert!((rot.angle(1, Outcome(0)) + 0.3).abs() < 1e-15);
    }

    #[test]
    fn cnot_angles_are_zero() {
        let plan = measurement_plan(&gate_spec("CNOT").unwrap()).unwrap();
        for s in Outcome::all(2) {
            assert_eq!(plan.angles(s), vec![0.0, 0.0]);
        }
    }

    #[test]
    fn rotation_without_angles() {
        let mut spec = GateSpec::rotation([0.0; 4]);
        spec.angles = None;
        assert!(matches!(measurement_plan(&spec), Err(Error::MissingAngles)));
    }

    #[test]
    fn closed_forms_tend_to_one() {
        for g in Gate::SINGLE_QUBIT {
            let f = analytic_restricted_fidelity(g, 200.0).unwrap();
            assert!((f - 1.0).abs() < 1e-12, "{g}: {f}");
        }
    }
}
