use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{c, C64};

/// Measurement record `s`: bit `j` is the outcome of the `j`-th measured
/// qubit in measurement order (so bit 0 is `s₁`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Outcome(pub u32);

impl Outcome {
    pub fn bit(self, j: usize) -> u8 {
        (self.0 >> j & 1) as u8
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self(
            bits.iter()
                .enumerate()
                .fold(0, |acc, (j, &b)| acc | (u32::from(b & 1) << j)),
        )
    }

    pub fn bits(self, len: usize) -> Vec<u8> {
        (0..len).map(|j| self.bit(j)).collect()
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all(n_measured: usize) -> impl Iterator<Item = Outcome> {
        (0..1u32 << n_measured).map(Outcome)
    }
}

/// `(−1)^{offset + Σ_{p ∈ parity} s_p}` where `parity` lists earlier
/// measurement positions (0-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignRule {
    pub parity: Vec<usize>,
    pub offset: bool,
}

impl SignRule {
    pub fn constant() -> Self {
        Self::default()
    }

    pub fn new(parity: &[usize], offset: bool) -> Self {
        Self { parity: parity.to_vec(), offset }
    }

    pub fn sign(&self, s: Outcome) -> f64 {
        let p = self.parity.iter().map(|&j| u32::from(s.bit(j))).sum::<u32>() + u32::from(self.offset);
        if p % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredQubit {
    pub label: usize,
    pub base_angle: f64,
    pub sign: SignRule,
    pub lambda: f64,
}

/// Ordered list of xy-plane measurements with feed-forward and sharpness.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementPlan {
    qubits: Vec<MeasuredQubit>,
}

impl MeasurementPlan {
    pub fn new(qubits: Vec<MeasuredQubit>) -> Result<Self> {
        for (pos, q) in qubits.iter().enumerate() {
            if let Some(&bad) = q.sign.parity.iter().find(|&&p| p >= pos) {
                return Err(Error::InvalidPlan(format!(
                    "sign rule of measurement {} references later position {}",
                    pos + 1,
                    bad + 1
                )));
            }
            if !(0.0..=1.0).contains(&q.lambda) {
                return Err(Error::InvalidLambda(q.lambda));
            }
        }
        for w in qubits.windows(2) {
            if w[1].label <= w[0].label {
                return Err(Error::InvalidPlan("measurement order must ascend by label".into()));
            }
        }
        let plan = Self { qubits };
        let n = plan.unsharp_count();
        if plan.qubits[n..].iter().any(|q| q.lambda < 1.0) {
            return Err(Error::InvalidPlan(
                "unsharp measurements must form a leading block".into(),
            ));
        }
        Ok(plan)
    }

    /// Sharp measurements at fixed angles (all sign rules constant).
    pub fn fixed_angles(labels: &[usize], angles: &[f64]) -> Result<Self> {
        if labels.len() != angles.len() {
            return Err(Error::InvalidPlan("label/angle count mismatch".into()));
        }
        Self::new(
            labels
                .iter()
                .zip(angles)
                .map(|(&label, &base_angle)| MeasuredQubit {
                    label,
                    base_angle,
                    sign: SignRule::constant(),
                    lambda: 1.0,
                })
                .collect(),
        )
    }

    pub fn qubits(&self) -> &[MeasuredQubit] {
        &self.qubits
    }

    pub fn labels(&self) -> Vec<usize> {
        self.qubits.iter().map(|q| q.label).collect()
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    /// Number of leading measurements with `λ < 1`.
    pub fn unsharp_count(&self) -> usize {
        self.qubits.iter().take_while(|q| q.lambda < 1.0).count()
    }

    /// Same angles, with the first `n` measurements at sharpness `lambda`
    /// and the rest projective. `lambda = 1` yields a fully sharp plan.
    pub fn with_unsharpness(&self, lambda: f64, n: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidLambda(lambda));
        }
        if n > self.len() {
            return Err(Error::InvalidUnsharpCount { n, max: self.len() });
        }
        let qubits = self
            .qubits
            .iter()
            .enumerate()
            .map(|(j, q)| MeasuredQubit {
                lambda: if j < n { lambda } else { 1.0 },
                ..q.clone()
            })
            .collect();
        Self::new(qubits)
    }

    /// Angle `η` of measurement `j` given the record `s`.
    pub fn angle(&self, j: usize, s: Outcome) -> f64 {
        let q = &self.qubits[j];
        q.base_angle * q.sign.sign(s)
    }

    pub fn angles(&self, s: Outcome) -> Vec<f64> {
        (0..self.len()).map(|j| self.angle(j, s)).collect()
    }

    /// Every `(s, β)` pair with non-zero weight, outcome-major.
    pub fn branches(&self) -> Vec<Branch> {
        let n = self.unsharp_count();
        Outcome::all(self.len())
            .flat_map(|outcome| (0..1u32 << n).map(move |sub| Branch { outcome, subbranch: sub }))
            .collect()
    }
}

/// One term of the measurement-operator expansion: an outcome record plus,
/// for each unsharp qubit, whether the principal (`0`) or orthogonal (`1`)
/// component of `√P^λ` is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub outcome: Outcome,
    pub subbranch: u32,
}

impl Branch {
    pub fn sharp(outcome: Outcome) -> Self {
        Self { outcome, subbranch: 0 }
    }
}

/// `⟨η_s| = (⟨0| + e^{−i(sπ+η)} ⟨1|)/√2`.
pub fn eta_bra(eta: f64, s: u8) -> [C64; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [c(r, 0.0), C64::from_polar(r, -(f64::from(s) * PI + eta))]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BraFactor {
    pub label: usize,
    pub bra: [C64; 2],
    pub factor: f64,
}

/// Product bras selected by `branch`. A sharp qubit contributes `⟨η_{s}|`
/// with factor 1; an unsharp one contributes `√((1+λ)/2) ⟨η_{s}|` or
/// `√((1−λ)/2) ⟨η_{s̄}|` according to its subbranch bit.
pub fn branch_bras(plan: &MeasurementPlan, branch: Branch) -> Result<Vec<BraFactor>> {
    let n = plan.unsharp_count();
    if branch.subbranch >> n != 0 {
        return Err(Error::InvalidPlan(format!(
            "subbranch bits set beyond the {n} unsharp qubits"
        )));
    }
    if branch.outcome.0 >> plan.len() != 0 {
        return Err(Error::InvalidPlan("outcome has bits beyond the measured set".into()));
    }
    plan.qubits
        .iter()
        .enumerate()
        .map(|(j, q)| {
            if !(0.0..=1.0).contains(&q.lambda) {
                return Err(Error::InvalidLambda(q.lambda));
            }
            let s = branch.outcome.bit(j);
            let eta = plan.angle(j, branch.outcome);
            let (bra, factor) = if j < n {
                if branch.subbranch >> j & 1 == 0 {
                    (eta_bra(eta, s), ((1.0 + q.lambda) / 2.0).sqrt())
                } else {
                    (eta_bra(eta, 1 - s), ((1.0 - q.lambda) / 2.0).sqrt())
                }
            } else {
                (eta_bra(eta, s), 1.0)
            };
            Ok(BraFactor { label: q.label, bra, factor })
        })
        .collect()
}
