use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{identity, kron, pauli_x, pauli_z, CMatrix};
use crate::wgs::Outcome;

/// `⊗_q σ_x^{x_q} σ_z^{z_q}` over the output qubits; bit `q` of `x`/`z`
/// belongs to output qubit `q` (ascending label order, first qubit leftmost).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub n_qubits: usize,
    pub x: u32,
    pub z: u32,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        Self { n_qubits, x: 0, z: 0 }
    }

    /// Position in the lexicographic order with `I < X < Z < XZ` per qubit,
    /// first qubit most significant.
    pub fn code(self) -> usize {
        (0..self.n_qubits).fold(0, |acc, q| {
            let digit = (self.x >> q & 1) + 2 * (self.z >> q & 1);
            acc * 4 + digit as usize
        })
    }

    pub fn from_code(n_qubits: usize, code: usize) -> Self {
        let (mut x, mut z) = (0, 0);
        for q in 0..n_qubits {
            let digit = code >> (2 * (n_qubits - 1 - q)) & 3;
            x |= ((digit & 1) as u32) << q;
            z |= ((digit >> 1) as u32) << q;
        }
        Self { n_qubits, x, z }
    }

    /// All `4^n` strings in lexicographic order.
    pub fn all(n_qubits: usize) -> impl Iterator<Item = Self> {
        (0..1usize << (2 * n_qubits)).map(move |c| Self::from_code(n_qubits, c))
    }

    pub fn matrix(self) -> CMatrix {
        let (px, pz) = (pauli_x(), pauli_z());
        (0..self.n_qubits).fold(identity(1), |acc, q| {
            let mut m = identity(2);
            if self.x >> q & 1 == 1 {
                m = &m * &px;
            }
            if self.z >> q & 1 == 1 {
                m = &m * &pz;
            }
            kron(&acc, &m)
        })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            if q > 0 {
                f.write_str("⊗")?;
            }
            let s = match (self.x >> q & 1, self.z >> q & 1) {
                (0, 0) => "I",
                (1, 0) => "X",
                (0, 1) => "Z",
                _ => "XZ",
            };
            f.write_str(s)?;
        }
        Ok(())
    }
}

/// Exponent masks of `σ_x^{c₀ + Σ c_k s_k} σ_z^{d₀ + Σ d_k s_k}` for each
/// output qubit: bit 0 is the constant, bit `k` multiplies `s_k` (1-based
/// measurement position).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineCoefficients {
    pub n_measured: usize,
    pub x: Vec<u32>,
    pub z: Vec<u32>,
}

impl AffineCoefficients {
    pub fn new(n_measured: usize, x: Vec<u32>, z: Vec<u32>) -> Self {
        assert_eq!(x.len(), z.len(), "one x and one z mask per output qubit");
        Self { n_measured, x, z }
    }

    pub fn n_outputs(&self) -> usize {
        self.x.len()
    }

    pub fn pauli(&self, s: Outcome) -> PauliString {
        let vars = s.0 << 1 | 1;
        let parity = |mask: u32| (mask & vars).count_ones() & 1;
        let (mut x, mut z) = (0, 0);
        for q in 0..self.n_outputs() {
            x |= parity(self.x[q]) << q;
            z |= parity(self.z[q]) << q;
        }
        PauliString { n_qubits: self.n_outputs(), x, z }
    }

    /// Number of free bits, `2 · |V_O| · (|V_m| + 1)`.
    pub fn bit_count(n_outputs: usize, n_measured: usize) -> usize {
        2 * n_outputs * (n_measured + 1)
    }

    /// Decodes the `index`-th candidate: for each output qubit the x mask
    /// occupies the low `|V_m|+1` bits and the z mask the next ones.
    pub fn from_index(n_outputs: usize, n_measured: usize, index: u64) -> Self {
        let w = n_measured + 1;
        let field = (1u64 << w) - 1;
        let mut x = Vec::with_capacity(n_outputs);
        let mut z = Vec::with_capacity(n_outputs);
        for q in 0..n_outputs {
            let base = 2 * w * q;
            x.push((index >> base & field) as u32);
            z.push((index >> (base + w) & field) as u32);
        }
        Self { n_measured, x, z }
    }

    fn exponent(mask: u32) -> String {
        let mut terms = Vec::new();
        if mask & 1 == 1 {
            terms.push("1".to_string());
        }
        for k in 1..32 {
            if mask >> k & 1 == 1 {
                terms.push(format!("s{k}"));
            }
        }
        terms.join("+")
    }
}

impl fmt::Display for AffineCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for q in 0..self.n_outputs() {
            let tag = if self.n_outputs() > 1 { format!("({})", q + 1) } else { String::new() };
            if self.x[q] != 0 {
                parts.push(format!("X{tag}^{{{}}}", Self::exponent(self.x[q])));
            }
            if self.z[q] != 0 {
                parts.push(format!("Z{tag}^{{{}}}", Self::exponent(self.z[q])));
            }
        }
        if parts.is_empty() {
            f.write_str("I")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyMode {
    PerOutcome,
    Affine,
    FixedPmbqc,
}

/// Outcome → corrective Pauli string, covering every outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionPolicy {
    mode: PolicyMode,
    n_measured: usize,
    table: Vec<PauliString>,
    affine: Option<AffineCoefficients>,
}

impl CorrectionPolicy {
    pub fn per_outcome(n_measured: usize, table: Vec<PauliString>) -> Result<Self> {
        if table.len() != 1 << n_measured {
            return Err(Error::MissingOutcome(table.len()));
        }
        Ok(Self { mode: PolicyMode::PerOutcome, n_measured, table, affine: None })
    }

    pub fn affine(coeffs: AffineCoefficients) -> Self {
        Self::from_affine(PolicyMode::Affine, coeffs)
    }

    pub fn fixed_pmbqc(coeffs: AffineCoefficients) -> Self {
        Self::from_affine(PolicyMode::FixedPmbqc, coeffs)
    }

    /// The identity correction for every outcome.
    pub fn none(n_measured: usize, n_outputs: usize) -> Self {
        Self::affine(AffineCoefficients::new(n_measured, vec![0; n_outputs], vec![0; n_outputs]))
    }

    fn from_affine(mode: PolicyMode, coeffs: AffineCoefficients) -> Self {
        let table = Outcome::all(coeffs.n_measured).map(|s| coeffs.pauli(s)).collect();
        Self { mode, n_measured: coeffs.n_measured, table, affine: Some(coeffs) }
    }

    pub fn mode(&self) -> PolicyMode {
        self.mode
    }

    pub fn n_measured(&self) -> usize {
        self.n_measured
    }

    pub fn affine_coefficients(&self) -> Option<&AffineCoefficients> {
        self.affine.as_ref()
    }

    pub fn table(&self) -> &[PauliString] {
        &self.table
    }

    pub fn correction(&self, s: Outcome) -> Result<PauliString> {
        self.table.get(s.index()).copied().ok_or(Error::MissingOutcome(s.index()))
    }

    /// Same corrections regardless of how they were produced.
    pub fn same_table(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl fmt::Display for CorrectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.affine {
            Some(a) => write!(f, "{a}"),
            None => {
                let cells: Vec<String> = self.table.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", cells.join(", "))
            }
        }
    }
}

impl Serialize for CorrectionPolicy {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
