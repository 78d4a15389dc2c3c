//! Dense complex linear algebra shared by the rest of the crate: operator
//! bases, Kraus-form channels and their superoperator / Choi representations.
//!
//! Everything here is small (at most 32×32 after dilation), so matrices are
//! plain dense `nalgebra` matrices with no sparse paths.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Tolerance for exact algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for channel properties (trace preservation, positivity).
pub const CHANNEL_TOL: f64 = 1e-10;
/// Tolerance for comparing optimizer outputs.
pub const OPTIMIZATION_TOL: f64 = 1e-6;

pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖M†M − I‖_max`; zero for a unitary.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    max_abs(&(m.adjoint() * m - identity(m.nrows())))
}

pub fn is_unitary(m: &CMatrix) -> bool {
    unitarity_defect(m) < CHANNEL_TOL
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Hilbert–Schmidt-orthogonal unitary basis `{U_i}` with `Tr(U_i† U_j) = d δ_ij`.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    d: usize,
    elements: Vec<CMatrix>,
}

impl OperatorBasis {
    /// `d = 2`: `{I, σx, σy, σz}`. `d = 4`: Heisenberg–Weyl
    /// `U_ij = ω^{−ij/2} Z^i X^j` with `ω = e^{2πi/4}`, `Z = Σ ω^k |k⟩⟨k|`
    /// and `X = Σ |k−1⟩⟨k|` (indices mod 4). Elements are ordered `i`-major.
    pub fn new(d: usize) -> Result<Self> {
        let elements = match d {
            2 => vec![identity(2), pauli_x(), pauli_y(), pauli_z()],
            4 => {
                let omega = C64::from_polar(1.0, 2.0 * PI / 4.0);
                let z = CMatrix::from_diagonal(&CVector::from_iterator(
                    4,
                    (0..4).map(|k| omega.powu(k)),
                ));
                let mut x = CMatrix::zeros(4, 4);
                for k in 0..4 {
                    x[((k + 3) % 4, k)] = c(1.0, 0.0);
                }
                let mut out = Vec::with_capacity(16);
                for i in 0..4u32 {
                    for j in 0..4u32 {
                        let phase = C64::from_polar(1.0, -PI * f64::from(i * j) / 4.0);
                        out.push(z.pow(i) * x.pow(j) * phase);
                    }
                }
                out
            }
            other => return Err(Error::UnsupportedDimension(other)),
        };
        Ok(Self { d, elements })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    /// Heisenberg–Weyl element `U_ij` (only meaningful for `d = 4`; for
    /// `d = 2` indexes the Pauli list row-major as a 2×2 grid).
    pub fn element(&self, i: usize, j: usize) -> &CMatrix {
        &self.elements[i * self.d + j]
    }
}

/// A channel stored as Kraus operators `K_m` (each `d_out × d_in`), with the
/// superoperator and Choi forms built lazily on first use.
#[derive(Debug)]
pub struct ChannelRepr {
    kraus: Vec<CMatrix>,
    d_in: usize,
    d_out: usize,
    superop: OnceLock<CMatrix>,
    choi: OnceLock<CMatrix>,
}

impl Clone for ChannelRepr {
    fn clone(&self) -> Self {
        Self {
            kraus: self.kraus.clone(),
            d_in: self.d_in,
            d_out: self.d_out,
            superop: OnceLock::new(),
            choi: OnceLock::new(),
        }
    }
}

impl ChannelRepr {
    pub fn from_kraus(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyChannel)?;
        let (d_out, d_in) = first.shape();
        if let Some(bad) = kraus.iter().find(|k| k.shape() != (d_out, d_in)) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator {:?} vs {:?}",
                bad.shape(),
                (d_out, d_in)
            )));
        }
        Ok(Self {
            kraus,
            d_in,
            d_out,
            superop: OnceLock::new(),
            choi: OnceLock::new(),
        })
    }

    pub fn identity(d: usize) -> Self {
        Self::from_kraus(vec![identity(d)]).expect("non-empty")
    }

    pub fn unitary(u: CMatrix) -> Self {
        Self::from_kraus(vec![u]).expect("non-empty")
    }

    /// `ρ ↦ Tr(ρ) I/d`, via the Kraus set `{U_i/d}` over an operator basis.
    pub fn completely_depolarizing(d: usize) -> Result<Self> {
        let basis = OperatorBasis::new(d)?;
        let scale = c(1.0 / d as f64, 0.0);
        Self::from_kraus(basis.elements().iter().map(|u| u * scale).collect())
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        if rho.shape() != (self.d_in, self.d_in) {
            return Err(Error::DimensionMismatch(format!(
                "input {:?}, channel expects {}×{}",
                rho.shape(),
                self.d_in,
                self.d_in
            )));
        }
        let mut out = CMatrix::zeros(self.d_out, self.d_out);
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        Ok(out)
    }

    /// Column-stacking superoperator `S = Σ conj(K) ⊗ K`, so that
    /// `vec(Λ(X)) = S · vec(X)`.
    pub fn superoperator(&self) -> &CMatrix {
        self.superop.get_or_init(|| {
            let mut s = CMatrix::zeros(self.d_out * self.d_out, self.d_in * self.d_in);
            for k in &self.kraus {
                s += kron(&k.conjugate(), k);
            }
            s
        })
    }

    /// Applies the channel through the superoperator instead of the Kraus sum.
    pub fn apply_superoperator(&self, x: &CMatrix) -> CMatrix {
        let v = CVector::from_column_slice(x.as_slice());
        let out = self.superoperator() * v;
        CMatrix::from_column_slice(self.d_out, self.d_out, out.as_slice())
    }

    pub fn choi(&self) -> &CMatrix {
        self.choi.get_or_init(|| {
            let (di, dout) = (self.d_in, self.d_out);
            let mut choi = CMatrix::zeros(di * dout, di * dout);
            for i in 0..di {
                for j in 0..di {
                    let mut eij = CMatrix::zeros(di, di);
                    eij[(i, j)] = c(1.0, 0.0);
                    let block = self.apply(&eij).expect("shape checked");
                    choi.view_mut((i * dout, j * dout), (dout, dout))
                        .copy_from(&block);
                }
            }
            choi
        })
    }
}

/// `Σ_ij |i⟩⟨j| ⊗ Λ(|i⟩⟨j|)`.
pub fn choi_matrix(ch: &ChannelRepr) -> CMatrix {
    ch.choi().clone()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelReport {
    pub trace_preserving: bool,
    pub cp: bool,
    /// `max(‖ΣK†K − I‖_max, −λ_min(Choi))`, floored at zero.
    pub max_violation: f64,
    pub completeness_defect: f64,
    pub min_choi_eigenvalue: f64,
}

pub fn validate_channel(ch: &ChannelRepr) -> ChannelReport {
    let mut sum = CMatrix::zeros(ch.d_in, ch.d_in);
    for k in &ch.kraus {
        sum += k.adjoint() * k;
    }
    let completeness_defect = max_abs(&(sum - identity(ch.d_in)));
    let choi = ch.choi().clone();
    // Hermitize to remove rounding asymmetry before the eigen-solve.
    let herm = (&choi + choi.adjoint()) * c(0.5, 0.0);
    let min_choi_eigenvalue = SymmetricEigen::new(herm)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    ChannelReport {
        trace_preserving: completeness_defect < CHANNEL_TOL,
        cp: min_choi_eigenvalue > -CHANNEL_TOL,
        max_violation: completeness_defect.max(-min_choi_eigenvalue).max(0.0),
        completeness_defect,
        min_choi_eigenvalue,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pauli_basis_is_orthogonal() {
        let b = OperatorBasis::new(2).unwrap();
        for (i, ui) in b.elements().iter().enumerate() {
            for (j, uj) in b.elements().iter().enumerate() {
                let ip = trace(&(ui.adjoint() * uj));
                let expect = if i == j { 2.0 } else { 0.0 };
                assert_abs_diff_eq!(ip.re, expect, epsilon = 1e-12);
                assert_abs_diff_eq!(ip.im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn weyl_u00_is_identity_and_basis_is_orthogonal() {
        let b = OperatorBasis::new(4).unwrap();
        assert!(max_abs(&(b.element(0, 0) - identity(4))) < 1e-15);
        let mut checked = 0;
        for (i, ui) in b.elements().iter().enumerate() {
            assert!(is_unitary(ui));
            for (j, uj) in b.elements().iter().enumerate() {
                let ip = trace(&(ui.adjoint() * uj));
                let expect = if i == j { 4.0 } else { 0.0 };
                assert!((ip - c(expect, 0.0)).norm() < 1e-12, "({i},{j}) -> {ip}");
                checked += 1;
            }
        }
        assert_eq!(checked, 256);
    }

    #[test]
    fn unsupported_dimension() {
        assert!(matches!(
            OperatorBasis::new(3),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn identity_choi_is_unnormalized_bell_projector() {
        let ch = ChannelRepr::identity(2);
        let choi = choi_matrix(&ch);
        // |Ω⟩ = |00⟩ + |11⟩, Choi = |Ω⟩⟨Ω|.
        let mut expect = CMatrix::zeros(4, 4);
        for &(r, col) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            expect[(r, col)] = c(1.0, 0.0);
        }
        assert!(max_abs(&(choi.clone() - expect)) < 1e-15);
        assert_abs_diff_eq!(trace(&choi).re, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn depolarizing_choi_is_scaled_identity() {
        let ch = ChannelRepr::completely_depolarizing(2).unwrap();
        let choi = choi_matrix(&ch);
        assert!(max_abs(&(choi - identity(4) * c(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn validate_identity_and_subnormalized() {
        let r = validate_channel(&ChannelRepr::identity(2));
        assert!(r.trace_preserving && r.cp);
        assert!(r.max_violation < 1e-15);

        let half = ChannelRepr::from_kraus(vec![identity(2) * c(0.5, 0.0)]).unwrap();
        let r = validate_channel(&half);
        assert!(!r.trace_preserving);
        assert!(r.cp);
        assert_abs_diff_eq!(r.completeness_defect, 0.75, epsilon = 1e-15);
    }

    #[test]
    fn mismatched_kraus_rejected() {
        let err = ChannelRepr::from_kraus(vec![identity(2), identity(4)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
        assert!(matches!(
            ChannelRepr::from_kraus(vec![]),
            Err(Error::EmptyChannel)
        ));
    }

    #[test]
    fn superoperator_matches_kraus_on_basis_matrices() {
        let ch = ChannelRepr::completely_depolarizing(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let mut e = CMatrix::zeros(4, 4);
                e[(i, j)] = c(1.0, 0.0);
                let a = ch.apply(&e).unwrap();
                let b = ch.apply_superoperator(&e);
                assert!(max_abs(&(a - b)) < 1e-12);
            }
        }
    }
}
