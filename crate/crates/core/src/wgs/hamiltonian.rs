use std::f64::consts::PI;

use super::geometry::Geometry;
use crate::error::{Error, Result};

/// Fall-off of the pairwise interaction with distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Falloff {
    /// `g_kl = J_kl · d(k,l)^{−α}`.
    Power(f64),
    /// The `α → ∞` limit: `g_kl = J_kl` on nearest-neighbour edges, zero elsewhere.
    NearestNeighbour,
}

impl From<f64> for Falloff {
    fn from(alpha: f64) -> Self {
        if alpha.is_infinite() && alpha > 0.0 {
            Self::NearestNeighbour
        } else {
            Self::Power(alpha)
        }
    }
}

/// Coupling prefactor `J`: uniform, or one value per unordered pair.
#[derive(Clone, Debug, PartialEq)]
pub enum Strength {
    Uniform(f64),
    /// Symmetric `N × N` matrix, 0-based.
    PerPair(Vec<Vec<f64>>),
}

impl Strength {
    fn at(&self, k: usize, l: usize) -> f64 {
        match self {
            Self::Uniform(j) => *j,
            Self::PerPair(m) => m[k][l],
        }
    }
}

/// `H = Σ_{k<l} g_kl n_k n_l` with `n = (1 − σ_z)/2`, evolved for time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseHamiltonian {
    g: Vec<Vec<f64>>,
    t: f64,
}

impl PhaseHamiltonian {
    /// From an explicit symmetric coupling matrix (0-based, zero diagonal).
    pub fn from_matrix(g: Vec<Vec<f64>>, t: f64) -> Result<Self> {
        let n = g.len();
        for (k, row) in g.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch("coupling matrix not square".into()));
            }
            if row[k] != 0.0 {
                return Err(Error::InvalidConfig(format!("g_{0}{0} must be zero", k + 1)));
            }
            for l in 0..n {
                if row[l] != g[l][k] {
                    return Err(Error::InvalidConfig("coupling matrix not symmetric".into()));
                }
            }
        }
        Ok(Self { g, t })
    }

    pub fn n_qubits(&self) -> usize {
        self.g.len()
    }

    /// `g_kl` for 1-based labels.
    pub fn coupling(&self, k: usize, l: usize) -> f64 {
        self.g[k - 1][l - 1]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.g
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    /// Phase `t · Σ_{k<l} g_kl b_k b_l` accumulated by register index `idx`
    /// (qubit 1 is the most significant bit).
    pub fn phase_of(&self, idx: usize) -> f64 {
        let n = self.g.len();
        let mut e = 0.0;
        for k in 0..n {
            if idx >> (n - 1 - k) & 1 == 0 {
                continue;
            }
            for l in k + 1..n {
                if idx >> (n - 1 - l) & 1 == 1 {
                    e += self.g[k][l];
                }
            }
        }
        self.t * e
    }
}

/// Default evolution time at which the NN model yields the cluster state.
pub const DEFAULT_TIME: f64 = PI;

/// Power-law couplings on `geom`.
pub fn couplings(geom: &Geometry, falloff: Falloff, strength: &Strength) -> Result<PhaseHamiltonian> {
    let n = geom.n_qubits();
    if let Strength::PerPair(m) = strength {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("per-pair J must be N×N".into()));
        }
    }
    let mut g = vec![vec![0.0; n]; n];
    for k in 0..n {
        for l in k + 1..n {
            let j = strength.at(k, l);
            let value = match falloff {
                Falloff::NearestNeighbour => {
                    if geom.is_nn_edge(k + 1, l + 1) {
                        j
                    } else {
                        0.0
                    }
                }
                Falloff::Power(alpha) => {
                    let d = geom.distance(k + 1, l + 1);
                    if !(d > 0.0) && alpha > 0.0 {
                        return Err(Error::NonPositiveDistance(k + 1, l + 1));
                    }
                    j * d.powf(-alpha)
                }
            };
            g[k][l] = value;
            g[l][k] = value;
        }
    }
    Ok(PhaseHamiltonian { g, t: DEFAULT_TIME })
}

/// Uniform `J = 1` couplings; the common case.
pub fn ordered_couplings(geom: &Geometry, falloff: impl Into<Falloff>) -> PhaseHamiltonian {
    couplings(geom, falloff.into(), &Strength::Uniform(1.0)).expect("geometry distances are positive")
}
