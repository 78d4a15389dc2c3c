use super::geometry::Geometry;
use crate::error::{Error, Result};
use crate::linalg::{CVector, ALGEBRAIC_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerReport {
    pub all_pass: bool,
    /// `⟨ψ|K^(a)|ψ⟩` for `a = 1..=N`.
    pub expectations: Vec<f64>,
}

/// Evaluates the cluster-state stabilizers `K^(a) = σ_x^a Π_{b ∈ nghb(a)} σ_z^b`
/// on the nearest-neighbour graph of `geom`.
pub fn check_cluster_stabilizers(state: &CVector, geom: &Geometry) -> Result<StabilizerReport> {
    let n = geom.n_qubits();
    if state.len() != 1 << n {
        return Err(Error::DimensionMismatch(format!(
            "state has {} amplitudes for {} qubits",
            state.len(),
            n
        )));
    }
    let bit = |label: usize| 1usize << (n - label);
    let expectations: Vec<f64> = (1..=n)
        .map(|a| {
            let flip = bit(a);
            let z_mask = geom.neighbours(a).into_iter().fold(0, |m, b| m | bit(b));
            state
                .iter()
                .enumerate()
                .map(|(idx, amp)| {
                    let sign = if (idx & z_mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    (amp.conj() * state[idx ^ flip]).re * sign
                })
                .sum()
        })
        .collect();
    let all_pass = expectations.iter().all(|e| (e - 1.0).abs() < ALGEBRAIC_TOL);
    Ok(StabilizerReport { all_pass, expectations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::wgs::geometry::DistanceMode;

    #[test]
    fn two_qubit_cluster_passes() {
        let g = Geometry::new(2, &[1], &[], &[2], &[(1, 2)], DistanceMode::Graph, None).unwrap();
        let psi = CVector::from_vec(vec![c(0.5, 0.), c(0.5, 0.), c(0.5, 0.), c(-0.5, 0.)]);
        let r = check_cluster_stabilizers(&psi, &g).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.expectations.len(), 2);
        for e in r.expectations {
            assert!((e - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn product_state_fails() {
        let g = Geometry::new(2, &[1], &[], &[2], &[(1, 2)], DistanceMode::Graph, None).unwrap();
        let psi = CVector::from_element(4, c(0.5, 0.));
        let r = check_cluster_stabilizers(&psi, &g).unwrap();
        assert!(!r.all_pass);
    }
}
