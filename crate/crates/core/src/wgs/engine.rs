use super::geometry::Geometry;
use super::hamiltonian::PhaseHamiltonian;
use super::plan::{branch_bras, Branch, BraFactor, MeasurementPlan};
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, CVector, C64};

/// Multiplies the amplitude of every basis string `b` by
/// `exp(−i t Σ_{k<l} g_kl b_k b_l)`.
pub fn evolve_diagonal(state: &CVector, h: &PhaseHamiltonian) -> Result<CVector> {
    let dim = 1usize << h.n_qubits();
    if state.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "state has {} amplitudes, Hamiltonian acts on {}",
            state.len(),
            dim
        )));
    }
    Ok(CVector::from_iterator(
        dim,
        state
            .iter()
            .enumerate()
            .map(|(idx, &a)| a * C64::from_polar(1.0, -h.phase_of(idx))),
    ))
}

/// `|+⟩^{⊗n}`.
pub fn plus_state(n: usize) -> CVector {
    CVector::from_element(1 << n, c(0.5f64.powf(n as f64 / 2.0), 0.0))
}

/// `|e_i⟩` on `V_I` (first input label is the most significant bit of `i`)
/// and `|+⟩` on every other qubit.
pub fn prepare_register(geom: &Geometry, input_index: usize) -> CVector {
    let n = geom.n_qubits();
    let inputs = geom.inputs();
    let n_plus = n - inputs.len();
    let amp = c(0.5f64.powf(n_plus as f64 / 2.0), 0.0);
    CVector::from_iterator(
        1 << n,
        (0..1usize << n).map(|idx| {
            let matches = inputs.iter().enumerate().all(|(j, &label)| {
                let want = input_index >> (inputs.len() - 1 - j) & 1;
                idx >> (n - label) & 1 == want
            });
            if matches {
                amp
            } else {
                c(0.0, 0.0)
            }
        }),
    )
}

/// Contracts the measured qubits of `psi` against product bras, leaving a
/// vector over `V_O` (first output label most significant).
fn contract(psi: &CVector, geom: &Geometry, bras: &[BraFactor]) -> CVector {
    let n = geom.n_qubits();
    let outputs = geom.outputs();
    let weight: f64 = bras.iter().map(|b| b.factor).product();
    let mut out = CVector::zeros(1 << outputs.len());
    for (idx, &amp) in psi.iter().enumerate() {
        if amp == c(0.0, 0.0) {
            continue;
        }
        let mut coeff = c(weight, 0.0);
        for b in bras {
            coeff *= b.bra[idx >> (n - b.label) & 1];
        }
        let o = outputs
            .iter()
            .fold(0usize, |acc, &label| acc << 1 | (idx >> (n - label) & 1));
        out[o] += coeff * amp;
    }
    out
}

fn check_plan(geom: &Geometry, h: &PhaseHamiltonian, plan: &MeasurementPlan) -> Result<()> {
    if h.n_qubits() != geom.n_qubits() {
        return Err(Error::DimensionMismatch(
            "Hamiltonian and geometry disagree on qubit count".into(),
        ));
    }
    if plan.labels() != geom.measured() {
        return Err(Error::InvalidPlan(format!(
            "plan measures {:?}, geometry requires {:?}",
            plan.labels(),
            geom.measured()
        )));
    }
    Ok(())
}

/// Conditional input→output map `V_{s,β}` for one branch, of shape
/// `2^{|V_O|} × 2^{|V_I|}`.
pub fn conditional_map(
    geom: &Geometry,
    h: &PhaseHamiltonian,
    plan: &MeasurementPlan,
    branch: Branch,
) -> Result<CMatrix> {
    check_plan(geom, h, plan)?;
    let evolved = evolved_inputs(geom, h)?;
    let bras = branch_bras(plan, branch)?;
    Ok(assemble_columns(geom, &evolved, &bras))
}

fn evolved_inputs(geom: &Geometry, h: &PhaseHamiltonian) -> Result<Vec<CVector>> {
    (0..1usize << geom.inputs().len())
        .map(|i| evolve_diagonal(&prepare_register(geom, i), h))
        .collect()
}

fn assemble_columns(geom: &Geometry, evolved: &[CVector], bras: &[BraFactor]) -> CMatrix {
    let d_out = 1 << geom.outputs().len();
    let mut v = CMatrix::zeros(d_out, evolved.len());
    for (i, psi) in evolved.iter().enumerate() {
        v.set_column(i, &contract(psi, geom, bras));
    }
    v
}

/// A conditional map tagged with the branch that produced it.
#[derive(Clone, Debug)]
pub struct ConditionalMap {
    pub branch: Branch,
    pub matrix: CMatrix,
}

/// All branch maps of `plan`, outcome-major. The evolved registers are
/// computed once and shared across branches.
pub fn all_branches(
    geom: &Geometry,
    h: &PhaseHamiltonian,
    plan: &MeasurementPlan,
) -> Result<Vec<ConditionalMap>> {
    check_plan(geom, h, plan)?;
    let evolved = evolved_inputs(geom, h)?;
    plan.branches()
        .into_iter()
        .map(|branch| {
            let bras = branch_bras(plan, branch)?;
            Ok(ConditionalMap { branch, matrix: assemble_columns(geom, &evolved, &bras) })
        })
        .collect()
}

/// `‖Σ V†V − I‖_max` over a branch set.
pub fn completeness_defect(maps: &[ConditionalMap]) -> f64 {
    let Some(first) = maps.first() else {
        return f64::INFINITY;
    };
    let d = first.matrix.ncols();
    let mut sum = CMatrix::zeros(d, d);
    for m in maps {
        sum += m.matrix.adjoint() * &m.matrix;
    }
    crate::linalg::max_abs(&(sum - CMatrix::identity(d, d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgs::geometry::{DistanceMode, Preset};
    use crate::wgs::hamiltonian::ordered_couplings;
    use crate::wgs::plan::Outcome;

    #[test]
    fn zero_time_is_identity() {
        let g = Geometry::preset(Preset::SingleGateChain5);
        let h = ordered_couplings(&g, 1.0).with_time(0.0);
        let psi = prepare_register(&g, 1);
        let out = evolve_diagonal(&psi, &h).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn two_qubit_cluster() {
        let g = Geometry::new(2, &[1], &[], &[2], &[(1, 2)], DistanceMode::Graph, None).unwrap();
        let h = ordered_couplings(&g, f64::INFINITY);
        let plus = CVector::from_element(4, c(0.5, 0.0));
        let out = evolve_diagonal(&plus, &h).unwrap();
        let expect = [0.5, 0.5, 0.5, -0.5];
        for (a, e) in out.iter().zip(expect) {
            assert!((a - c(e, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let g = Geometry::preset(Preset::SingleGateChain5);
        let h = ordered_couplings(&g, 1.0);
        assert!(evolve_diagonal(&CVector::zeros(8), &h).is_err());
    }

    #[test]
    fn cnot_output_dimension() {
        let g = Geometry::preset(Preset::CnotT4);
        let h = ordered_couplings(&g, 2.0);
        let plan = MeasurementPlan::fixed_angles(&[1, 2], &[0.0, 0.0]).unwrap();
        let v = conditional_map(&g, &h, &plan, Branch::sharp(Outcome(2))).unwrap();
        assert_eq!(v.shape(), (4, 4));
    }

    #[test]
    fn plan_must_match_measured_set() {
        let g = Geometry::preset(Preset::CnotT4);
        let h = ordered_couplings(&g, 2.0);
        let plan = MeasurementPlan::fixed_angles(&[2], &[0.0]).unwrap();
        assert!(matches!(
            conditional_map(&g, &h, &plan, Branch::sharp(Outcome(0))),
            Err(Error::InvalidPlan(_))
        ));
    }
}
