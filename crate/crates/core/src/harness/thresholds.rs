//! Characteristic fall-offs of an `F(α)` curve: the small-α maximum, the
//! saturation point and the fault-tolerance crossing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::GateSetup;

/// Accuracy demanded by fault-tolerance schemes.
pub const FT_ACCURACY: f64 = 0.9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdOptions {
    pub step: f64,
    pub alpha_stop: f64,
    /// The small-α maximum is searched on `[0, max_window)`.
    pub max_window: f64,
    /// Saturation means `1 − F ≤ saturation_tol`.
    pub saturation_tol: f64,
    /// Bisection / golden-section tolerance on α.
    pub refine_tol: f64,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self { step: 0.02, alpha_stop: 12.0, max_window: 2.0, saturation_tol: 1e-2, refine_tol: 1e-6 }
    }
}

impl ThresholdOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !(self.alpha_stop > self.step) {
            return Err(Error::InvalidConfig(format!(
                "α grid needs step > 0 and stop > step (step {}, stop {})",
                self.step, self.alpha_stop
            )));
        }
        if !(self.saturation_tol > 0.0 && self.saturation_tol < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "saturation tolerance {} outside (0, 1)",
                self.saturation_tol
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = (self.alpha_stop / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| i as f64 * self.step).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub gate: String,
    pub distance_mode: String,
    pub f_max: f64,
    pub alpha_max: f64,
    /// `None` when the curve never saturates on the grid.
    pub alpha_s: Option<f64>,
    /// `None` when `F` never reaches the fault-tolerance accuracy.
    pub alpha_th: Option<f64>,
    pub saturation_tol: f64,
}

/// `F(α)` on the grid, evaluated in parallel and returned in grid order.
pub fn fidelity_curve(setup: &GateSetup, alphas: &[f64]) -> Result<Vec<f64>> {
    alphas.par_iter().map(|&a| setup.optimized_fidelity(a)).collect()
}

pub fn thresholds(setup: &GateSetup, opts: &ThresholdOptions) -> Result<ThresholdReport> {
    opts.validate()?;
    let alphas = opts.grid();
    let curve = fidelity_curve(setup, &alphas)?;
    let f = |a: f64| setup.optimized_fidelity(a);

    // Grid argmax on the window, then a golden-section polish within one step.
    let mut best = 0;
    for (i, (&a, &v)) in alphas.iter().zip(&curve).enumerate() {
        if a < opts.max_window && v > curve[best] {
            best = i;
        }
    }
    let lo = (alphas[best] - opts.step).max(0.0);
    let hi = (alphas[best] + opts.step).min(opts.max_window);
    let (a_ref, f_ref) = golden_max(&f, lo, hi, opts.refine_tol)?;
    let (alpha_max, f_max) =
        if f_ref > curve[best] { (a_ref, f_ref) } else { (alphas[best], curve[best]) };

    let alpha_s = last_crossing(&f, &alphas, &curve, 1.0 - opts.saturation_tol, opts.refine_tol)?;
    let alpha_th = last_crossing(&f, &alphas, &curve, FT_ACCURACY, opts.refine_tol)?;

    Ok(ThresholdReport {
        gate: setup.gate_label(),
        distance_mode: setup.geometry.distance_mode().as_str().to_string(),
        f_max,
        alpha_max,
        alpha_s,
        alpha_th,
        saturation_tol: opts.saturation_tol,
    })
}

/// Smallest α beyond which the curve stays at or above `level`. `None` if
/// the last grid point is still below; `Some(0)` if the whole curve is above.
fn last_crossing(
    f: &impl Fn(f64) -> Result<f64>,
    alphas: &[f64],
    curve: &[f64],
    level: f64,
    tol: f64,
) -> Result<Option<f64>> {
    let Some(i) = curve.iter().rposition(|&v| v < level) else {
        return Ok(Some(alphas[0]));
    };
    if i + 1 == curve.len() {
        return Ok(None);
    }
    let (mut lo, mut hi) = (alphas[i], alphas[i + 1]);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

fn golden_max(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}
