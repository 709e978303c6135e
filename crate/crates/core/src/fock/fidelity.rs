use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;

use super::{bs_transform, BeamSplitter, PhotonComponent};

/// NOON fidelity of a component after the first beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityResult {
    /// Maximum over the NOON relative phase.
    pub fidelity: f64,
    /// Relative phase of `|0,N>` against `|N,0>` at the maximum, in `(-pi, pi]`.
    pub noon_phase: f64,
    /// Fidelity against `(|N,0> + |0,N>)/sqrt2`.
    pub fixed_phase_fidelity: f64,
}

/// Overlap of the normalized, beam-split component with the NOON state.
///
/// With `a = <N,0|U|psi>` and `b = <0,N|U|psi>` the overlap with
/// `(|N,0> + e^{i L}|0,N>)/sqrt2` is `|a + e^{-i L} b|^2 / 2`, maximized at
/// `L = arg b - arg a` where it equals `(|a| + |b|)^2 / 2`.
pub fn noon_fidelity(component: &PhotonComponent, bs: &BeamSplitter) -> Result<FidelityResult> {
    let (a, b) = noon_projections(component, bs)?;
    let fidelity = (0.5 * (a.norm() + b.norm()).powi(2)).min(1.0);
    let fixed_phase_fidelity = (0.5 * (a + b).norm_sqr()).min(fidelity);
    let noon_phase = if a.norm() == 0.0 || b.norm() == 0.0 {
        0.0
    } else {
        (b * a.conj()).arg()
    };
    Ok(FidelityResult {
        fidelity,
        noon_phase,
        fixed_phase_fidelity,
    })
}

/// Fidelity against `(|N,0> + e^{i noon_phase}|0,N>)/sqrt2` for one fixed phase.
pub fn noon_fidelity_at_phase(
    component: &PhotonComponent,
    bs: &BeamSplitter,
    noon_phase: f64,
) -> Result<f64> {
    let (a, b) = noon_projections(component, bs)?;
    Ok(0.5 * (a + Complex64::from_polar(1.0, -noon_phase) * b).norm_sqr())
}

fn noon_projections(
    component: &PhotonComponent,
    bs: &BeamSplitter,
) -> Result<(Complex64, Complex64)> {
    let out = bs_transform(&component.normalize()?, bs);
    let n = component.n_total();
    Ok((out.amplitude(n), out.amplitude(0)))
}
