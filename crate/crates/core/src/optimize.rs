//! Fidelity sweeps over the seed phase, deterministic `(gamma, theta)`
//! optimization, and photon-flux bookkeeping.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::fock::{
    displaced_tmsv_component, noon_fidelity, BeamSplitter, PairAmplitudeRatio, Regime, SourceParams,
};

/// A family of fidelity-vs-`theta` curves at fixed gain and photon number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub r: f64,
    pub n_total: usize,
    pub regime: Regime,
    /// Number of points of the uniform `theta` grid over `[0, 2pi)`.
    pub theta_points: usize,
    pub gamma_values: Vec<f64>,
    pub phi: f64,
}

impl SweepSpec {
    pub fn new(
        r: f64,
        n_total: usize,
        regime: Regime,
        theta_points: usize,
        gamma_values: Vec<f64>,
    ) -> Self {
        Self {
            r,
            n_total,
            regime,
            theta_points,
            gamma_values,
            phi: 0.0,
        }
    }

    pub fn theta_grid(&self) -> Vec<f64> {
        uniform_theta_grid(self.theta_points)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("r", self.r)?;
        ensure_finite("phi", self.phi)?;
        if self.r < 0.0 {
            return Err(Error::Domain(format!(
                "gain r must be non-negative, got {}",
                self.r
            )));
        }
        if self.theta_points == 0 {
            return Err(Error::Domain("theta grid is empty".into()));
        }
        if self.gamma_values.is_empty() {
            return Err(Error::Domain("no gamma values given".into()));
        }
        for &g in &self.gamma_values {
            PairAmplitudeRatio::new(g, self.regime)?;
        }
        Ok(())
    }
}

pub fn uniform_theta_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|j| j as f64 * TAU / points as f64)
        .collect()
}

/// Source with `alpha0 = beta0 = |alpha| e^{i theta}` where `|alpha|^2` follows
/// from `gamma` and the regime.
pub fn seeded_source(
    r: f64,
    phi: f64,
    regime: Regime,
    gamma: f64,
    theta: f64,
) -> Result<SourceParams> {
    let ratio = PairAmplitudeRatio::new(gamma, regime)?;
    let symmetric = ratio.source(r, theta)?;
    if phi == 0.0 {
        Ok(symmetric)
    } else {
        SourceParams::new(r, phi, symmetric.alpha0(), symmetric.beta0())
    }
}

/// Phase-optimized NOON fidelity of the `n_total`-photon slice.
pub fn fidelity_at(
    r: f64,
    phi: f64,
    n_total: usize,
    regime: Regime,
    gamma: f64,
    theta: f64,
) -> Result<f64> {
    let src = seeded_source(r, phi, regime, gamma, theta)?;
    let component = displaced_tmsv_component(&src, n_total)?;
    Ok(noon_fidelity(&component, BeamSplitter::shared())?.fidelity)
}

/// `(theta, fidelity)` over the spec's `theta` grid for one `gamma`.
pub fn fidelity_vs_theta(spec: &SweepSpec, gamma: f64) -> Result<Vec<(f64, f64)>> {
    spec.validate()?;
    PairAmplitudeRatio::new(gamma, spec.regime)?;
    spec.theta_grid()
        .into_par_iter()
        .map(|theta| {
            Ok((
                theta,
                fidelity_at(spec.r, spec.phi, spec.n_total, spec.regime, gamma, theta)?,
            ))
        })
        .collect()
}

/// Grid sizes and stopping rule of the nested-grid optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub theta_points: usize,
    pub gamma_points: usize,
    /// Refinement rounds always performed after the coarse pass.
    pub refine_rounds: usize,
    /// Refinement continues past `refine_rounds` while a round improves the
    /// incumbent by at least this much.
    pub tolerance: f64,
    pub max_rounds: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            theta_points: 64,
            gamma_points: 64,
            refine_rounds: 4,
            tolerance: 1e-6,
            max_rounds: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Optimum {
    pub gamma_star: f64,
    pub theta_star: f64,
    pub fidelity_star: f64,
    /// `(theta, fidelity)` at `gamma_star` on the coarse `theta` grid with
    /// `theta_star` merged in.
    pub curve: Vec<(f64, f64)>,
    /// Best fidelity found by the coarse pass alone.
    pub coarse_best: f64,
}

pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
struct Candidate {
    gamma: f64,
    theta: f64,
    fidelity: f64,
}

impl Candidate {
    /// Higher fidelity wins; ties go to the smaller theta, then the smaller gamma.
    /// Fidelities closer than [`TIE_TOLERANCE`] tie, so exact symmetries such as
    /// `theta -> theta + pi` at odd N are not decided by rounding.
    fn beats(&self, other: &Candidate) -> bool {
        if (self.fidelity - other.fidelity).abs() > TIE_TOLERANCE
            || self.fidelity == f64::NEG_INFINITY
        {
            return self.fidelity > other.fidelity;
        }
        if self.theta != other.theta {
            return self.theta < other.theta;
        }
        self.gamma < other.gamma
    }
}

struct Problem {
    r: f64,
    n_total: usize,
    regime: Regime,
    gamma_lo: f64,
    gamma_hi: f64,
}

impl Problem {
    fn evaluate(&self, points: &[(f64, f64)]) -> Result<Candidate> {
        let evaluated: Vec<Candidate> = points
            .par_iter()
            .map(|&(gamma, theta)| {
                // Points where the slice is empty have no fidelity; they never win.
                let fidelity =
                    match fidelity_at(self.r, 0.0, self.n_total, self.regime, gamma, theta) {
                        Ok(f) => f,
                        Err(Error::Degenerate(_)) => f64::NEG_INFINITY,
                        Err(e) => return Err(e),
                    };
                Ok(Candidate {
                    gamma,
                    theta,
                    fidelity,
                })
            })
            .collect::<Result<_>>()?;
        let mut best = evaluated[0];
        for c in &evaluated[1..] {
            if c.beats(&best) {
                best = *c;
            }
        }
        if best.fidelity == f64::NEG_INFINITY {
            return Err(Error::Degenerate(format!(
                "{}-photon component is empty everywhere in the search window",
                self.n_total
            )));
        }
        Ok(best)
    }

    fn gamma_axis(&self, center: f64, half: f64, points: usize) -> Vec<f64> {
        if self.gamma_hi == self.gamma_lo || points < 2 {
            return vec![center];
        }
        let lo = (center - half).max(self.gamma_lo);
        let hi = (center + half).min(self.gamma_hi);
        linspace(lo, hi, points)
    }
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points < 2 || hi == lo {
        return vec![lo];
    }
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

fn wrap_theta(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Maximizes the phase-optimized NOON fidelity over `gamma` in `gamma_bounds`
/// and `theta` in `[0, 2pi)` at `phi = 0`.
///
/// A coarse `gamma_points x theta_points` grid is followed by successive
/// windows of the same size centred on the incumbent, each window spanning two
/// spacings of the previous one. The incumbent is never replaced by a worse
/// point, so the result dominates every coarse grid point.
pub fn optimize_gamma_theta(
    r: f64,
    n_total: usize,
    regime: Regime,
    gamma_bounds: (f64, f64),
    config: &OptimizerConfig,
) -> Result<Optimum> {
    let (gamma_lo, gamma_hi) = gamma_bounds;
    ensure_finite("gamma lower bound", gamma_lo)?;
    ensure_finite("gamma upper bound", gamma_hi)?;
    if gamma_lo > gamma_hi || gamma_lo < 0.0 {
        return Err(Error::Domain(format!(
            "gamma bounds [{gamma_lo}, {gamma_hi}] are empty or negative"
        )));
    }
    if config.theta_points == 0 || config.gamma_points == 0 {
        return Err(Error::Domain("optimizer grids must be non-empty".into()));
    }
    ensure_finite("r", r)?;
    let problem = Problem {
        r,
        n_total,
        regime,
        gamma_lo,
        gamma_hi,
    };

    let gammas = linspace(gamma_lo, gamma_hi, config.gamma_points);
    let thetas = uniform_theta_grid(config.theta_points);
    let coarse: Vec<(f64, f64)> = gammas
        .iter()
        .flat_map(|&g| thetas.iter().map(move |&t| (g, t)))
        .collect();
    let coarse_best = problem.evaluate(&coarse)?;
    let mut best = coarse_best;

    let mut gamma_half = if gammas.len() > 1 {
        gammas[1] - gammas[0]
    } else {
        0.0
    };
    let mut theta_half = TAU / config.theta_points as f64;
    let curve = loop {
        let mut round = 0;
        while round < config.max_rounds {
            let g_axis = problem.gamma_axis(best.gamma, gamma_half, config.gamma_points);
            let t_axis: Vec<f64> = linspace(
                best.theta - theta_half,
                best.theta + theta_half,
                config.theta_points.max(3),
            )
            .into_iter()
            .map(wrap_theta)
            .collect();
            let window: Vec<(f64, f64)> = g_axis
                .iter()
                .flat_map(|&g| t_axis.iter().map(move |&t| (g, t)))
                .collect();
            let candidate = problem.evaluate(&window)?;
            let improvement = candidate.fidelity - best.fidelity;
            if candidate.beats(&best) {
                best = candidate;
            }
            if g_axis.len() > 1 {
                gamma_half = 2.0 * gamma_half / (g_axis.len() - 1) as f64;
            }
            theta_half = 2.0 * theta_half / (t_axis.len() - 1) as f64;
            round += 1;
            if round >= config.refine_rounds && improvement < config.tolerance {
                break;
            }
        }

        let spec = SweepSpec {
            r,
            n_total,
            regime,
            theta_points: config.theta_points,
            gamma_values: vec![best.gamma],
            phi: 0.0,
        };
        let mut curve = fidelity_vs_theta(&spec, best.gamma)?;
        // Another peak on the grid at gamma_star beats the refined point:
        // restart the refinement from there.
        let gamma = best.gamma;
        if let Some(better) = curve
            .iter()
            .map(|&(theta, fidelity)| Candidate {
                gamma,
                theta,
                fidelity,
            })
            .find(|c| c.beats(&best))
        {
            best = better;
            gamma_half = 0.0;
            theta_half = TAU / config.theta_points as f64;
            continue;
        }
        let pos = curve.partition_point(|&(t, _)| t < best.theta);
        if curve.get(pos).is_none_or(|&(t, _)| t != best.theta) {
            curve.insert(pos, (best.theta, best.fidelity));
        }
        break curve;
    };

    Ok(Optimum {
        gamma_star: best.gamma,
        theta_star: best.theta,
        fidelity_star: best.fidelity,
        curve,
        coarse_best: coarse_best.fidelity,
    })
}

/// Maximum over `theta` at a fixed `gamma`.
pub fn max_fidelity_over_theta(
    r: f64,
    n_total: usize,
    regime: Regime,
    gamma: f64,
    config: &OptimizerConfig,
) -> Result<Optimum> {
    optimize_gamma_theta(r, n_total, regime, (gamma, gamma), config)
}

/// Mean photon and pair numbers of the source at a given pair amplitude ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluxReport {
    /// `sinh^4 r`
    pub mean_pdc_pairs: f64,
    /// `sinh^2 r + |alpha|^2`
    pub mean_photons_per_mode: f64,
    /// `|alpha|^4`
    pub coherent_pair_flux: f64,
    pub alpha_mag_sq: f64,
    pub gamma: f64,
    pub regime: Regime,
}

pub fn flux_report(r: f64, gamma: f64, regime: Regime) -> Result<FluxReport> {
    ensure_finite("r", r)?;
    if r < 0.0 {
        return Err(Error::Domain(format!(
            "gain r must be non-negative, got {r}"
        )));
    }
    let ratio = PairAmplitudeRatio::new(gamma, regime)?;
    let pdc = r.sinh().powi(2);
    let alpha_mag_sq = ratio.alpha_mag_sq(r);
    Ok(FluxReport {
        mean_pdc_pairs: pdc * pdc,
        mean_photons_per_mode: pdc + alpha_mag_sq,
        coherent_pair_flux: alpha_mag_sq * alpha_mag_sq,
        alpha_mag_sq,
        gamma,
        regime,
    })
}

/// Phase-optimized fidelity for arbitrary seeds and pump phase.
pub fn fidelity_for_seeds(
    r: f64,
    phi: f64,
    alpha0: Complex64,
    beta0: Complex64,
    n_total: usize,
) -> Result<f64> {
    let src = SourceParams::new(r, phi, alpha0, beta0)?;
    Ok(noon_fidelity(
        &displaced_tmsv_component(&src, n_total)?,
        BeamSplitter::shared(),
    )?
    .fidelity)
}
