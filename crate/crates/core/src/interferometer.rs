//! Mach–Zehnder propagation (beam splitter, phase `psi` on the upper arm, beam
//! splitter) and number-resolved coincidence fringes.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::fock::{
    bs_transform, displaced_tmsv_component, BeamSplitter, PhotonComponent, SourceParams,
};

/// Photon counts registered at the two exit ports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DetectionPattern {
    pub upper: usize,
    pub lower: usize,
}

impl DetectionPattern {
    pub fn new(upper: usize, lower: usize) -> Self {
        Self { upper, lower }
    }

    pub fn n_total(&self) -> usize {
        self.upper + self.lower
    }

    /// Every pattern `(k, n_total - k)`.
    pub fn all(n_total: usize) -> impl Iterator<Item = DetectionPattern> {
        (0..=n_total).map(move |k| DetectionPattern::new(k, n_total - k))
    }
}

/// Probability of one detection pattern sampled over the interferometer phase.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoincidenceSignal {
    psi_samples: Vec<f64>,
    probabilities: Vec<f64>,
    pattern: DetectionPattern,
    relative_units: bool,
}

impl CoincidenceSignal {
    pub fn from_samples(
        psi_samples: Vec<f64>,
        probabilities: Vec<f64>,
        pattern: DetectionPattern,
        relative_units: bool,
    ) -> Result<Self> {
        if psi_samples.len() != probabilities.len() {
            return Err(Error::Domain(format!(
                "{} phase samples but {} probabilities",
                psi_samples.len(),
                probabilities.len()
            )));
        }
        if psi_samples.iter().any(|p| !p.is_finite()) {
            return Err(Error::Domain("phase samples must be finite".into()));
        }
        if probabilities.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::Domain(
                "probabilities must be finite and non-negative".into(),
            ));
        }
        Ok(Self {
            psi_samples,
            probabilities,
            pattern,
            relative_units,
        })
    }

    pub fn psi_samples(&self) -> &[f64] {
        &self.psi_samples
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn pattern(&self) -> DetectionPattern {
        self.pattern
    }

    pub fn relative_units(&self) -> bool {
        self.relative_units
    }

    pub fn len(&self) -> usize {
        self.psi_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi_samples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Harmonic {
    pub amplitude: f64,
    pub phase: f64,
}

/// Real Fourier series `f(psi) = sum_k A_k cos(k psi + phase_k)` of a sampled signal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicSpectrum {
    pub coefficients: BTreeMap<usize, Harmonic>,
    /// Harmonic `k >= 1` with the largest amplitude (smallest `k` on ties);
    /// `None` when the signal has no resolvable AC component.
    pub dominant_ac: Option<usize>,
}

impl HarmonicSpectrum {
    pub fn amplitude(&self, k: usize) -> f64 {
        self.coefficients.get(&k).map_or(0.0, |h| h.amplitude)
    }

    pub fn phase(&self, k: usize) -> f64 {
        self.coefficients.get(&k).map_or(0.0, |h| h.phase)
    }

    pub fn max_harmonic(&self) -> usize {
        self.coefficients.keys().next_back().copied().unwrap_or(0)
    }

    pub fn reconstruct(&self, psi: f64) -> f64 {
        self.coefficients
            .iter()
            .map(|(&k, h)| h.amplitude * (k as f64 * psi + h.phase).cos())
            .sum()
    }
}

/// `n` equally spaced phases `j * 2pi / n` on `[0, 2pi)`.
pub fn uniform_psi_grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| j as f64 * TAU / n as f64).collect()
}

/// Output state `U_BS Phi(psi) U_BS |component>` over the `|m, N-m>` basis.
pub fn mz_output(component: &PhotonComponent, psi: f64, bs: &BeamSplitter) -> PhotonComponent {
    let inside = bs_transform(component, bs);
    component.with_amplitudes(propagate_inside(&inside, psi, bs))
}

/// Phase on the upper arm followed by the second beam splitter.
fn propagate_inside(inside: &PhotonComponent, psi: f64, bs: &BeamSplitter) -> Vec<Complex64> {
    let shifted: Vec<Complex64> = inside
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(m, c)| c * Complex64::from_polar(1.0, m as f64 * psi))
        .collect();
    bs.unitary(inside.n_total()).apply(&shifted)
}

fn check_pattern(component: &PhotonComponent, pattern: DetectionPattern) -> Result<()> {
    if pattern.n_total() != component.n_total() {
        return Err(Error::Domain(format!(
            "pattern ({}, {}) detects {} photons but the component has {}",
            pattern.upper,
            pattern.lower,
            pattern.n_total(),
            component.n_total()
        )));
    }
    Ok(())
}

/// `|<pattern| U_BS Phi(psi) U_BS |component>|^2` for the unnormalized component,
/// with `Phi(psi)` applying `e^{i m psi}` to `|m, N-m>`.
pub fn mz_pattern_probability(
    component: &PhotonComponent,
    psi: f64,
    pattern: DetectionPattern,
    bs: &BeamSplitter,
) -> Result<f64> {
    check_pattern(component, pattern)?;
    ensure_finite("psi", psi)?;
    Ok(mz_output(component, psi, bs)
        .amplitude(pattern.upper)
        .norm_sqr())
}

/// Coincidence signal of one pattern for a fixed component.
pub fn component_signal(
    component: &PhotonComponent,
    pattern: DetectionPattern,
    psi_grid: &[f64],
    bs: &BeamSplitter,
) -> Result<CoincidenceSignal> {
    check_pattern(component, pattern)?;
    for &psi in psi_grid {
        ensure_finite("psi", psi)?;
    }
    let inside = bs_transform(component, bs);
    let probabilities: Vec<f64> = psi_grid
        .par_iter()
        .map(|&psi| propagate_inside(&inside, psi, bs)[pattern.upper].norm_sqr())
        .collect();
    CoincidenceSignal::from_samples(psi_grid.to_vec(), probabilities, pattern, true)
}

/// Builds the `n_total`-photon slice of the source once and samples the
/// pattern probability over `psi_grid`. Values are in the relative units of
/// [`displaced_tmsv_component`].
pub fn coincidence_signal_sweep(
    src: &SourceParams,
    n_total: usize,
    pattern: DetectionPattern,
    psi_grid: &[f64],
) -> Result<CoincidenceSignal> {
    let component = displaced_tmsv_component(src, n_total)?;
    component_signal(&component, pattern, psi_grid, BeamSplitter::shared())
}

/// Discrete Fourier analysis of a signal sampled on a uniform grid covering
/// one period.
pub fn fringe_harmonics(signal: &CoincidenceSignal) -> Result<HarmonicSpectrum> {
    let samples = signal.len();
    let n_total = signal.pattern().n_total();
    if samples == 0 || samples < 4 * n_total {
        return Err(Error::Domain(format!(
            "{samples} samples cannot resolve a {n_total}-photon fringe (need at least {})",
            (4 * n_total).max(1)
        )));
    }
    let step = TAU / samples as f64;
    let start = signal.psi_samples()[0];
    for (j, &psi) in signal.psi_samples().iter().enumerate() {
        if (psi - start - j as f64 * step).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "phase grid is not uniform over one period (sample {j} is {psi})"
            )));
        }
    }

    let k_max = samples / 2;
    let mut coefficients = BTreeMap::new();
    for k in 0..=k_max {
        let sum: Complex64 = signal
            .psi_samples()
            .iter()
            .zip(signal.probabilities())
            .map(|(&psi, &p)| p * Complex64::from_polar(1.0, -(k as f64) * psi))
            .sum();
        let coeff = sum / samples as f64;
        let one_sided = k == 0 || (samples.is_multiple_of(2) && k == k_max);
        let amplitude = if one_sided {
            coeff.norm()
        } else {
            2.0 * coeff.norm()
        };
        coefficients.insert(
            k,
            Harmonic {
                amplitude,
                phase: coeff.arg(),
            },
        );
    }

    let dc = coefficients[&0].amplitude;
    let mut dominant_ac = None;
    let mut best = 0.0;
    for (&k, h) in coefficients.range(1..) {
        if h.amplitude > best {
            best = h.amplitude;
            dominant_ac = Some(k);
        }
    }
    // Rounding noise on a flat signal is not a fringe.
    if best <= 1e-12 * dc.max(f64::MIN_POSITIVE) {
        dominant_ac = None;
    }
    Ok(HarmonicSpectrum {
        coefficients,
        dominant_ac,
    })
}

/// Amplitude of `harmonic` relative to the mean level.
pub fn visibility(signal: &CoincidenceSignal, harmonic: usize) -> Result<f64> {
    if harmonic == 0 {
        return Err(Error::Domain(
            "visibility needs an AC harmonic (k >= 1)".into(),
        ));
    }
    let spectrum = fringe_harmonics(signal)?;
    if harmonic > spectrum.max_harmonic() {
        return Err(Error::Domain(format!(
            "harmonic {harmonic} exceeds the Nyquist limit {} of the grid",
            spectrum.max_harmonic()
        )));
    }
    let mean = spectrum.amplitude(0);
    if mean.is_nan() || mean <= 0.0 {
        return Err(Error::Degenerate("signal has zero mean".into()));
    }
    Ok(spectrum.amplitude(harmonic) / mean)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tone_signal(n: usize, f: impl Fn(f64) -> f64) -> CoincidenceSignal {
        let grid = uniform_psi_grid(n);
        let values = grid.iter().map(|&p| f(p)).collect();
        CoincidenceSignal::from_samples(grid, values, DetectionPattern::new(2, 2), false).unwrap()
    }

    #[test]
    fn single_photon_fringe() {
        let bs = BeamSplitter::shared();
        let c = PhotonComponent::fock(1, 0);
        for psi in [0.0, 0.4, 1.3, 3.0] {
            let upper = mz_pattern_probability(&c, psi, DetectionPattern::new(1, 0), bs).unwrap();
            let lower = mz_pattern_probability(&c, psi, DetectionPattern::new(0, 1), bs).unwrap();
            assert!((upper - (1.0 - psi.cos()) / 2.0).abs() < 1e-14);
            assert!((lower - (1.0 + psi.cos()) / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn two_photon_fringe() {
        // |1,1> -> (i/sqrt2)(|2,0> + |0,2>), phase, then the second splitter:
        // P(1,1) = (1 + cos 2psi)/2
        let bs = BeamSplitter::shared();
        let c = PhotonComponent::fock(1, 1);
        for psi in [0.0, 0.3, 0.9, 2.2] {
            let p = mz_pattern_probability(&c, psi, DetectionPattern::new(1, 1), bs).unwrap();
            assert!(
                (p - (1.0 + (2.0 * psi).cos()) / 2.0).abs() < 1e-14,
                "psi={psi} p={p}"
            );
        }
        let signal =
            component_signal(&c, DetectionPattern::new(1, 1), &uniform_psi_grid(32), bs).unwrap();
        assert_eq!(fringe_harmonics(&signal).unwrap().dominant_ac, Some(2));
    }

    #[test]
    fn pattern_mismatch_is_rejected() {
        let c = PhotonComponent::fock(2, 1);
        let err =
            mz_pattern_probability(&c, 0.0, DetectionPattern::new(2, 2), BeamSplitter::shared());
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn constant_signal_spectrum() {
        let s = tone_signal(32, |_| 0.7);
        let spec = fringe_harmonics(&s).unwrap();
        assert!((spec.amplitude(0) - 0.7).abs() < 1e-15);
        for k in 1..=16 {
            assert!(spec.amplitude(k) < 1e-14);
        }
        assert_eq!(spec.dominant_ac, None);
        assert_eq!(
            visibility(&s, 4).unwrap(),
            spec.amplitude(4) / spec.amplitude(0)
        );
        assert!(visibility(&s, 4).unwrap() < 1e-14);
    }

    #[test]
    fn pure_tone_spectrum() {
        let s = tone_signal(64, |p| 1.0 + (4.0 * p).cos());
        let spec = fringe_harmonics(&s).unwrap();
        assert!((spec.amplitude(0) - 1.0).abs() < 1e-12);
        assert!((spec.amplitude(4) - 1.0).abs() < 1e-12);
        for k in (1..=32).filter(|&k| k != 4) {
            assert!(spec.amplitude(k) < 1e-12, "k={k}");
        }
        assert_eq!(spec.dominant_ac, Some(4));
        assert!((visibility(&s, 4).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reconstruction() {
        let f =
            |p: f64| 2.0 + 0.5 * (p + 0.3).cos() - 0.25 * (3.0 * p).sin() + 0.1 * (8.0 * p).cos();
        let s = tone_signal(16, f);
        let spec = fringe_harmonics(&s).unwrap();
        for p in uniform_psi_grid(16) {
            assert!((spec.reconstruct(p) - f(p)).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_errors() {
        let short = tone_signal(8, |_| 1.0);
        assert!(fringe_harmonics(&short).is_err());
        let mut grid = uniform_psi_grid(32);
        grid[5] += 0.01;
        let bumpy = CoincidenceSignal::from_samples(
            grid,
            vec![1.0; 32],
            DetectionPattern::new(2, 2),
            false,
        )
        .unwrap();
        assert!(matches!(fringe_harmonics(&bumpy), Err(Error::Domain(_))));
        let zero = tone_signal(32, |_| 0.0);
        assert!(matches!(visibility(&zero, 4), Err(Error::Degenerate(_))));
        assert!(matches!(visibility(&zero, 0), Err(Error::Domain(_))));
        assert!(CoincidenceSignal::from_samples(
            vec![0.0],
            vec![-1.0],
            DetectionPattern::new(0, 0),
            true
        )
        .is_err());
        assert!(CoincidenceSignal::from_samples(
            vec![0.0, 1.0],
            vec![1.0],
            DetectionPattern::new(0, 0),
            true
        )
        .is_err());
    }
}
