use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// The `N`-photon slice of a two-mode state: `amplitudes[m]` is the amplitude of
/// `|m, N - m>`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhotonComponent {
    n_total: usize,
    amplitudes: Vec<Complex64>,
    normalized: bool,
    weight: f64,
}

impl PhotonComponent {
    /// Wraps raw amplitudes; `n_total` is `amplitudes.len() - 1`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Domain(
                "a photon component needs at least one amplitude".into(),
            ));
        }
        if amplitudes
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::Domain("amplitudes must be finite".into()));
        }
        let weight = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        Ok(Self {
            n_total: amplitudes.len() - 1,
            amplitudes,
            normalized: false,
            weight,
        })
    }

    /// The Fock state `|upper, lower>`.
    pub fn fock(upper: usize, lower: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); upper + lower + 1];
        amplitudes[upper] = Complex64::new(1.0, 0.0);
        Self {
            n_total: upper + lower,
            amplitudes,
            normalized: true,
            weight: 1.0,
        }
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, upper: usize) -> Complex64 {
        self.amplitudes[upper]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Squared norm the component carried before any normalization.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Current squared norm of the stored amplitudes.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Unit-norm copy. The original weight is kept.
    pub fn normalize(&self) -> Result<Self> {
        let norm_sqr = self.norm_sqr();
        if norm_sqr <= 0.0 || !norm_sqr.is_finite() {
            return Err(Error::Degenerate(format!(
                "{}-photon component has zero weight",
                self.n_total
            )));
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(Self {
            n_total: self.n_total,
            amplitudes: self.amplitudes.iter().map(|c| c * scale).collect(),
            normalized: true,
            weight: self.weight,
        })
    }

    pub(crate) fn with_amplitudes(&self, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), self.amplitudes.len());
        Self {
            n_total: self.n_total,
            amplitudes,
            normalized: self.normalized,
            weight: self.weight,
        }
    }
}
