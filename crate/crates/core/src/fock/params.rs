use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Physical description of the stimulated down-conversion source: a two-mode
/// squeezer of gain `r` and phase `phi`, followed by coherent seeds `alpha0`
/// and `beta0` in the signal and idler modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SourceParams {
    r: f64,
    phi: f64,
    alpha_mag: f64,
    theta: f64,
    alpha0: Complex64,
    beta0: Complex64,
}

impl SourceParams {
    /// Symmetric seeding: `alpha0 == beta0 == alpha_mag * e^{i theta}` with `phi = 0`.
    pub fn symmetric(r: f64, alpha_mag: f64, theta: f64) -> Result<Self> {
        ensure_finite("alpha_mag", alpha_mag)?;
        ensure_finite("theta", theta)?;
        if alpha_mag < 0.0 {
            return Err(Error::Domain(format!(
                "alpha_mag must be non-negative, got {alpha_mag}"
            )));
        }
        let seed = Complex64::from_polar(alpha_mag, theta);
        let mut src = Self::new(r, 0.0, seed, seed)?;
        src.alpha_mag = alpha_mag;
        src.theta = theta;
        Ok(src)
    }

    /// General two-mode seeding. `alpha_mag` and `theta` are taken from `alpha0`.
    pub fn new(r: f64, phi: f64, alpha0: Complex64, beta0: Complex64) -> Result<Self> {
        ensure_finite("r", r)?;
        ensure_finite("phi", phi)?;
        for (name, z) in [("alpha0", alpha0), ("beta0", beta0)] {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::Domain(format!("{name} must be finite, got {z}")));
            }
        }
        if r < 0.0 {
            return Err(Error::Domain(format!(
                "gain r must be non-negative, got {r}"
            )));
        }
        Ok(Self {
            r,
            phi,
            alpha_mag: alpha0.norm(),
            theta: alpha0.arg(),
            alpha0,
            beta0,
        })
    }

    /// Two-mode squeezed vacuum with no seeding.
    pub fn spontaneous(r: f64, phi: f64) -> Result<Self> {
        Self::new(r, phi, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha_mag(&self) -> f64 {
        self.alpha_mag
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn alpha0(&self) -> Complex64 {
        self.alpha0
    }

    pub fn beta0(&self) -> Complex64 {
        self.beta0
    }

    /// The pair-creation amplitude `-e^{i phi} tanh r` of the squeezed vacuum.
    pub fn pair_amplitude(&self) -> Complex64 {
        -Complex64::from_polar(self.r.tanh(), self.phi)
    }

    pub fn is_vacuum(&self) -> bool {
        self.r == 0.0 && self.alpha0.norm_sqr() == 0.0 && self.beta0.norm_sqr() == 0.0
    }
}

/// How the pair amplitude ratio is converted to a coherent intensity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `|alpha|^2 = gamma * r`, appropriate for small gain.
    Weak,
    /// `|alpha|^2 = gamma * sinh^2 r`, appropriate when the pair flux scales as `sinh^4 r`.
    Strong,
}

impl Regime {
    /// Denominator of the ratio: `r` or `sinh^2 r`.
    pub fn pdc_scale(self, r: f64) -> f64 {
        match self {
            Regime::Weak => r,
            Regime::Strong => r.sinh().powi(2),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Weak => "weak",
            Regime::Strong => "strong",
        })
    }
}

/// Ratio of coherent to down-converted pair amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairAmplitudeRatio {
    pub gamma: f64,
    pub regime: Regime,
}

impl PairAmplitudeRatio {
    pub fn new(gamma: f64, regime: Regime) -> Result<Self> {
        ensure_finite("gamma", gamma)?;
        if gamma < 0.0 {
            return Err(Error::Domain(format!(
                "gamma must be non-negative, got {gamma}"
            )));
        }
        Ok(Self { gamma, regime })
    }

    /// Inverse mapping from a coherent amplitude back to the ratio.
    pub fn from_alpha_mag(alpha_mag: f64, r: f64, regime: Regime) -> Result<Self> {
        ensure_finite("alpha_mag", alpha_mag)?;
        ensure_finite("r", r)?;
        let scale = regime.pdc_scale(r);
        if scale <= 0.0 {
            return Err(Error::Domain(format!(
                "pair amplitude ratio undefined at r = {r}"
            )));
        }
        Self::new(alpha_mag * alpha_mag / scale, regime)
    }

    pub fn alpha_mag_sq(&self, r: f64) -> f64 {
        self.gamma * self.regime.pdc_scale(r)
    }

    pub fn alpha_mag(&self, r: f64) -> f64 {
        self.alpha_mag_sq(r).sqrt()
    }

    /// Symmetrically seeded source for this ratio at gain `r` and seed phase `theta`.
    pub fn source(&self, r: f64, theta: f64) -> Result<SourceParams> {
        ensure_finite("r", r)?;
        if r < 0.0 {
            return Err(Error::Domain(format!(
                "gain r must be non-negative, got {r}"
            )));
        }
        SourceParams::symmetric(r, self.alpha_mag(r), theta)
    }
}
