//! Brute-force construction of `D(alpha0, beta0) S(r, phi)|0>` on a truncated
//! two-mode Fock space, independent of the closed-form slice amplitudes.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::amplitudes::tmsv_coefficient;
use super::displacement::displacement_matrix;
use super::{PhotonComponent, SourceParams};

/// Largest probability weight the oracle may discard before it refuses.
pub const ORACLE_MISSING_WEIGHT_TOLERANCE: f64 = 1e-12;

/// Default cutoff `max(30, ceil(nbar + 8 sqrt(nbar)))` where `nbar` is the
/// larger single-mode mean photon number `sinh^2 r + |seed|^2`.
pub fn oracle_cutoff(src: &SourceParams) -> usize {
    let seed = src.alpha0().norm_sqr().max(src.beta0().norm_sqr());
    let nbar = src.r().sinh().powi(2) + seed;
    let rule = (nbar + 8.0 * nbar.sqrt()).ceil();
    (rule as usize).max(30)
}

/// Amplitudes `<j, k| D(alpha0, beta0) S(r, phi) |0>` for `j, k <= cutoff`.
#[derive(Debug, Clone)]
pub struct TwoModeTable {
    cutoff: usize,
    amplitudes: Vec<Complex64>,
}

impl TwoModeTable {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        let dim = self.cutoff + 1;
        self.amplitudes[j * dim + k]
    }

    pub fn total_probability(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// The `n_total`-photon slice with absolute (normalization-bearing) amplitudes.
    pub fn slice(&self, n_total: usize) -> Result<PhotonComponent> {
        if n_total > self.cutoff {
            return Err(Error::Domain(format!(
                "slice N = {n_total} exceeds oracle cutoff {}",
                self.cutoff
            )));
        }
        PhotonComponent::from_amplitudes((0..=n_total).map(|m| self.get(m, n_total - m)).collect())
    }
}

/// Sums the squeezed-vacuum pair series against displacement matrix elements:
///
/// ```text
/// <j,k|psi> = sum_n C(n,n) <j|D(alpha0)|n> <k|D(beta0)|n>
/// ```
///
/// Fails with [`Error::Accuracy`] when more than
/// [`ORACLE_MISSING_WEIGHT_TOLERANCE`] of the probability lies outside the table.
pub fn truncated_state_oracle(src: &SourceParams, cutoff: usize) -> Result<TwoModeTable> {
    let dim = cutoff + 1;
    let da = displacement_matrix(src.alpha0(), dim);
    let db = displacement_matrix(src.beta0(), dim);
    let pairs: Vec<Complex64> = (0..dim)
        .map(|n| tmsv_coefficient(src.r(), src.phi(), n, n))
        .collect();

    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        for n in 0..dim {
            let left = pairs[n] * da[j * dim + n];
            if left.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..dim {
                amplitudes[j * dim + k] += left * db[k * dim + n];
            }
        }
    }

    let table = TwoModeTable { cutoff, amplitudes };
    let missing_weight = (1.0 - table.total_probability()).max(0.0);
    if !missing_weight.is_finite() || missing_weight > ORACLE_MISSING_WEIGHT_TOLERANCE {
        return Err(Error::Accuracy {
            cutoff,
            missing_weight,
            tolerance: ORACLE_MISSING_WEIGHT_TOLERANCE,
        });
    }
    Ok(table)
}
