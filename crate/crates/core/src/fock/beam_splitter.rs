use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::special::{binomial, ln_factorial};

use super::PhotonComponent;

/// 50/50 beam-splitter conventions. Only the symmetric one is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BsConvention {
    /// `a^+ -> (a^+ + i b^+)/sqrt2`, `b^+ -> (i a^+ + b^+)/sqrt2`.
    Symmetric,
}

/// Unitary acting on the `|m, N - m>` basis of one photon-number sector,
/// row-major: `element(j, n) = <j, N-j| U |n, N-n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorUnitary {
    n_total: usize,
    elements: Vec<Complex64>,
}

impl SectorUnitary {
    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn dim(&self) -> usize {
        self.n_total + 1
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.elements[row * self.dim() + col]
    }

    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        let dim = self.dim();
        assert_eq!(input.len(), dim, "amplitude count does not match sector");
        (0..dim)
            .map(|row| {
                self.elements[row * dim..(row + 1) * dim]
                    .iter()
                    .zip(input)
                    .map(|(u, c)| u * c)
                    .sum()
            })
            .collect()
    }

    /// Applies `U^dagger`.
    pub fn apply_adjoint(&self, input: &[Complex64]) -> Vec<Complex64> {
        let dim = self.dim();
        assert_eq!(input.len(), dim, "amplitude count does not match sector");
        (0..dim)
            .map(|col| {
                (0..dim)
                    .map(|row| self.elements[row * dim + col].conj() * input[row])
                    .sum()
            })
            .collect()
    }

    fn symmetric(n_total: usize) -> Self {
        let dim = n_total + 1;
        let i_pow = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        let ln_half_pow = -0.5 * n_total as f64 * std::f64::consts::LN_2;
        let mut elements = vec![Complex64::new(0.0, 0.0); dim * dim];
        for col in 0..dim {
            // (a^+ + i b^+)^col (i a^+ + b^+)^(N-col), expanded in a^+^row b^+^(N-row)
            let rest = n_total - col;
            for row in 0..dim {
                let p_min = row.saturating_sub(rest);
                let p_max = row.min(col);
                let mut poly = Complex64::new(0.0, 0.0);
                for p in p_min..=p_max {
                    let q = row - p;
                    let coeff = binomial(col, p) * binomial(rest, q);
                    poly += i_pow[(col + row - 2 * p) % 4] * coeff;
                }
                let scale = (0.5
                    * (ln_factorial(row) + ln_factorial(n_total - row)
                        - ln_factorial(col)
                        - ln_factorial(rest))
                    + ln_half_pow)
                    .exp();
                elements[row * dim + col] = poly * scale;
            }
        }
        Self { n_total, elements }
    }
}

/// A beam-splitter convention together with a thread-safe cache of its
/// per-sector unitaries.
#[derive(Debug)]
pub struct BeamSplitter {
    convention: BsConvention,
    cache: RwLock<HashMap<usize, Arc<SectorUnitary>>>,
}

impl Default for BeamSplitter {
    fn default() -> Self {
        Self::new(BsConvention::Symmetric)
    }
}

impl BeamSplitter {
    pub fn new(convention: BsConvention) -> Self {
        Self {
            convention,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Process-wide symmetric beam splitter.
    pub fn shared() -> &'static BeamSplitter {
        static SHARED: OnceLock<BeamSplitter> = OnceLock::new();
        SHARED.get_or_init(BeamSplitter::default)
    }

    pub fn convention(&self) -> BsConvention {
        self.convention
    }

    pub fn unitary(&self, n_total: usize) -> Arc<SectorUnitary> {
        if let Some(u) = self.cache.read().expect("cache poisoned").get(&n_total) {
            return Arc::clone(u);
        }
        let built = Arc::new(match self.convention {
            BsConvention::Symmetric => SectorUnitary::symmetric(n_total),
        });
        let mut cache = self.cache.write().expect("cache poisoned");
        Arc::clone(cache.entry(n_total).or_insert(built))
    }
}

/// `U_BS |component>`. Norm and weight are preserved.
pub fn bs_transform(component: &PhotonComponent, bs: &BeamSplitter) -> PhotonComponent {
    let u = bs.unitary(component.n_total());
    component.with_amplitudes(u.apply(component.amplitudes()))
}

/// `U_BS^dagger |component>`.
pub fn bs_inverse_transform(component: &PhotonComponent, bs: &BeamSplitter) -> PhotonComponent {
    let u = bs.unitary(component.n_total());
    component.with_amplitudes(u.apply_adjoint(component.amplitudes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn single_photon() {
        let out = bs_transform(&PhotonComponent::fock(1, 0), BeamSplitter::shared());
        assert!(close(out.amplitude(1), Complex64::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(out.amplitude(0), Complex64::new(0.0, FRAC_1_SQRT_2)));
        let out = bs_transform(&PhotonComponent::fock(0, 1), BeamSplitter::shared());
        assert!(close(out.amplitude(1), Complex64::new(0.0, FRAC_1_SQRT_2)));
        assert!(close(out.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0)));
    }

    #[test]
    fn hong_ou_mandel() {
        let out = bs_transform(&PhotonComponent::fock(1, 1), BeamSplitter::shared());
        let expected = Complex64::new(0.0, FRAC_1_SQRT_2);
        assert!(close(out.amplitude(2), expected));
        assert!(close(out.amplitude(0), expected));
        assert!(out.amplitude(1).norm() < 1e-15);
    }

    #[test]
    fn two_two_input() {
        let out = bs_transform(&PhotonComponent::fock(2, 2), BeamSplitter::shared());
        assert!((out.amplitude(4).norm_sqr() - 0.375).abs() < 1e-14);
        assert!((out.amplitude(0).norm_sqr() - 0.375).abs() < 1e-14);
        assert!((out.amplitude(2).norm_sqr() - 0.25).abs() < 1e-14);
        assert!(out.amplitude(1).norm() < 1e-14 && out.amplitude(3).norm() < 1e-14);
    }

    #[test]
    fn sectors_are_unitary() {
        let bs = BeamSplitter::default();
        for n_total in 0..=20 {
            let u = bs.unitary(n_total);
            let dim = u.dim();
            for i in 0..dim {
                for j in 0..dim {
                    let dot: Complex64 = (0..dim)
                        .map(|k| u.element(k, i).conj() * u.element(k, j))
                        .sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (dot - Complex64::new(expected, 0.0)).norm() < 1e-12,
                        "N={n_total} ({i},{j}) -> {dot}"
                    );
                }
            }
        }
    }

    #[test]
    fn cache_is_shared_across_threads() {
        let bs = Arc::new(BeamSplitter::default());
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let bs = Arc::clone(&bs);
                std::thread::spawn(move || bs.unitary(3 + t % 3).element(0, 0))
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert!(Arc::ptr_eq(&bs.unitary(4), &bs.unitary(4)));
    }
}
