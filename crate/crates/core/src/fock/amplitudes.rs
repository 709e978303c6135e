//! Closed-form Fock amplitudes of the displaced two-mode squeezed vacuum.
//!
//! Writing the squeezed vacuum as `exp(lambda a^+ b^+)|0>` (up to `1/cosh r`)
//! with `lambda = -e^{i phi} tanh r`, and commuting the displacements through
//! it, gives
//!
//! ```text
//! D(alpha0, beta0) S(r, phi)|0>  ∝  exp(lambda a^+ b^+ + u a^+ + v b^+)|0>,
//! u = alpha0 - lambda conj(beta0),   v = beta0 - lambda conj(alpha0).
//! ```
//!
//! The amplitude of `|m, n>` is therefore the finite sum
//!
//! ```text
//! sqrt(m! n!) * sum_{k=0}^{min(m,n)} lambda^k u^(m-k) v^(n-k) / (k! (m-k)! (n-k)!)
//! ```
//!
//! The omitted prefactor `exp(lambda conj(alpha0) conj(beta0) - (|alpha0|^2 +
//! |beta0|^2)/2) / cosh r` is common to every amplitude of every slice, so
//! weights compare across sources and photon numbers. The sum is evaluated
//! with `u`, `v` and `sqrt(lambda)` divided by their largest magnitude `s`,
//! and the slice is multiplied by `s^N` at the end.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::ln_factorial;

use super::{PhotonComponent, SourceParams};

/// Spontaneous coefficient `delta_mn (-e^{i phi} tanh r)^n / cosh r`.
pub fn tmsv_coefficient(r: f64, phi: f64, m: usize, n: usize) -> Complex64 {
    if m != n {
        return Complex64::new(0.0, 0.0);
    }
    let lambda = -Complex64::from_polar(r.tanh(), phi);
    lambda.powu(n as u32) / r.cosh()
}

/// Relative amplitudes of the `n_total`-photon slice of `D(alpha0, beta0) S(r, phi)|0>`.
///
/// The amplitudes are exact up to the prefactor shared by every slice of the
/// source; the result is returned unnormalized with `weight` in those relative
/// units. Fails with a domain error if that weight is outside the `f64` range.
pub fn displaced_tmsv_component(src: &SourceParams, n_total: usize) -> Result<PhotonComponent> {
    let lambda = src.pair_amplitude();
    let u = src.alpha0() - lambda * src.beta0().conj();
    let v = src.beta0() - lambda * src.alpha0().conj();
    for z in [lambda, u, v] {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(
                "source parameters produced non-finite amplitudes".into(),
            ));
        }
    }

    let scale = u.norm().max(v.norm()).max(lambda.norm().sqrt());
    if scale == 0.0 {
        // Vacuum: only the zero-photon slice is populated.
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_total + 1];
        if n_total == 0 {
            amplitudes[0] = Complex64::new(1.0, 0.0);
        }
        return PhotonComponent::from_amplitudes(amplitudes);
    }
    let (u, v, lambda) = (u / scale, v / scale, lambda / (scale * scale));

    // The weight scales as s^(2N); keep it clear of overflow and underflow.
    let ln_restore = n_total as f64 * scale.ln();
    if 2.0 * ln_restore.abs() > 280.0 * std::f64::consts::LN_10 {
        return Err(Error::Domain(format!(
            "{n_total}-photon weight 10^{:.0} is outside the representable range",
            2.0 * ln_restore / std::f64::consts::LN_10
        )));
    }
    let restore = ln_restore.exp();

    let ln_fact: Vec<f64> = (0..=n_total).map(ln_factorial).collect();
    let amplitudes = (0..=n_total)
        .map(|m| {
            let n = n_total - m;
            let ln_norm = 0.5 * (ln_fact[m] + ln_fact[n]);
            (0..=m.min(n))
                .map(|k| {
                    let weight = (ln_norm - ln_fact[k] - ln_fact[m - k] - ln_fact[n - k]).exp();
                    lambda.powu(k as u32) * u.powu((m - k) as u32) * v.powu((n - k) as u32) * weight
                })
                .sum::<Complex64>()
                * restore
        })
        .collect();
    PhotonComponent::from_amplitudes(amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tmsv_off_diagonal_vanishes() {
        assert_eq!(tmsv_coefficient(0.7, 1.1, 2, 3), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn tmsv_low_orders() {
        let c00 = tmsv_coefficient(0.1, 0.0, 0, 0);
        assert_relative_eq!(c00.re, 1.0 / 0.1f64.cosh(), epsilon = 1e-15);
        assert_relative_eq!(c00.re, 0.995_020_8, epsilon = 1e-6);
        let c11 = tmsv_coefficient(0.1, 0.0, 1, 1);
        assert_relative_eq!(c11.re, -0.1f64.tanh() / 0.1f64.cosh(), epsilon = 1e-15);
        assert!(c11.im.abs() < 1e-18);
        assert!((c11.re + 0.0992).abs() < 1e-4);
    }

    #[test]
    fn spontaneous_limit_keeps_only_pairs() {
        let src = SourceParams::spontaneous(0.1, 0.0).unwrap();
        for n_total in 0..=8 {
            let c = displaced_tmsv_component(&src, n_total).unwrap();
            for (m, a) in c.amplitudes().iter().enumerate() {
                if 2 * m == n_total {
                    assert!(a.norm() > 0.0);
                } else {
                    assert_eq!(a.norm(), 0.0, "N={n_total} m={m}");
                }
            }
        }
    }

    #[test]
    fn coherent_limit_is_product_of_poisson_amplitudes() {
        let alpha0 = Complex64::from_polar(0.8, 0.4);
        let beta0 = Complex64::from_polar(0.5, -1.3);
        let src = SourceParams::new(0.0, 0.0, alpha0, beta0).unwrap();
        for n_total in 0..=8 {
            let c = displaced_tmsv_component(&src, n_total).unwrap();
            let expected: Vec<Complex64> = (0..=n_total)
                .map(|m| {
                    let n = n_total - m;
                    alpha0.powu(m as u32) * beta0.powu(n as u32)
                        / (0.5 * (ln_factorial(m) + ln_factorial(n))).exp()
                })
                .collect();
            // Same pattern up to one common factor.
            let ratio = c.amplitude(0) / expected[0];
            for (m, e) in expected.iter().enumerate() {
                let diff = (c.amplitude(m) - e * ratio).norm();
                assert!(diff < 1e-12 * c.norm_sqr().sqrt(), "N={n_total} m={m}");
            }
        }
    }

    #[test]
    fn vacuum_has_no_photons() {
        let src = SourceParams::symmetric(0.0, 0.0, 0.0).unwrap();
        assert_eq!(displaced_tmsv_component(&src, 0).unwrap().weight(), 1.0);
        for n_total in 1..5 {
            let c = displaced_tmsv_component(&src, n_total).unwrap();
            assert_eq!(c.weight(), 0.0);
            assert!(matches!(c.normalize(), Err(Error::Degenerate(_))));
        }
    }

    #[test]
    fn high_gain_is_finite() {
        let src = SourceParams::symmetric(4.5, (150.0f64).sqrt() * 4.5f64.sinh(), 1.57).unwrap();
        for n_total in [4, 5, 20] {
            let c = displaced_tmsv_component(&src, n_total).unwrap();
            assert!(c.weight().is_finite() && c.weight() > 0.0);
        }
    }

    #[test]
    fn unrepresentable_weight_is_rejected() {
        let src = SourceParams::symmetric(0.1, 1e10, 0.0).unwrap();
        assert!(displaced_tmsv_component(&src, 4).is_ok());
        assert!(matches!(
            displaced_tmsv_component(&src, 20),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn pair_slice_weight_is_absolute_up_to_prefactor() {
        // With no seed the prefactor is 1/cosh r, so the |n,n> amplitude is lambda^n.
        let src = SourceParams::spontaneous(0.1, 0.0).unwrap();
        let c = displaced_tmsv_component(&src, 4).unwrap();
        assert_relative_eq!(
            c.amplitude(2).re,
            0.1f64.tanh().powi(2),
            max_relative = 1e-14
        );
    }
}
