//! Factorial-type helpers evaluated in log space.

use statrs::function::gamma::ln_gamma;

/// ln(n!) via the log-gamma function.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// sqrt(a! / b!) computed as a log-gamma difference.
pub fn sqrt_factorial_ratio(a: usize, b: usize) -> f64 {
    if a == b {
        return 1.0;
    }
    (0.5 * (ln_factorial(a) - ln_factorial(b))).exp()
}

/// Binomial coefficient as an f64. Exact for every value below 2^53.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > (1u128 << 100) {
            return (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)).exp();
        }
    }
    acc as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials_are_exact_enough() {
        let mut f = 1.0f64;
        for n in 1..=20 {
            f *= n as f64;
            assert!((ln_factorial(n) - f.ln()).abs() < 1e-13, "n={n}");
        }
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(10, 10), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
        assert_eq!(binomial(40, 20), 137_846_528_820.0);
    }

    #[test]
    fn factorial_ratio() {
        assert!((sqrt_factorial_ratio(5, 3) - 20f64.sqrt()).abs() < 1e-12);
        assert!((sqrt_factorial_ratio(3, 5) - 20f64.sqrt().recip()).abs() < 1e-12);
    }
}
