//! Fock-basis matrix elements of the single-mode displacement operator.

use num_complex::Complex64;

use crate::special::ln_factorial;

/// `<m| D(alpha) |k>` through the associated-Laguerre representation
///
/// ```text
/// m >= k:  sqrt(k!/m!) alpha^(m-k)        e^{-|alpha|^2/2} L_k^(m-k)(|alpha|^2)
/// m <  k:  sqrt(m!/k!) (-conj alpha)^(k-m) e^{-|alpha|^2/2} L_m^(k-m)(|alpha|^2)
/// ```
pub fn displacement_matrix_element(alpha: Complex64, m: usize, k: usize) -> Complex64 {
    let (low, offset, base) = if m >= k {
        (k, m - k, alpha)
    } else {
        (m, k - m, -alpha.conj())
    };
    let x = alpha.norm_sqr();
    if x == 0.0 {
        return if m == k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let laguerre = laguerre_sequence(low, offset as f64, x)[low];
    off_diagonal_factor(base, low, offset) * (-0.5 * x).exp() * laguerre
}

/// Dense `(dim x dim)` block of `D(alpha)` in the Fock basis, row-major,
/// `matrix[m * dim + k] = <m|D(alpha)|k>`.
///
/// Each diagonal `m - k = const` is one forward Laguerre recurrence, so the
/// whole block costs `O(dim^2)`.
pub fn displacement_matrix(alpha: Complex64, dim: usize) -> Vec<Complex64> {
    let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];
    let x = alpha.norm_sqr();
    if x == 0.0 {
        for i in 0..dim {
            matrix[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        return matrix;
    }
    let damping = (-0.5 * x).exp();
    for offset in 0..dim {
        let len = dim - offset;
        let laguerre = laguerre_sequence(len - 1, offset as f64, x);
        for low in 0..len {
            let value = damping * laguerre[low];
            // below the diagonal: m = low + offset, k = low
            matrix[(low + offset) * dim + low] = off_diagonal_factor(alpha, low, offset) * value;
            if offset > 0 {
                matrix[low * dim + low + offset] =
                    off_diagonal_factor(-alpha.conj(), low, offset) * value;
            }
        }
    }
    matrix
}

/// `sqrt(low! / (low + offset)!) * base^offset`, evaluated in log space.
fn off_diagonal_factor(base: Complex64, low: usize, offset: usize) -> Complex64 {
    if offset == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let ln_mag =
        offset as f64 * base.norm().ln() + 0.5 * (ln_factorial(low) - ln_factorial(low + offset));
    Complex64::from_polar(ln_mag.exp(), offset as f64 * base.arg())
}

/// `L_j^(a)(x)` for `j = 0..=n` by the three-term recurrence.
fn laguerre_sequence(n: usize, a: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(1.0 + a - x);
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - x) * out[j] - (jf + a) * out[j - 1]) / (jf + 1.0);
        out.push(next);
    }
    out
}
