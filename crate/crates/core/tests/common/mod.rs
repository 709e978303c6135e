#![allow(dead_code)]

use nalgebra::DMatrix;
use noonflux::fock::PhotonComponent;
use num_complex::Complex64;

/// Dense `D(alpha) = exp(alpha a^+ - conj(alpha) a)` on a truncated Fock space,
/// by matrix exponential.
pub fn dense_displacement(alpha: Complex64, dim: usize) -> DMatrix<Complex64> {
    let mut gen = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 1..dim {
        let s = (n as f64).sqrt();
        // a^+ |n-1> = sqrt(n) |n>,  a |n> = sqrt(n) |n-1>
        gen[(n, n - 1)] += alpha * s;
        gen[(n - 1, n)] -= alpha.conj() * s;
    }
    gen.exp()
}

/// Largest per-amplitude error between two slices after normalizing both and
/// removing one global phase. Amplitudes below `floor` (relative to the slice
/// norm) are compared absolutely, the rest relatively.
pub fn slice_mismatch(closed: &PhotonComponent, oracle: &PhotonComponent, floor: f64) -> f64 {
    let c = closed.normalize().expect("closed form slice is degenerate");
    let o = oracle.normalize().expect("oracle slice is degenerate");
    let pivot = (0..o.amplitudes().len())
        .max_by(|&i, &j| o.amplitude(i).norm().total_cmp(&o.amplitude(j).norm()))
        .unwrap();
    let phase = o.amplitude(pivot) / c.amplitude(pivot);
    let phase = phase / phase.norm();
    c.amplitudes()
        .iter()
        .zip(o.amplitudes())
        .map(|(x, y)| {
            let diff = (x * phase - y).norm();
            if y.norm() < floor {
                diff
            } else {
                diff / y.norm()
            }
        })
        .fold(0.0, f64::max)
}
