//! Simulation and optimization of NOON-state generation from two-mode
//! parametric down conversion stimulated by coherent seed beams.
//!
//! * [`fock`]: relative Fock amplitudes of `D(alpha0, beta0) S(r, phi)|0>`,
//!   beam-splitter sector unitaries, NOON fidelity, and a brute-force
//!   truncated-Fock-space oracle.
//! * [`interferometer`]: Mach–Zehnder propagation and number-resolved
//!   coincidence fringes.
//! * [`optimize`]: fidelity sweeps, `(gamma, theta)` optimization and flux
//!   accounting.
//! * [`cli`]: the `noonflux` command-line front end.

pub mod cli;
pub mod error;
pub mod fock;
pub mod interferometer;
pub mod optimize;
pub mod special;

pub use error::{Error, Result};
