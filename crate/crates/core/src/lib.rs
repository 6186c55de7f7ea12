//! Virtual channel purification (VCP) over Pauli noise.
//!
//! The crate covers five areas:
//!
//! * [`pauli`]: Pauli channels as probability vectors over `4^N` Pauli
//!   strings, XOR-convolution composition, Clifford conjugation and the
//!   fast Walsh-Hadamard kernels underneath.
//! * [`vcp`]: purified channels, acceptance levels, multilayer order
//!   vectors and the effective channel realized by a noisy controlled-SWAP
//!   network.
//! * [`cvar`]: exact and empirical lower/upper CVaR, the three-distribution
//!   comparison conditions and the worst-case distribution construction.
//! * [`densesim`]: a small exact density-matrix simulator used as an
//!   independent oracle for the effective-channel formulas.
//! * [`regions`]: closed-form advantage regions for depolarizing noise and
//!   gate-count bounds for IID circuits.
//!
//! [`verify`] runs seeded verification campaigns over all of the above and
//! [`cli`] holds the command implementations behind the `vcplab` binary.

pub mod cli;
pub mod cvar;
pub mod densesim;
mod error;
pub mod io;
pub mod pauli;
pub mod regions;
pub mod sampling;
pub mod verify;
pub mod vcp;

pub use error::{Error, Result};

/// Absolute tolerance on probability-vector normalization.
pub const NORMALIZATION_TOL: f64 = 1e-12;
