//! Simulation of the standard qubit teleportation protocol generalized to
//! partially entangled channels, generalized Bell measurements and noisy
//! qubits, in the density-matrix formalism.
//!
//! The crate is organized bottom-up:
//!
//! - [`qlin`] — dense complex linear algebra for 2/4/8-dimensional qubit
//!   systems (tensor products, partial traces, projectors, Hermitian
//!   eigenvalues).
//! - [`noise`] — Kraus-operator noise channels (bit flip, phase flip,
//!   depolarizing, amplitude damping) and their independent action on the
//!   three protocol qubits.
//! - [`protocol`] — a single teleportation run for a fixed input state:
//!   joint state, noise, generalized Bell measurement, Bob's correction,
//!   fidelity per measurement outcome.
//! - [`ensemble`] — averages over a uniform (Haar) distribution of input
//!   states: success rates, postselected efficiencies and the deterministic
//!   benchmark, via exact quadrature with a Monte-Carlo cross-check.
//! - [`optimizer`] — derivative-free maximization of the averaged
//!   fidelities over the channel angle θ and measurement angle φ, plus
//!   classification of noise arrangements and classical-threshold scans.
//! - [`sweep`] — scenario sweeps, the 48-case noise census and CSV output
//!   backing the `qteleport` command-line tool.
//!
//! Start with the runnable programs under `examples/`; each one exercises a
//! single capability end to end.

pub mod ensemble;
mod error;
pub mod noise;
pub mod optimizer;
pub mod protocol;
pub mod qlin;
pub mod sweep;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Maximal Haar-average fidelity achievable with classical resources only.
/// Averaged fidelities above this value certify genuinely quantum
/// teleportation.
pub const CLASSICAL_FIDELITY_LIMIT: f64 = 2.0 / 3.0;
