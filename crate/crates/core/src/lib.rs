//! Exact and asymptotic observables of the Motzkin spin chain.
//!
//! * [`walks`]: exact counts of Dyck-like and Motzkin-like walks.
//! * [`asymptotics`]: Gaussian and saddle-point approximations of those counts.
//! * [`correlations`]: height and spin correlation functions, and the
//!   Brownian-excursion limit.
//! * [`entanglement`]: Schmidt spectra and von Neumann/Rényi entropies.
//! * [`hamiltonian`]: the spin-1 Hamiltonian on small chains and its checks.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod correlations;
pub mod entanglement;
pub mod error;
pub mod geometry;
pub mod hamiltonian;
pub mod limits;
pub mod numeric;
pub mod quadrature;
pub mod walks;

pub use correlations::{ExcursionPoint, HeightDistribution};
pub use entanglement::{EntropyReport, Spectrum};
pub use error::{Error, Result};
pub use geometry::ChainGeometry;
pub use hamiltonian::{GapFit, SparseOperator, StateVector};
pub use walks::{BigCount, WalkEndpoints};
