//! The Motzkin spin-chain Hamiltonian on small chains: explicit ground state,
//! sparse and matrix-free operators, eigensolvers and consistency checks.

pub mod basis;
pub mod build;
pub mod checks;
pub mod eigen;
pub mod operator;
pub mod state;

pub use build::{build_hamiltonian, build_hamiltonian_spin, IdentityForm};
pub use checks::{
    conserved_charge_check, fit_gap_exponent, fit_power_law, local_move_closure,
    spectral_gap, spectral_gap_detailed, thermal_correlator, verify_frustration_free,
    FrustrationReport, GapFit, GapMethod, ThermalSpectrum,
};
pub use eigen::{lanczos_lowest, LanczosOptions, LanczosResult};
pub use operator::{LinearOperator, LocalTerm, MotzkinOperator, SparseOperator};
pub use state::{build_motzkin_state, spin_matrix, Axis, StateVector};
