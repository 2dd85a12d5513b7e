//! Batch front end for the Motzkin spin-chain library: parameter sweeps that
//! tabulate exact values next to their asymptotic forms, and validation suites
//! that cross-check independent computations.

pub mod output;
pub mod request;
pub mod sweep;
pub mod validate;

pub use output::{write_data, write_outputs};
pub use request::{Format, IntRange, Quantity, SweepRequest};
pub use sweep::{run_sweep, Row, SweepOutput};
pub use validate::{run_validation, run_validation_with, Level, ValidationReport, WalkCounts};
