//! Cost guards on chain sizes.
//!
//! Every guard on the chain length `2n` can be replaced wholesale by setting
//! the `MOTZKIN_MAX_2N` environment variable. The brute-force enumeration
//! guard is not a chain-size guard and is never overridden.

use crate::error::{Error, Result};

pub const ENV_OVERRIDE: &str = "MOTZKIN_MAX_2N";

/// Exact combinatorial heights and cut spectra.
pub const MAX_2N_COUNTS: usize = 400;
/// Two-point sums (triple products of counts).
pub const MAX_2N_TWO_POINT: usize = 300;
/// Explicit state vectors and Hamiltonians.
pub const MAX_2N_STATE: usize = 14;
/// Ground-space uniqueness and commutator checks.
pub const MAX_2N_CHECKS: usize = 12;
/// Full diagonalization for thermal traces.
pub const MAX_2N_THERMAL: usize = 8;
/// Step count of the exponential-time walk enumerator.
pub const MAX_BRUTE_FORCE_STEPS: usize = 18;
/// Largest region kept by a dense reduced density matrix (3^6 = 729).
pub const MAX_REGION_SITES: usize = 6;

fn override_value() -> Option<usize> {
    std::env::var(ENV_OVERRIDE).ok()?.trim().parse().ok()
}

/// Effective chain-size limit for a guard with the given default.
pub fn chain_limit(default: usize) -> usize {
    override_value().unwrap_or(default)
}

/// Fails with [`Error::SizeGuard`] when `two_n` exceeds the effective limit.
pub fn check_chain(what: &'static str, two_n: usize, default: usize) -> Result<()> {
    let limit = chain_limit(default);
    if two_n > limit {
        return Err(Error::SizeGuard {
            what,
            value: two_n,
            limit,
        });
    }
    Ok(())
}
