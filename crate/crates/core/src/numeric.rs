//! Conversions from exact big-integer quantities to floats, and compensated
//! summation.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Bits kept in the integer quotient before the single rounding to `f64`.
const QUOTIENT_BITS: u64 = 66;

/// `num / den` rounded once to the nearest `f64`.
///
/// The quotient is formed exactly in integers with [`QUOTIENT_BITS`] of
/// precision, so no intermediate value overflows or underflows regardless of
/// the size of the operands.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "ratio_to_f64: zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let shift = den.bits() as i64 - num.bits() as i64 + QUOTIENT_BITS as i64;
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let q = quotient.to_f64().unwrap_or(f64::INFINITY);
    scale_pow2(q, -shift)
}

/// Signed variant of [`ratio_to_f64`].
pub fn signed_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    let value = ratio_to_f64(num.magnitude(), den.magnitude());
    if negative {
        -value
    } else {
        value
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    signed_ratio_to_f64(r.numer(), r.denom())
}

/// `x * 2^exp` without forming `2^exp` when it would overflow.
fn scale_pow2(mut x: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        x *= 2f64.powi(1000);
        exp -= 1000;
    }
    while exp < -1000 {
        x *= 2f64.powi(-1000);
        exp += 1000;
    }
    x * 2f64.powi(exp as i32)
}

/// Natural log of a big integer; `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let drop = bits - 64;
    let top = (x >> drop).to_f64().expect("64-bit mantissa");
    top.ln() + drop as f64 * std::f64::consts::LN_2
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Shannon entropy in nats of a probability vector; zero weights contribute 0.
pub fn shannon_entropy(weights: &[f64]) -> f64 {
    compensated_sum(
        weights
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln()),
    )
}

/// Rényi entropy of order `kappa` in nats. `kappa == 1` gives the Shannon
/// entropy.
///
/// Evaluated as `ln(1 + Σ p (p^(κ-1) - 1)) / (1 - κ)` with `ln_1p`/`exp_m1`,
/// which stays accurate as `κ → 1`.
pub fn renyi_entropy(weights: &[f64], kappa: f64) -> f64 {
    if kappa == 1.0 {
        return shannon_entropy(weights);
    }
    let excess = compensated_sum(
        weights
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * ((kappa - 1.0) * p.ln()).exp_m1()),
    );
    excess.ln_1p() / (1.0 - kappa)
}
