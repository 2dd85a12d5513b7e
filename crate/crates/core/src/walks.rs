//! Exact enumeration of non-negative lattice paths.
//!
//! Two families are counted between arbitrary start and end heights:
//! Dyck-like walks (steps ±1) through the reflection principle, and
//! Motzkin-like walks (steps +1, 0, −1) by convolving the Dyck count with the
//! binomial choice of flat-step positions. A depth-first enumerator serves as
//! an independent oracle at small sizes.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits::MAX_BRUTE_FORCE_STEPS;
use crate::numeric::ln_biguint;

/// An exact, non-negative walk count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn new(value: BigUint) -> Self {
        BigCount(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Nearest `f64`; `inf` above `f64::MAX`.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Natural logarithm, `-inf` for zero.
    pub fn ln(&self) -> f64 {
        ln_biguint(&self.0)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of steps and the two boundary heights of a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WalkEndpoints {
    pub steps: usize,
    pub start: usize,
    pub end: usize,
}

impl WalkEndpoints {
    pub fn new(steps: usize, start: usize, end: usize) -> Self {
        WalkEndpoints { steps, start, end }
    }
}

/// Pascal-triangle cache plus a memo of Motzkin-like counts.
///
/// Not shared between threads; construct one per computation.
#[derive(Debug, Clone)]
pub struct WalkCounter {
    pascal: Vec<Vec<BigUint>>,
    motzkin_memo: HashMap<WalkEndpoints, BigUint>,
}

impl Default for WalkCounter {
    fn default() -> Self {
        Self::new()
    }
}

impl WalkCounter {
    pub fn new() -> Self {
        WalkCounter {
            pascal: vec![vec![BigUint::one()]],
            motzkin_memo: HashMap::new(),
        }
    }

    /// Counter with binomial rows precomputed up to `max_steps`.
    pub fn with_capacity(max_steps: usize) -> Self {
        let mut counter = Self::new();
        counter.ensure_rows(max_steps);
        counter
    }

    fn ensure_rows(&mut self, n: usize) {
        while self.pascal.len() <= n {
            let prev = self.pascal.last().expect("row 0 present");
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigUint::one());
            for pair in prev.windows(2) {
                row.push(&pair[0] + &pair[1]);
            }
            row.push(BigUint::one());
            self.pascal.push(row);
        }
    }

    /// `C(n, k)`, zero when `k > n`.
    pub fn binomial(&mut self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.ensure_rows(n);
        self.pascal[n][k].clone()
    }

    fn binomial_ref(&mut self, n: usize, k: usize) -> Option<&BigUint> {
        if k > n {
            return None;
        }
        self.ensure_rows(n);
        Some(&self.pascal[n][k])
    }

    /// `D_{L,m1,m2}` by the reflection principle.
    pub fn dyck(&mut self, e: WalkEndpoints) -> BigUint {
        let WalkEndpoints { steps, start, end } = e;
        let diff = start.abs_diff(end);
        if diff > steps || (steps - diff) % 2 != 0 {
            return BigUint::zero();
        }
        let all = self.binomial(steps, (steps + diff) / 2);
        let reflected = self.binomial(steps, (steps + start + end) / 2 + 1);
        all - reflected
    }

    /// `M_{L,m1,m2} = Σ_k C(L,k) D_{L-k,m1,m2}`.
    pub fn motzkin(&mut self, e: WalkEndpoints) -> BigUint {
        if let Some(v) = self.motzkin_memo.get(&e) {
            return v.clone();
        }
        let diff = e.start.abs_diff(e.end);
        let mut total = BigUint::zero();
        if diff <= e.steps {
            for flats in 0..=(e.steps - diff) {
                let dyck = self.dyck(WalkEndpoints::new(e.steps - flats, e.start, e.end));
                if dyck.is_zero() {
                    continue;
                }
                let choose = self
                    .binomial_ref(e.steps, flats)
                    .expect("flats <= steps")
                    .clone();
                total += choose * dyck;
            }
        }
        self.motzkin_memo.insert(e, total.clone());
        total
    }

    /// `M_{L,start,h}` for every end height `h = 0..=start+L`.
    pub fn motzkin_row(&mut self, steps: usize, start: usize) -> Vec<BigUint> {
        (0..=start + steps)
            .map(|end| self.motzkin(WalkEndpoints::new(steps, start, end)))
            .collect()
    }

    /// Number of unconstrained ±1/0 walks with net displacement `p`:
    /// `Σ_k C(L,k) C(L-k, (L-k+|p|)/2)`.
    pub fn unconstrained(&mut self, steps: usize, displacement: i64) -> BigUint {
        let p = displacement.unsigned_abs() as usize;
        let mut total = BigUint::zero();
        if p > steps {
            return total;
        }
        for flats in 0..=(steps - p) {
            let rest = steps - flats;
            if !(rest - p).is_multiple_of(2) {
                continue;
            }
            total += self.binomial(steps, flats) * self.binomial(rest, (rest + p) / 2);
        }
        total
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Multinomial `total! / Π parts!`; zero unless the parts sum to `total`.
pub fn multinomial(total: usize, parts: &[usize]) -> BigUint {
    if parts.iter().sum::<usize>() != total {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    let mut remaining = total;
    for &part in parts {
        acc *= binomial(remaining, part);
        remaining -= part;
    }
    acc
}

pub fn dyck_count(e: WalkEndpoints) -> BigCount {
    BigCount(WalkCounter::new().dyck(e))
}

pub fn motzkin_count(e: WalkEndpoints) -> BigCount {
    BigCount(WalkCounter::new().motzkin(e))
}

/// Total number of Motzkin walks on `two_n` steps.
pub fn motzkin_number(two_n: usize) -> BigCount {
    motzkin_count(WalkEndpoints::new(two_n, 0, 0))
}

/// Motzkin number through the Catalan identity `Σ_i C(2n,2i) C_i`.
pub fn motzkin_number_via_catalan(two_n: usize) -> BigCount {
    let total = (0..=two_n / 2).fold(BigUint::zero(), |acc, i| {
        acc + binomial(two_n, 2 * i) * catalan(i).into_inner()
    });
    BigCount(total)
}

/// `C_i = C(2i, i) / (i + 1)`.
pub fn catalan(i: usize) -> BigCount {
    BigCount(binomial(2 * i, i) / BigUint::from(i + 1))
}

/// Counts walks by explicit depth-first enumeration of step sequences.
///
/// With `allow_flat = false` only ±1 steps are taken. Rejects more than
/// [`MAX_BRUTE_FORCE_STEPS`] steps.
pub fn brute_force_count(e: WalkEndpoints, allow_flat: bool) -> Result<BigCount> {
    if e.steps > MAX_BRUTE_FORCE_STEPS {
        return Err(Error::SizeGuard {
            what: "brute-force steps",
            value: e.steps,
            limit: MAX_BRUTE_FORCE_STEPS,
        });
    }
    let steps: &[i64] = if allow_flat { &[1, 0, -1] } else { &[1, -1] };
    let count = enumerate(e.start as i64, e.steps, e.end as i64, steps);
    Ok(BigCount::from(count))
}

fn enumerate(height: i64, remaining: usize, target: i64, steps: &[i64]) -> u64 {
    if remaining == 0 {
        return u64::from(height == target);
    }
    steps
        .iter()
        .map(|s| height + s)
        .filter(|&h| h >= 0)
        .map(|h| enumerate(h, remaining - 1, target, steps))
        .sum()
}

/// Upper bound `L·sqrt(b/2)·(2/3)^(b+1)` on the fraction of block walks that
/// would dip below zero at distance `b` from the boundary.
pub fn bad_walk_fraction_bound(boundary_distance: usize, block: usize) -> Result<f64> {
    if boundary_distance == 0 {
        return Err(Error::InvalidParameter(
            "boundary distance must be at least 1".into(),
        ));
    }
    let b = boundary_distance as f64;
    Ok(block as f64 * (b / 2.0).sqrt() * (2.0f64 / 3.0).powf(b + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(l: usize, a: usize, b: usize) -> WalkEndpoints {
        WalkEndpoints::new(l, a, b)
    }

    #[test]
    fn dyck_examples() {
        assert_eq!(dyck_count(ep(4, 0, 0)), 2);
        assert_eq!(dyck_count(ep(3, 0, 5)), 0);
        assert_eq!(dyck_count(ep(4, 0, 1)), 0);
        assert_eq!(dyck_count(ep(0, 3, 3)), 1);
    }

    #[test]
    fn motzkin_examples() {
        assert_eq!(motzkin_count(ep(2, 0, 0)), 2);
        assert_eq!(motzkin_count(ep(4, 0, 0)), 9);
        assert_eq!(motzkin_count(ep(1, 2, 3)), 1);
        assert_eq!(motzkin_count(ep(0, 4, 4)), 1);
        assert_eq!(motzkin_count(ep(0, 4, 3)), 0);
    }

    #[test]
    fn motzkin_numbers() {
        assert_eq!(motzkin_number(0), 1);
        assert_eq!(motzkin_number(4), 9);
        assert_eq!(motzkin_number(6), 51);
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), 1);
        assert_eq!(catalan(3), 5);
        assert_eq!(catalan(10), 16796);
        // recurrence C_{i+1} = Σ_j C_j C_{i-j}
        for i in 0..15 {
            let rec = (0..=i).fold(BigUint::zero(), |acc, j| {
                acc + catalan(j).into_inner() * catalan(i - j).into_inner()
            });
            assert_eq!(catalan(i + 1).into_inner(), rec);
        }
    }

    #[test]
    fn ballot_closed_form() {
        // D_{L,0,m} = (m+1)/(L+1) C(L+1, (L-m)/2)
        for l in 0..20usize {
            for m in 0..=l {
                if (l - m) % 2 != 0 {
                    continue;
                }
                let closed = BigUint::from(m + 1) * binomial(l + 1, (l - m) / 2)
                    / BigUint::from(l + 1);
                assert_eq!(dyck_count(ep(l, 0, m)).into_inner(), closed);
            }
        }
    }

    #[test]
    fn trinomial_sum_for_ground_height() {
        // M_{L,0,m} = (m+1)/(L+1) Σ_i multinomial(L+1; L-2i-m, i, i+m+1)
        let mut counter = WalkCounter::new();
        for l in 0..16usize {
            for m in 0..=l {
                let mut sum = BigUint::zero();
                let mut i = 0;
                while 2 * i + m <= l {
                    sum += multinomial(l + 1, &[l - 2 * i - m, i, i + m + 1]);
                    i += 1;
                }
                let expected = BigUint::from(m + 1) * sum / BigUint::from(l + 1);
                assert_eq!(counter.motzkin(ep(l, 0, m)), expected, "L={l} m={m}");
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_count(ep(4, 0, 0), false).unwrap(), 2);
        assert_eq!(brute_force_count(ep(4, 0, 0), true).unwrap(), 9);
        let oracle = brute_force_count(ep(5, 1, 0), true).unwrap();
        assert_eq!(oracle, 30);
        assert_eq!(motzkin_count(ep(5, 1, 0)), oracle);
    }

    #[test]
    fn brute_force_rejects_long_walks() {
        let err = brute_force_count(ep(19, 0, 0), true).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { limit: 18, .. }));
    }

    #[test]
    fn bad_walk_bound_values() {
        assert_eq!(bad_walk_fraction_bound(1, 0).unwrap(), 0.0);
        let v = bad_walk_fraction_bound(50, 10).unwrap();
        let expected = 10.0 * 5.0 * (2.0f64 / 3.0).powi(51);
        assert!((v / expected - 1.0).abs() < 1e-14);
        assert!((v - 5.22e-8).abs() < 0.01e-8);
        assert!(bad_walk_fraction_bound(85, 10).unwrap() < 1e-13);
        assert!(bad_walk_fraction_bound(0, 3).is_err());
    }

    #[test]
    fn unconstrained_counts_sum_to_three_power() {
        let mut counter = WalkCounter::new();
        for l in 0..12usize {
            let total = (-(l as i64)..=l as i64)
                .fold(BigUint::zero(), |acc, p| acc + counter.unconstrained(l, p));
            assert_eq!(total, BigUint::from(3u32).pow(l as u32));
        }
    }

    #[test]
    fn large_counts_are_exact() {
        // M_400 has ~190 decimal digits; identity must hold exactly.
        assert_eq!(motzkin_number(400), motzkin_number_via_catalan(400));
    }
}
