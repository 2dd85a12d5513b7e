//! Height and spin correlation functions of the uniform Motzkin ensemble,
//! exact (from big-integer walk counts) and asymptotic, together with the
//! Brownian-excursion limit.
//!
//! Every exact expectation here is a ratio of two big integers with the common
//! denominator `N = M_{2n}`, so each one is rounded to `f64` exactly once.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::ChainGeometry;
use crate::limits::{check_chain, MAX_2N_COUNTS, MAX_2N_TWO_POINT};
use crate::numeric::{ratio_to_f64, signed_ratio_to_f64};
use crate::quadrature::{integrate, integrate_2d, Integral, Tolerance};

/// Step variance of a uniformly random Motzkin step.
pub const EXCURSION_VARIANCE: f64 = 2.0 / 3.0;

/// `M_{k,0,m}` for all `k ≤ max_steps`, built row by row with the one-step
/// transfer `u, 0, d`. By reversal `M_{k,m,0}` is the same number.
#[derive(Debug, Clone)]
pub struct HeightTable {
    rows: Vec<Vec<BigUint>>,
}

impl HeightTable {
    pub fn new(max_steps: usize) -> Self {
        let mut rows = Vec::with_capacity(max_steps + 1);
        rows.push(vec![BigUint::from(1u32)]);
        for k in 1..=max_steps {
            let prev: &Vec<BigUint> = &rows[k - 1];
            rows.push(step(prev, k + 1));
        }
        HeightTable { rows }
    }

    pub fn max_steps(&self) -> usize {
        self.rows.len() - 1
    }

    /// `M_{k,0,m}` (zero above `k`).
    pub fn count(&self, steps: usize, height: usize) -> BigUint {
        self.rows[steps].get(height).cloned().unwrap_or_default()
    }

    pub fn row(&self, steps: usize) -> &[BigUint] {
        &self.rows[steps]
    }
}

/// One transfer step on a vector of weights indexed by height, truncated to
/// `len` heights.
fn step(v: &[BigUint], len: usize) -> Vec<BigUint> {
    (0..len)
        .map(|q| {
            let mut s = BigUint::zero();
            if q >= 1 {
                if let Some(x) = v.get(q - 1) {
                    s += x;
                }
            }
            if let Some(x) = v.get(q) {
                s += x;
            }
            if let Some(x) = v.get(q + 1) {
                s += x;
            }
            s
        })
        .collect()
}

/// Schmidt weights across the cut at `n1`, as integers over `N`.
pub(crate) fn cut_weights(table: &HeightTable, g: &ChainGeometry) -> (Vec<BigUint>, BigUint) {
    let two_n = g.two_n();
    let b = g.boundary_distance();
    let left = table.row(g.n1());
    let right = table.row(two_n - g.n1());
    let weights = (0..=b).map(|m| &left[m] * &right[m]).collect();
    (weights, table.count(two_n, 0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeightDistribution {
    pub geometry: ChainGeometry,
    /// `p_m` for `m = 0..=b`.
    pub probabilities: Vec<f64>,
}

impl HeightDistribution {
    pub fn mean(&self) -> f64 {
        crate::numeric::compensated_sum(
            self.probabilities
                .iter()
                .enumerate()
                .map(|(m, p)| m as f64 * p),
        )
    }
}

pub fn height_distribution_exact(g: &ChainGeometry) -> Result<HeightDistribution> {
    check_chain("height distribution", g.two_n(), MAX_2N_COUNTS)?;
    let table = HeightTable::new(g.two_n());
    let (weights, total) = cut_weights(&table, g);
    Ok(HeightDistribution {
        geometry: *g,
        probabilities: weights.iter().map(|w| ratio_to_f64(w, &total)).collect(),
    })
}

/// `⟨m̂_{n1}⟩` as an exact rational.
pub fn expected_height_rational(g: &ChainGeometry) -> Result<BigRational> {
    check_chain("expected height", g.two_n(), MAX_2N_COUNTS)?;
    let table = HeightTable::new(g.two_n());
    let (num, den) = height_moment(&table, g.two_n(), g.n1());
    Ok(BigRational::new(num.into(), den.into()))
}

pub fn expected_height_exact(g: &ChainGeometry) -> Result<f64> {
    check_chain("expected height", g.two_n(), MAX_2N_COUNTS)?;
    let table = HeightTable::new(g.two_n());
    let (num, den) = height_moment(&table, g.two_n(), g.n1());
    Ok(ratio_to_f64(&num, &den))
}

/// `(Σ_m m·M_{k,0,m}·M_{2n-k,m,0}, N)`; `k = 0` gives zero.
fn height_moment(table: &HeightTable, two_n: usize, k: usize) -> (BigUint, BigUint) {
    let left = table.row(k);
    let right = table.row(two_n - k);
    let mut num = BigUint::zero();
    for (m, (l, r)) in left.iter().zip(right).enumerate().skip(1) {
        num += l * r * BigUint::from(m);
    }
    (num, table.count(two_n, 0))
}

/// `(4/√(3π))·√(n1(1 - n1/2n))`.
pub fn expected_height_asymptotic(g: &ChainGeometry) -> f64 {
    let n1 = g.n1() as f64;
    let frac = 1.0 - n1 / g.two_n() as f64;
    4.0 / (3.0 * PI).sqrt() * (n1 * frac).sqrt()
}

/// `Σ m³ w_m / Σ m² w_m` over `m = 0..=b`, with the Gaussian weight
/// `w_m = exp(-(3m²/4)(1/n1 + 1/(2n - n1)))` standing in for the counts.
pub fn expected_height_gaussian_sum(g: &ChainGeometry) -> Result<f64> {
    g.require_bulk()?;
    let rate = gaussian_cut_rate(g);
    let (mut num, mut den) = (
        crate::numeric::CompensatedSum::new(),
        crate::numeric::CompensatedSum::new(),
    );
    for m in 1..=g.boundary_distance() {
        let m = m as f64;
        let w = (-rate * m * m).exp();
        num.add(m * m * m * w);
        den.add(m * m * w);
    }
    Ok(num.value() / den.value())
}

/// `(3/4)(1/n1 + 1/(2n - n1))`.
pub(crate) fn gaussian_cut_rate(g: &ChainGeometry) -> f64 {
    let n1 = g.n1() as f64;
    let n2 = (g.two_n() - g.n1()) as f64;
    0.75 * (1.0 / n1 + 1.0 / n2)
}

/// `⟨s^z_k⟩ = ⟨m̂_k⟩ - ⟨m̂_{k-1}⟩` for `k = 1..=2n`; index 0 is site 1.
pub fn sz_profile_exact(two_n: usize) -> Result<Vec<f64>> {
    ChainGeometry::cut(two_n, 1)?;
    check_chain("sz profile", two_n, MAX_2N_COUNTS)?;
    let table = HeightTable::new(two_n);
    let total: BigInt = table.count(two_n, 0).into();
    let mut prev = BigInt::zero();
    let mut profile = Vec::with_capacity(two_n);
    for k in 1..=two_n {
        let cur: BigInt = height_moment(&table, two_n, k).0.into();
        profile.push(signed_ratio_to_f64(&(&cur - &prev), &total));
        prev = cur;
    }
    Ok(profile)
}

/// `(2/√(3π))·(1 - n1/n)/√(n1(1 - n1/2n))`.
pub fn sz_asymptotic(g: &ChainGeometry) -> f64 {
    let n1 = g.n1() as f64;
    let n = g.n() as f64;
    2.0 / (3.0 * PI).sqrt() * (1.0 - n1 / n) / (n1 * (1.0 - n1 / (2.0 * n))).sqrt()
}

/// `Σ_{m,q} m·q·M_{a,0,m}·M_{b-a,m,q}·M_{2n-b,q,0}` for `0 ≤ a ≤ b ≤ 2n`.
///
/// The start weights `m·M_{a,0,m}` are pushed through `b - a` transfer steps,
/// which sums over exactly the reachable range of `q`.
fn height_product_sum(table: &HeightTable, two_n: usize, a: usize, b: usize) -> BigUint {
    debug_assert!(a <= b && b <= two_n);
    let mut v: Vec<BigUint> = table
        .row(a)
        .iter()
        .enumerate()
        .map(|(m, c)| c * BigUint::from(m))
        .collect();
    for _ in a..b {
        let len = v.len() + 1;
        v = step(&v, len);
    }
    let right = table.row(two_n - b);
    v.iter()
        .zip(right)
        .enumerate()
        .skip(1)
        .fold(BigUint::zero(), |acc, (q, (w, r))| acc + w * r * BigUint::from(q))
}

fn height_product_ratio(two_n: usize, a: usize, b: usize) -> BigRational {
    let table = HeightTable::new(two_n);
    let num = height_product_sum(&table, two_n, a, b);
    BigRational::new(num.into(), table.count(two_n, 0).into())
}

/// `⟨m̂_{n1} m̂_{n2}⟩` as an exact rational.
pub fn two_point_height_rational(g: &ChainGeometry) -> Result<BigRational> {
    let n2 = g.require_pair()?;
    check_chain("two-point height function", g.two_n(), MAX_2N_TWO_POINT)?;
    Ok(height_product_ratio(g.two_n(), g.n1(), n2))
}

pub fn two_point_height_exact(g: &ChainGeometry) -> Result<f64> {
    Ok(crate::numeric::rational_to_f64(&two_point_height_rational(g)?))
}

/// `n - L/3 + L²/(4n)` for a block of length `L` centered on the chain.
pub fn two_point_height_asymptotic(n: usize, block: usize) -> f64 {
    let n = n as f64;
    let l = block as f64;
    n - l / 3.0 + l * l / (4.0 * n)
}

/// `⟨s^z_{n1} s^z_{n2}⟩` from the backward mixed difference
/// `f(n1,n2) - f(n1-1,n2) - f(n1,n2-1) + f(n1-1,n2-1)` of
/// `f(a,b) = ⟨m̂_a m̂_b⟩`, with `m̂_0 = 0`. This is the exact spin correlator.
pub fn szsz_exact(g: &ChainGeometry) -> Result<f64> {
    let n2 = g.require_pair()?;
    let two_n = g.two_n();
    check_chain("spin two-point function", two_n, MAX_2N_TWO_POINT)?;
    let n1 = g.n1();
    let table = HeightTable::new(two_n);
    let s = |a: usize, b: usize| -> BigInt { height_product_sum(&table, two_n, a, b).into() };
    let num = s(n1, n2) - s(n1 - 1, n2) - s(n1, n2 - 1) + s(n1 - 1, n2 - 1);
    Ok(signed_ratio_to_f64(&num, &table.count(two_n, 0).into()))
}

/// The centered bivariate difference
/// `(1/4)[f(n1+1,n2+1) - f(n1+1,n2-1) - f(n1-1,n2+1) + f(n1-1,n2-1)]`.
///
/// This equals `(1/4)⟨(s^z_{n1} + s^z_{n1+1})(s^z_{n2} + s^z_{n2+1})⟩`, a
/// smoothed version of [`szsz_exact`]. Requires `n1 + 1 < n2 - 1` and
/// `n2 < 2n`.
pub fn szsz_central_difference(g: &ChainGeometry) -> Result<f64> {
    let n2 = g.require_pair()?;
    let two_n = g.two_n();
    let n1 = g.n1();
    if n1 + 1 >= n2 - 1 || n2 + 1 > two_n {
        return Err(Error::InvalidGeometry(format!(
            "central difference needs n1 + 1 < n2 - 1 and n2 < 2n, got ({n1}, {n2}) on {two_n} sites"
        )));
    }
    check_chain("spin two-point function", two_n, MAX_2N_TWO_POINT)?;
    let table = HeightTable::new(two_n);
    let s = |a: usize, b: usize| -> BigInt { height_product_sum(&table, two_n, a, b).into() };
    let num = s(n1 + 1, n2 + 1) - s(n1 + 1, n2 - 1) - s(n1 - 1, n2 + 1) + s(n1 - 1, n2 - 1);
    let den: BigInt = table.count(two_n, 0).into();
    Ok(signed_ratio_to_f64(&num, &(den * 4)))
}

/// Times `λ < μ` in `(0, 1)` along a walk of `2n` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcursionPoint {
    lambda: f64,
    mu: Option<f64>,
    n: usize,
}

impl ExcursionPoint {
    pub fn single(lambda: f64, n: usize) -> Result<Self> {
        check_unit(lambda)?;
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        Ok(ExcursionPoint {
            lambda,
            mu: None,
            n,
        })
    }

    pub fn pair(lambda: f64, mu: f64, n: usize) -> Result<Self> {
        let p = Self::single(lambda, n)?;
        check_unit(mu)?;
        if mu <= lambda {
            return Err(Error::InvalidParameter(format!(
                "need lambda < mu, got {lambda} and {mu}"
            )));
        }
        Ok(ExcursionPoint { mu: Some(mu), ..p })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> Option<f64> {
        self.mu
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

fn check_unit(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("time {t} outside (0, 1)")));
    }
    Ok(())
}

/// Upper integration limit for the excursion height at time `λ`: the density
/// beyond it is below `1e-30`.
pub fn excursion_cutoff(lambda: f64) -> f64 {
    12.0 * (lambda * (1.0 - lambda)).sqrt()
}

/// Marginal density `f_λ(x)` of the standard Brownian excursion at time `λ`.
pub fn excursion_density(lambda: f64, x: f64) -> Result<f64> {
    check_unit(lambda)?;
    if x < 0.0 {
        return Ok(0.0);
    }
    let s = lambda * (1.0 - lambda);
    Ok(2.0 * x * x * (-x * x / (2.0 * s)).exp() / (2.0 * PI * s * s * s).sqrt())
}

/// First-passage density `p_0(t, x)` of the excursion from the origin.
fn first_passage(t: f64, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    x * (-x * x / (2.0 * t)).exp() / ((2.0 * PI).sqrt() * t.powf(1.5))
}

/// Killed transition density `p(λ, x1, μ, x2)` from the method of images.
pub fn excursion_transition(lambda: f64, x1: f64, mu: f64, x2: f64) -> f64 {
    if x1 < 0.0 || x2 < 0.0 {
        return 0.0;
    }
    let dt = mu - lambda;
    let a = x1 - x2;
    // e^{-(x1-x2)²/2dt} - e^{-(x1+x2)²/2dt} = e^{-(x1-x2)²/2dt}(1 - e^{-2 x1 x2/dt})
    let diff = -(-a * a / (2.0 * dt)).exp() * (-2.0 * x1 * x2 / dt).exp_m1();
    diff / (2.0 * PI * dt).sqrt()
}

/// Joint density `f_{λ,μ}(x1, x2)` of the excursion heights at `λ < μ`.
pub fn excursion_two_point_density(lambda: f64, mu: f64, x1: f64, x2: f64) -> Result<f64> {
    check_unit(lambda)?;
    check_unit(mu)?;
    if mu <= lambda {
        return Err(Error::InvalidParameter(format!(
            "need lambda < mu, got {lambda} and {mu}"
        )));
    }
    Ok(2.0
        * (2.0 * PI).sqrt()
        * first_passage(lambda, x1)
        * excursion_transition(lambda, x1, mu, x2)
        * first_passage(1.0 - mu, x2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcursionMoments {
    pub mean: f64,
    pub second: f64,
}

impl ExcursionMoments {
    pub fn variance(&self) -> f64 {
        self.second - self.mean * self.mean
    }
}

/// `E[m_{2nλ}] = 4√n·√(2λ(1-λ)/(3π))` and `E[m²_{2nλ}] = 4nλ(1-λ)`.
pub fn excursion_moments(e: &ExcursionPoint) -> Result<ExcursionMoments> {
    if e.mu.is_some() {
        return Err(Error::InvalidParameter(
            "moments take a single time; drop mu".into(),
        ));
    }
    let l = e.lambda;
    let n = e.n as f64;
    Ok(ExcursionMoments {
        mean: 4.0 * n.sqrt() * (2.0 * l * (1.0 - l) / (3.0 * PI)).sqrt(),
        second: 4.0 * n * l * (1.0 - l),
    })
}

/// The same moments by quadrature of `x f_λ(x)` and `x² f_λ(x)`, scaled by
/// `√(2nσ²)` and `2nσ²`.
pub fn excursion_moments_quadrature(e: &ExcursionPoint) -> Result<ExcursionMoments> {
    let l = e.lambda;
    let scale = 2.0 * e.n as f64 * EXCURSION_VARIANCE;
    let cut = excursion_cutoff(l);
    let tol = Tolerance::default();
    let f = |x: f64| excursion_density(l, x).unwrap_or(0.0);
    let first = integrate(|x| x * f(x), 0.0, cut, tol);
    let second = integrate(|x| x * x * f(x), 0.0, cut, tol);
    Ok(ExcursionMoments {
        mean: scale.sqrt() * first.value,
        second: scale * second.value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcursionTwoPoint {
    pub joint: f64,
    pub product: f64,
}

impl ExcursionTwoPoint {
    pub fn connected(&self) -> f64 {
        self.joint - self.product
    }
}

/// `E[m_{2nλ} m_{2nμ}]` from the arctan closed form and
/// `E[m_{2nλ}]E[m_{2nμ}] = (16nσ²/π)√(λμ(1-λ)(1-μ))`.
pub fn excursion_two_point(e: &ExcursionPoint) -> Result<ExcursionTwoPoint> {
    let mu = e
        .mu
        .ok_or_else(|| Error::InvalidParameter("two-point function needs mu".into()))?;
    let l = e.lambda;
    let n = e.n as f64;
    let s2 = EXCURSION_VARIANCE;
    let root = (l * (1.0 - mu) * (mu - l)).sqrt();
    let angle = (l * (1.0 - mu) / (mu - l)).sqrt().atan();
    Ok(ExcursionTwoPoint {
        joint: 4.0 * n * s2 / PI * (3.0 * root + (l * (2.0 - 3.0 * mu) + mu) * angle),
        product: 16.0 * n * s2 / PI * (l * mu * (1.0 - mu) * (1.0 - l)).sqrt(),
    })
}

/// Double quadrature of `f_{λ,μ}` and of `2nσ²·x1·x2·f_{λ,μ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcursionQuadrature {
    pub normalization: Integral,
    pub joint: Integral,
}

pub fn excursion_two_point_quadrature(e: &ExcursionPoint) -> Result<ExcursionQuadrature> {
    let mu = e
        .mu
        .ok_or_else(|| Error::InvalidParameter("two-point function needs mu".into()))?;
    let l = e.lambda;
    let xr = (0.0, excursion_cutoff(l));
    let yr = (0.0, excursion_cutoff(mu));
    let tol = Tolerance::default();
    let f = |x1: f64, x2: f64| excursion_two_point_density(l, mu, x1, x2).unwrap_or(0.0);
    let normalization = integrate_2d(f, xr, yr, tol);
    let mut joint = integrate_2d(|x1, x2| x1 * x2 * f(x1, x2), xr, yr, tol);
    let scale = 2.0 * e.n as f64 * EXCURSION_VARIANCE;
    joint.value *= scale;
    joint.error *= scale;
    Ok(ExcursionQuadrature {
        normalization,
        joint,
    })
}
