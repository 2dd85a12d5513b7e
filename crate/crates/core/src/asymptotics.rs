//! Gaussian and saddle-point approximations to the exact walk counts.
//!
//! Every approximation is returned as a natural logarithm so that the `3^L`
//! growth never overflows.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

const LN_3: f64 = 1.098_612_288_668_109_8;

/// Multinomial point `(L/3 + x, L/3 + y, L/3 + z)` with `x + y + z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrinomialPoint {
    total: usize,
    x: f64,
    y: f64,
    z: f64,
}

impl TrinomialPoint {
    pub fn new(total: usize, x: f64, y: f64, z: f64) -> Result<Self> {
        if total == 0 {
            return Err(Error::InvalidParameter("trinomial total must be positive".into()));
        }
        if (x + y + z).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "deviations must sum to zero, got {}",
                x + y + z
            )));
        }
        Ok(TrinomialPoint { total, x, y, z })
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// The three parts `L/3 + x`, `L/3 + y`, `L/3 + z`.
    pub fn parts(&self) -> [f64; 3] {
        let third = self.total as f64 / 3.0;
        [third + self.x, third + self.y, third + self.z]
    }
}

/// `ln[3^(L+1) √3 / (2πL) · exp(-(3/2)(x²+y²+z²)/L)]`.
pub fn trinomial_gaussian(p: &TrinomialPoint) -> f64 {
    let l = p.total as f64;
    let sq = p.x * p.x + p.y * p.y + p.z * p.z;
    (l + 1.5) * LN_3 - (2.0 * PI * l).ln() - 1.5 * sq / l
}

/// Log of the leading-order form of `M_{L,0,m}`:
/// `3^(L+3/2) / (2√π L) · α · exp(-3α²/4)` with `α = m/√L`.
///
/// The approximation has an explicit factor of `α`, so `m = 0` returns
/// `-inf` even though the exact count is positive.
pub fn m_count_asymptotic(steps: usize, height: usize) -> Result<f64> {
    if steps == 0 {
        return Err(Error::InvalidParameter("walk length must be positive".into()));
    }
    if height == 0 {
        return Ok(f64::NEG_INFINITY);
    }
    let l = steps as f64;
    let alpha = height as f64 / l.sqrt();
    Ok((l + 1.5) * LN_3 - (2.0 * PI.sqrt() * l).ln() + alpha.ln() - 0.75 * alpha * alpha)
}

/// Log of `3^(L+1/2) / (2√(πL)) · exp(-(3/4)p²/L)`, the count of
/// unconstrained block walks with displacement `p`.
pub fn block_count_asymptotic(steps: usize, displacement: i64) -> Result<f64> {
    if steps == 0 {
        return Err(Error::InvalidParameter("block length must be positive".into()));
    }
    if displacement.unsigned_abs() as usize > steps {
        return Err(Error::InvalidParameter(format!(
            "|p| = {} exceeds the block length {steps}",
            displacement.unsigned_abs()
        )));
    }
    let l = steps as f64;
    let p = displacement as f64;
    Ok((l + 0.5) * LN_3 - (2.0 * (PI * l).sqrt()).ln() - 0.75 * p * p / l)
}

/// Saddle point `L/3 - m/2 + m²/(8L) + 3m⁴/(128L³)` of the trinomial summand
/// of `M_{L,0,m}` in the summation index.
pub fn saddle_index(steps: usize, height: usize) -> Result<f64> {
    if steps == 0 {
        return Err(Error::InvalidParameter("walk length must be positive".into()));
    }
    if height > steps {
        return Err(Error::InvalidParameter(format!(
            "height {height} exceeds the walk length {steps}"
        )));
    }
    let l = steps as f64;
    let m = height as f64;
    Ok(l / 3.0 - m / 2.0 + m * m / (8.0 * l) + 3.0 * m.powi(4) / (128.0 * l.powi(3)))
}

/// A direct sum next to its integral approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumVsIntegral {
    pub sum: f64,
    pub integral: f64,
}

impl SumVsIntegral {
    pub fn abs_diff(&self) -> f64 {
        (self.sum - self.integral).abs()
    }

    pub fn rel_diff(&self) -> f64 {
        self.abs_diff() / self.integral.abs()
    }
}

/// `Σ_{m=0}^{L} m^g exp(-a m²/L)` and `∫_0^∞ m^g exp(-a m²/L) dm`.
///
/// For even `g` the two agree to `O(L^g e^{-aL})`. For odd `g` the
/// Euler–Maclaurin boundary terms at `m = 0` do not vanish and leave an
/// `O(1)` absolute offset ([`odd_moment_offset`]).
pub fn gaussian_moment_sum(steps: usize, power: u32, rate: f64) -> Result<SumVsIntegral> {
    if steps == 0 || power == 0 {
        return Err(Error::InvalidParameter(
            "walk length and power must be positive".into(),
        ));
    }
    if !(rate > 0.0) {
        return Err(Error::InvalidParameter(format!("rate must be positive, got {rate}")));
    }
    let l = steps as f64;
    let sum = crate::numeric::compensated_sum(
        (0..=steps).map(|m| (m as f64).powi(power as i32) * (-rate * (m * m) as f64 / l).exp()),
    );
    let half = (power as f64 + 1.0) / 2.0;
    let integral = 0.5 * gamma(half) * (l / rate).powf(half);
    Ok(SumVsIntegral { sum, integral })
}

/// Euler–Maclaurin offset `Σ - ∫` for odd powers `g = 1, 3`, through the
/// `B₆` term: `-f'(0)/12 + f'''(0)/720 - f⁵(0)/30240`.
pub fn odd_moment_offset(steps: usize, power: u32, rate: f64) -> f64 {
    let c = rate / steps as f64;
    // f(m) = m^g e^{-c m²}; odd derivatives at the origin
    let (d1, d3, d5) = match power {
        1 => (1.0, -6.0 * c, 60.0 * c * c),
        3 => (0.0, 6.0, -120.0 * c),
        _ => (0.0, 0.0, 0.0),
    };
    -d1 / 12.0 + d3 / 720.0 - d5 / 30240.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{multinomial, WalkCounter, WalkEndpoints};
    use num_bigint::BigUint;

    fn ln_big(x: &BigUint) -> f64 {
        crate::numeric::ln_biguint(x)
    }

    #[test]
    fn trinomial_center_value() {
        let p = TrinomialPoint::new(300, 0.0, 0.0, 0.0).unwrap();
        let expected = 301.0 * LN_3 + 0.5 * 3f64.ln() - (600.0 * PI).ln();
        assert!((trinomial_gaussian(&p) - expected).abs() < 1e-10);
    }

    #[test]
    fn trinomial_against_exact() {
        let p = TrinomialPoint::new(300, 10.0, -5.0, -5.0).unwrap();
        let exact = ln_big(&multinomial(300, &[110, 95, 95]));
        assert!((trinomial_gaussian(&p) / exact - 1.0).abs() < 0.01);

        let p = TrinomialPoint::new(60, 0.0, 0.0, 0.0).unwrap();
        let exact = ln_big(&multinomial(60, &[20, 20, 20]));
        let rel = (trinomial_gaussian(&p) - exact).exp() - 1.0;
        assert!(rel.abs() < 0.02, "rel = {rel}");
    }

    #[test]
    fn trinomial_rejects_bad_points() {
        assert!(TrinomialPoint::new(0, 0.0, 0.0, 0.0).is_err());
        assert!(TrinomialPoint::new(9, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn ground_height_count_against_exact() {
        let mut counter = WalkCounter::new();
        let mut rel_err = |l: usize, m: usize| {
            let exact = ln_big(&counter.motzkin(WalkEndpoints::new(l, 0, m)));
            (m_count_asymptotic(l, m).unwrap() - exact).exp_m1().abs()
        };
        // α = 1 at both sizes
        let e200 = rel_err(200, 14);
        let e400 = rel_err(400, 20);
        assert!(e200 < 0.05, "L=200 rel err {e200}");
        assert!(e400 < e200, "error must decay: {e400} vs {e200}");
        assert_eq!(m_count_asymptotic(200, 0).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn error_decays_as_length_doubles() {
        let mut counter = WalkCounter::new();
        let alpha: f64 = 1.0;
        let errs: Vec<f64> = [100usize, 200, 400]
            .iter()
            .map(|&l| {
                let m = (alpha * (l as f64).sqrt()).round() as usize;
                let exact = ln_big(&counter.motzkin(WalkEndpoints::new(l, 0, m)));
                (m_count_asymptotic(l, m).unwrap() - exact).exp_m1().abs()
            })
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] <= w[0] * 1.2, "{errs:?}");
        }
    }

    #[test]
    fn block_count_against_stirling_sum() {
        let mut counter = WalkCounter::new();
        let mut rel = |p: i64| {
            let exact = ln_big(&counter.unconstrained(100, p));
            (block_count_asymptotic(100, p).unwrap() - exact).exp_m1().abs()
        };
        assert!(rel(0) < 0.03);
        assert!(rel(30) < 0.15);
        assert_eq!(
            block_count_asymptotic(100, 6).unwrap(),
            block_count_asymptotic(100, -6).unwrap()
        );
        assert!(block_count_asymptotic(10, 11).is_err());
    }

    fn argmax_summand(l: usize, m: usize) -> usize {
        // summand of M_{L,0,m}: multinomial(L+1; i+m+1, i, L-2i-m), scanned exactly
        (0..)
            .take_while(|i| 2 * i + m <= l)
            .max_by_key(|&i| multinomial(l + 1, &[i + m + 1, i, l - 2 * i - m]))
            .unwrap()
    }

    #[test]
    fn saddle_matches_argmax() {
        assert!((saddle_index(300, 0).unwrap() - 100.0).abs() < 1e-12);
        for (l, m) in [(300usize, 17usize), (90, 9)] {
            let sp = saddle_index(l, m).unwrap();
            let arg = argmax_summand(l, m) as f64;
            assert!((sp - arg).abs() <= 2.0, "L={l} m={m}: {sp} vs {arg}");
        }
    }

    #[test]
    fn moment_sums() {
        let r = gaussian_moment_sum(100, 2, 0.75).unwrap();
        assert!(r.rel_diff() < 1e-6);
        let r = gaussian_moment_sum(1, 1, 10.0).unwrap();
        assert!(r.sum.is_finite() && r.integral.is_finite());
    }

    #[test]
    fn odd_moment_keeps_boundary_offset() {
        let r = gaussian_moment_sum(100, 3, 1.5).unwrap();
        let offset = odd_moment_offset(100, 3, 1.5);
        assert!(((r.sum - r.integral) - offset).abs() < 1e-4 * offset);
        // the relative gap still shrinks like L^-2
        let big = gaussian_moment_sum(400, 3, 1.5).unwrap();
        assert!(big.rel_diff() < r.rel_diff() / 10.0);
    }

    #[test]
    fn huge_lengths_do_not_overflow() {
        let l = 1_000_000;
        assert!(m_count_asymptotic(l, 1000).unwrap().is_finite());
        assert!(block_count_asymptotic(l, 1000).unwrap().is_finite());
        let p = TrinomialPoint::new(l, 3.0, -1.0, -2.0).unwrap();
        assert!(trinomial_gaussian(&p).is_finite());
    }
}
