//! Globally adaptive 21-point Gauss–Kronrod quadrature on finite intervals,
//! and a nested two-dimensional variant.

// node and weight tables keep their published digits
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Kronrod abscissae on [-1, 1]; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_292_238_285,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-10, rel: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(10).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]`, bisecting the worst segment until the
/// summed error estimate meets `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Integral {
    if a == b {
        return Integral {
            value: 0.0,
            error: 0.0,
            intervals: 0,
            converged: true,
        };
    }
    let mut heap = BinaryHeap::new();
    heap.push(kronrod(&f, a, b));
    loop {
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        let target = tol.abs.max(tol.rel * value.abs());
        let converged = error <= target;
        if converged || heap.len() >= MAX_INTERVALS {
            return Integral {
                value,
                error,
                intervals: heap.len(),
                converged,
            };
        }
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer divisible in floating point
            heap.push(worst);
            return Integral {
                value,
                error,
                intervals: heap.len(),
                converged: false,
            };
        }
        heap.push(kronrod(&f, worst.a, mid));
        heap.push(kronrod(&f, mid, worst.b));
    }
}

/// Integrates `f(x, y)` over a rectangle by nesting [`integrate`]; the inner
/// integrals run at a tolerance 100 times tighter than the outer one.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    x_range: (f64, f64),
    y_range: (f64, f64),
    tol: Tolerance,
) -> Integral {
    let inner_tol = Tolerance {
        abs: tol.abs / 100.0,
        rel: tol.rel / 100.0,
    };
    let inner_ok = std::cell::Cell::new(true);
    let outer = integrate(
        |x| {
            let r = integrate(|y| f(x, y), y_range.0, y_range.1, inner_tol);
            if !r.converged {
                inner_ok.set(false);
            }
            r.value
        },
        x_range.0,
        x_range.1,
        tol,
    );
    Integral {
        converged: outer.converged && inner_ok.get(),
        ..outer
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_normalized() {
        let k: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_rule_is_exact_for_polynomials() {
        for p in 0..=31 {
            let s = kronrod(&|x: f64| x.powi(p), 0.0, 1.0);
            let exact = 1.0 / (p as f64 + 1.0);
            assert!((s.value - exact).abs() < 1e-14, "degree {p}");
        }
        // Gauss part is exact up to degree 19, so the error estimate vanishes
        let s = kronrod(&|x: f64| x.powi(19), -1.0, 2.0);
        assert!(s.error < 1e-10);
    }

    #[test]
    fn adaptive_integrals() {
        let r = integrate(|x| (-x * x).exp(), -10.0, 10.0, Tolerance::default());
        assert!(r.converged);
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);

        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, Tolerance::default());
        assert!((r.value - 2.0 / 3.0).abs() < 1e-10);

        let r = integrate(|x: f64| x.sin(), 3.0, 3.0, Tolerance::default());
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn double_integral() {
        let r = integrate_2d(
            |x, y| x * y * (-(x * x + y * y)).exp(),
            (0.0, 10.0),
            (0.0, 10.0),
            Tolerance::default(),
        );
        assert!(r.converged);
        assert!((r.value - 0.25).abs() < 1e-11);
    }
}
