use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[clap(rename_all = "snake_case")]
pub enum Quantity {
    Height,
    Sz,
    TwoPoint,
    Szsz,
    CutEntropy,
    CutRenyi,
    BlockEntropy,
    BlockRenyi,
    Spectrum,
    Gap,
    Thermal,
}

impl Quantity {
    /// Parameter columns, in output order.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Quantity::Height | Quantity::Sz | Quantity::CutEntropy => &["two_n", "n1"],
            Quantity::TwoPoint | Quantity::Szsz => &["two_n", "L", "n1", "n2"],
            Quantity::CutRenyi => &["two_n", "n1", "kappa"],
            Quantity::BlockEntropy => &["L"],
            Quantity::BlockRenyi => &["L", "kappa"],
            Quantity::Spectrum => &["two_n", "n1", "m"],
            Quantity::Gap => &["two_n", "fitted_c"],
            Quantity::Thermal => &["two_n", "n1", "n2", "beta"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Inclusive integer range `a:b:step`; `a` alone and `a:b` (step 1) also parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntRange {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

impl IntRange {
    pub fn single(v: usize) -> Self {
        IntRange {
            start: v,
            end: v,
            step: 1,
        }
    }

    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.end).step_by(self.step).collect()
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |p: &str| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad range bound {p:?} in {s:?}: {e}"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let (start, end, step) = match parts.as_slice() {
            [a] => (parse(a)?, parse(a)?, 1),
            [a, b] => (parse(a)?, parse(b)?, 1),
            [a, b, c] => (parse(a)?, parse(b)?, parse(c)?),
            _ => return Err(format!("range {s:?} is not of the form a:b:step")),
        };
        if step == 0 {
            return Err(format!("range {s:?} has zero step"));
        }
        if start > end {
            return Err(format!("range {s:?} is empty: start exceeds end"));
        }
        Ok(IntRange { start, end, step })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.step)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRequest {
    pub quantity: Quantity,
    pub two_n: Option<IntRange>,
    /// Cut positions, or first sites for `thermal`. Defaults to every valid one.
    pub n1: Option<IntRange>,
    /// Block lengths, or site separations `n2 - n1` for `thermal`.
    pub block: Option<IntRange>,
    pub kappa: Vec<f64>,
    pub beta: Vec<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl SweepRequest {
    pub fn new(quantity: Quantity) -> Self {
        SweepRequest {
            quantity,
            two_n: None,
            n1: None,
            block: None,
            kappa: vec![2.0],
            beta: vec![1.0],
            format: Format::Csv,
            out: None,
        }
    }

    /// Checks the request shape; per-point problems are left to the sweep.
    pub fn validate(&self) -> Result<(), String> {
        use Quantity::*;
        let needs_two_n = !matches!(self.quantity, BlockEntropy | BlockRenyi);
        if needs_two_n && self.two_n.is_none() {
            return Err(format!("{:?} needs --two-n", self.quantity));
        }
        let needs_block = matches!(self.quantity, TwoPoint | Szsz | BlockEntropy | BlockRenyi);
        if needs_block && self.block.is_none() {
            return Err(format!("{:?} needs --L-range", self.quantity));
        }
        if matches!(self.quantity, CutRenyi | BlockRenyi) {
            if self.kappa.is_empty() {
                return Err("--kappa needs at least one order".into());
            }
            if let Some(k) = self.kappa.iter().find(|&&k| !(k > 0.0 && k.is_finite())) {
                return Err(format!("Renyi order must be positive and finite, got {k}"));
            }
        }
        if self.quantity == Thermal {
            if self.beta.is_empty() {
                return Err("--beta needs at least one value".into());
            }
            if let Some(b) = self.beta.iter().find(|&&b| !(b >= 0.0 && b.is_finite())) {
                return Err(format!("inverse temperature must be finite and nonnegative, got {b}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_forms() {
        assert_eq!("7".parse::<IntRange>().unwrap().values(), vec![7]);
        assert_eq!("2:5".parse::<IntRange>().unwrap().values(), vec![2, 3, 4, 5]);
        assert_eq!("4:14:2".parse::<IntRange>().unwrap().values(), vec![4, 6, 8, 10, 12, 14]);
        assert_eq!("1:10:4".parse::<IntRange>().unwrap().values(), vec![1, 5, 9]);
        for bad in ["", "a:3", "5:2", "1:3:0", "1:2:3:4", "-1:3"] {
            assert!(bad.parse::<IntRange>().is_err(), "{bad}");
        }
    }

    #[test]
    fn request_shape_checks() {
        let mut r = SweepRequest::new(Quantity::Height);
        assert!(r.validate().is_err());
        r.two_n = Some(IntRange::single(10));
        assert!(r.validate().is_ok());
        let mut r = SweepRequest::new(Quantity::BlockRenyi);
        r.block = Some(IntRange::single(10));
        assert!(r.validate().is_ok());
        r.kappa = vec![0.0];
        assert!(r.validate().is_err());
        r.kappa = vec![f64::INFINITY];
        assert!(r.validate().is_err());
        let mut r = SweepRequest::new(Quantity::Szsz);
        r.two_n = Some(IntRange::single(10));
        assert!(r.validate().is_err());
    }
}
