//! Evaluation of a [`SweepRequest`] into rows of exact and asymptotic values.

use rayon::prelude::*;
use serde::Serialize;

use motzkin_core::correlations::{
    expected_height_asymptotic, expected_height_exact, sz_asymptotic, sz_profile_exact,
    szsz_exact, two_point_height_asymptotic, two_point_height_exact,
};
use motzkin_core::entanglement::{
    block_entropy, block_renyi, cut_entropy, cut_renyi, cut_spectrum, cut_spectrum_gaussian,
};
use motzkin_core::hamiltonian::{
    build_motzkin_state, fit_power_law, spectral_gap, GapMethod, ThermalSpectrum,
};
use motzkin_core::{ChainGeometry, Error};

use crate::request::{Quantity, SweepRequest};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Int(usize),
    Real(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub params: Vec<Param>,
    pub exact: f64,
    pub asymptotic: f64,
}

impl Row {
    fn new(params: Vec<Param>, exact: f64, asymptotic: f64) -> Self {
        Row {
            params,
            exact,
            asymptotic,
        }
    }

    pub fn abs_diff(&self) -> f64 {
        (self.exact - self.asymptotic).abs()
    }

    /// `abs_diff / |exact|`, NaN when the exact value is zero.
    pub fn rel_diff(&self) -> f64 {
        if self.exact == 0.0 {
            f64::NAN
        } else {
            self.abs_diff() / self.exact.abs()
        }
    }
}

/// A parameter point that could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointError {
    pub point: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub quantity: Quantity,
    pub rows: Vec<Row>,
    pub errors: Vec<PointError>,
}

type PointResult = Result<Vec<Row>, PointError>;

fn fail(point: String, e: Error) -> PointError {
    PointError {
        point,
        message: e.to_string(),
    }
}

use Param::{Int, Real};

/// Runs every point of the request. Rows follow the nested parameter order
/// whatever the order in which points finish.
pub fn run_sweep(req: &SweepRequest) -> Result<SweepOutput, String> {
    req.validate()?;
    let sizes = req.two_n.map(|r| r.values()).unwrap_or_default();
    let blocks = req.block.map(|r| r.values()).unwrap_or_default();
    // default cut positions run from 1 to `last`
    let cuts = |last: usize| -> Vec<usize> {
        match req.n1 {
            Some(r) => r.values(),
            None => (1..=last).collect(),
        }
    };

    let results: Vec<PointResult> = match req.quantity {
        Quantity::Height | Quantity::CutEntropy | Quantity::Spectrum => {
            let full = req.quantity == Quantity::Height;
            let points: Vec<(usize, usize)> = sizes
                .iter()
                .flat_map(|&t| {
                    let last = if full { t } else { t.saturating_sub(1) };
                    cuts(last).into_iter().map(move |c| (t, c))
                })
                .collect();
            points
                .par_iter()
                .map(|&(t, c)| cut_point(req.quantity, t, c))
                .collect()
        }
        Quantity::CutRenyi => {
            let points: Vec<(usize, usize, f64)> = sizes
                .iter()
                .flat_map(|&t| {
                    cuts(t.saturating_sub(1))
                        .into_iter()
                        .flat_map(move |c| req.kappa.iter().map(move |&k| (t, c, k)))
                })
                .collect();
            points
                .par_iter()
                .map(|&(t, c, k)| {
                    let label = format!("two_n={t} n1={c} kappa={k}");
                    let r = ChainGeometry::cut(t, c)
                        .and_then(|g| cut_renyi(&g, k))
                        .map_err(|e| fail(label, e))?;
                    Ok(vec![Row::new(vec![Int(t), Int(c), Real(k)], r.exact, r.asymptotic)])
                })
                .collect()
        }
        Quantity::Sz => sizes
            .par_iter()
            .map(|&t| sz_rows(t, &cuts(t)))
            .flat_map_iter(|v| v)
            .collect(),
        Quantity::TwoPoint | Quantity::Szsz => {
            let points: Vec<(usize, usize)> = sizes
                .iter()
                .flat_map(|&t| blocks.iter().map(move |&l| (t, l)))
                .collect();
            points
                .par_iter()
                .map(|&(t, l)| block_point(req.quantity, t, l))
                .collect()
        }
        Quantity::BlockEntropy => blocks
            .par_iter()
            .map(|&l| {
                let r = block_entropy(l).map_err(|e| fail(format!("L={l}"), e))?;
                Ok(vec![Row::new(vec![Int(l)], r.exact, r.asymptotic)])
            })
            .collect(),
        Quantity::BlockRenyi => {
            let points: Vec<(usize, f64)> = blocks
                .iter()
                .flat_map(|&l| req.kappa.iter().map(move |&k| (l, k)))
                .collect();
            points
                .par_iter()
                .map(|&(l, k)| {
                    let r = block_renyi(l, k).map_err(|e| fail(format!("L={l} kappa={k}"), e))?;
                    Ok(vec![Row::new(vec![Int(l), Real(k)], r.exact, r.asymptotic)])
                })
                .collect()
        }
        Quantity::Gap => gap_rows(&sizes),
        Quantity::Thermal => {
            let seps = if blocks.is_empty() { vec![1] } else { blocks.clone() };
            sizes
                .par_iter()
                .map(|&t| thermal_rows(t, &cuts(t.saturating_sub(1)), &seps, &req.beta))
                .flat_map_iter(|v| v)
                .collect()
        }
    };

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(mut v) => rows.append(&mut v),
            Err(e) => errors.push(e),
        }
    }
    Ok(SweepOutput {
        quantity: req.quantity,
        rows,
        errors,
    })
}

fn cut_point(q: Quantity, two_n: usize, n1: usize) -> PointResult {
    let label = format!("two_n={two_n} n1={n1}");
    let run = || -> motzkin_core::Result<Vec<Row>> {
        let g = ChainGeometry::cut(two_n, n1)?;
        let p = vec![Int(two_n), Int(n1)];
        Ok(match q {
            Quantity::Height => vec![Row::new(
                p,
                expected_height_exact(&g)?,
                expected_height_asymptotic(&g),
            )],
            Quantity::CutEntropy => {
                let r = cut_entropy(&g)?;
                vec![Row::new(p, r.exact, r.asymptotic)]
            }
            _ => {
                let exact = cut_spectrum(&g)?;
                let gauss = cut_spectrum_gaussian(&g)?;
                exact
                    .labels
                    .iter()
                    .zip(exact.weights.iter().zip(&gauss.weights))
                    .map(|(&m, (&e, &a))| Row::new(vec![Int(two_n), Int(n1), Int(m as usize)], e, a))
                    .collect()
            }
        })
    };
    run().map_err(|e| fail(label, e))
}

fn sz_rows(two_n: usize, cuts: &[usize]) -> Vec<PointResult> {
    let profile = match sz_profile_exact(two_n) {
        Ok(p) => p,
        Err(e) => return vec![Err(fail(format!("two_n={two_n}"), e))],
    };
    cuts.iter()
        .map(|&c| {
            let g = ChainGeometry::cut(two_n, c).map_err(|e| fail(format!("two_n={two_n} n1={c}"), e))?;
            Ok(vec![Row::new(vec![Int(two_n), Int(c)], profile[c - 1], sz_asymptotic(&g))])
        })
        .collect()
}

fn block_point(q: Quantity, two_n: usize, block: usize) -> PointResult {
    let label = format!("two_n={two_n} L={block}");
    let run = || -> motzkin_core::Result<Row> {
        let g = ChainGeometry::centered_block(two_n, block)?;
        let p = vec![Int(two_n), Int(block), Int(g.n1()), Int(g.n2().unwrap_or(g.n1()))];
        Ok(if q == Quantity::TwoPoint {
            Row::new(p, two_point_height_exact(&g)?, two_point_height_asymptotic(g.n(), block))
        } else {
            // vanishes at leading asymptotic order
            Row::new(p, szsz_exact(&g)?, 0.0)
        })
    };
    run().map(|r| vec![r]).map_err(|e| fail(label, e))
}

fn gap_rows(sizes: &[usize]) -> Vec<PointResult> {
    let gaps: Vec<Result<f64, PointError>> = sizes
        .par_iter()
        .map(|&t| spectral_gap(t, GapMethod::Lanczos).map_err(|e| fail(format!("two_n={t}"), e)))
        .collect();
    let good: Vec<(usize, f64)> = sizes
        .iter()
        .zip(&gaps)
        .filter_map(|(&t, g)| g.as_ref().ok().map(|&g| (t, g)))
        .collect();
    let (ts, gs): (Vec<usize>, Vec<f64>) = good.iter().copied().unzip();
    let fit = fit_power_law(&ts, &gs).ok();
    let mut out: Vec<PointResult> = sizes
        .iter()
        .zip(gaps)
        .map(|(&t, g)| {
            let g = g?;
            let (c, predicted) = fit
                .as_ref()
                .map_or((f64::NAN, f64::NAN), |f| (f.exponent, f.predict(t)));
            Ok(vec![Row::new(vec![Int(t), Real(c)], g, predicted)])
        })
        .collect();
    if fit.is_none() {
        out.push(Err(PointError {
            point: "fit".into(),
            message: format!("power-law fit needs at least 4 sizes with gaps, got {}", good.len()),
        }));
    }
    out
}

fn thermal_rows(two_n: usize, firsts: &[usize], seps: &[usize], betas: &[f64]) -> Vec<PointResult> {
    let setup = ThermalSpectrum::new(two_n).and_then(|s| Ok((s, build_motzkin_state(two_n)?)));
    let (spectrum, ground) = match setup {
        Ok(v) => v,
        Err(e) => return vec![Err(fail(format!("two_n={two_n}"), e))],
    };
    let mut out = Vec::new();
    for &a in firsts {
        for &d in seps {
            let b = a + d;
            for &beta in betas {
                let label = format!("two_n={two_n} n1={a} n2={b} beta={beta}");
                let row = spectrum.szsz(a, b, beta).and_then(|t| {
                    Ok(Row::new(
                        vec![Int(two_n), Int(a), Int(b), Real(beta)],
                        t,
                        ground.szsz(a, b)?,
                    ))
                });
                out.push(row.map(|r| vec![r]).map_err(|e| fail(label, e)));
            }
        }
    }
    out
}
