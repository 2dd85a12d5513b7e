//! Schmidt spectra and entanglement entropies of the Motzkin state: a single
//! cut, and a block of `L` spins in the middle of a long chain.
//!
//! Entropies are in nats; the `*_bits` accessors convert.

use std::f64::consts::{LN_2, PI};

use statrs::function::gamma::ln_gamma;

use crate::correlations::{cut_weights, gaussian_cut_rate, HeightTable};
use crate::error::{Error, Result};
use crate::geometry::ChainGeometry;
use crate::limits::{check_chain, MAX_2N_COUNTS};
use crate::numeric::{compensated_sum, ratio_to_f64, renyi_entropy, shannon_entropy};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Labelled probability weights, e.g. heights `m` at a cut or displacements
/// `p` across a block.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub labels: Vec<i64>,
    pub weights: Vec<f64>,
}

impl Spectrum {
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn total(&self) -> f64 {
        compensated_sum(self.weights.iter().copied())
    }

    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.weights)
    }

    pub fn renyi(&self, kappa: f64) -> Result<f64> {
        check_order(kappa)?;
        Ok(renyi_entropy(&self.weights, kappa))
    }

    fn normalized(labels: Vec<i64>, raw: Vec<f64>) -> Self {
        let total = compensated_sum(raw.iter().copied());
        Spectrum {
            labels,
            weights: raw.into_iter().map(|w| w / total).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub exact: f64,
    pub asymptotic: f64,
    pub rank: usize,
}

impl EntropyReport {
    pub fn exact_bits(&self) -> f64 {
        self.exact / LN_2
    }

    pub fn asymptotic_bits(&self) -> f64 {
        self.asymptotic / LN_2
    }

    pub fn abs_diff(&self) -> f64 {
        (self.exact - self.asymptotic).abs()
    }
}

fn check_order(kappa: f64) -> Result<()> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Renyi order must be positive and finite, got {kappa}"
        )));
    }
    Ok(())
}

fn check_block(block: usize) -> Result<()> {
    if block == 0 {
        return Err(Error::InvalidParameter("block length must be positive".into()));
    }
    Ok(())
}

/// Exact Schmidt weights `p_m = M_{n1,0,m} M_{2n-n1,m,0} / N`, `m = 0..=b`.
pub fn cut_spectrum(g: &ChainGeometry) -> Result<Spectrum> {
    g.require_bulk()?;
    check_chain("cut spectrum", g.two_n(), MAX_2N_COUNTS)?;
    let table = HeightTable::new(g.two_n());
    let (weights, total) = cut_weights(&table, g);
    Ok(Spectrum {
        labels: (0..weights.len() as i64).collect(),
        weights: weights.iter().map(|w| ratio_to_f64(w, &total)).collect(),
    })
}

/// Gaussian approximation `p_m ∝ m² exp(-(3m²/4)(1/n1 + 1/(2n-n1)))`.
pub fn cut_spectrum_gaussian(g: &ChainGeometry) -> Result<Spectrum> {
    g.require_bulk()?;
    let rate = gaussian_cut_rate(g);
    let b = g.boundary_distance() as i64;
    let raw = (0..=b)
        .map(|m| {
            let m = m as f64;
            m * m * (-rate * m * m).exp()
        })
        .collect();
    Ok(Spectrum::normalized((0..=b).collect(), raw))
}

/// `(1/2) ln[n1(2n - n1)/n]`, the size-dependent part of both cut entropies.
fn cut_log_size(g: &ChainGeometry) -> f64 {
    let n1 = g.n1() as f64;
    let rest = (g.two_n() - g.n1()) as f64;
    0.5 * (n1 * rest / g.n() as f64).ln()
}

pub fn cut_entropy(g: &ChainGeometry) -> Result<EntropyReport> {
    let s = cut_spectrum(g)?;
    Ok(EntropyReport {
        exact: s.entropy(),
        asymptotic: cut_log_size(g) + EULER_GAMMA - 0.5 + 0.5 * (2.0 * PI / 3.0).ln(),
        rank: s.rank(),
    })
}

/// Order-dependent constant of the asymptotic cut Rényi entropy.
pub fn cut_renyi_constant(kappa: f64) -> Result<f64> {
    check_order(kappa)?;
    if kappa == 1.0 {
        return Ok(EULER_GAMMA - 0.5 + 0.5 * (2.0 * PI / 3.0).ln());
    }
    let k = kappa;
    Ok(ln_gamma(k + 0.5) / (1.0 - k)
        - ((1.0 + 2.0 * k) * k.ln() + k * (PI / 24.0).ln() + 6f64.ln()) / (2.0 * (1.0 - k)))
}

pub fn cut_renyi(g: &ChainGeometry, kappa: f64) -> Result<EntropyReport> {
    check_order(kappa)?;
    if kappa == 1.0 {
        return cut_entropy(g);
    }
    let s = cut_spectrum(g)?;
    Ok(EntropyReport {
        exact: renyi_entropy(&s.weights, kappa),
        asymptotic: cut_log_size(g) + cut_renyi_constant(kappa)?,
        rank: s.rank(),
    })
}

/// `λ_p ∝ exp(-(3/4)p²/L)` for `p = -L..=L`.
pub fn block_spectrum(block: usize) -> Result<Spectrum> {
    check_block(block)?;
    let l = block as f64;
    let labels: Vec<i64> = (-(block as i64)..=block as i64).collect();
    let raw = labels
        .iter()
        .map(|&p| (-0.75 * (p * p) as f64 / l).exp())
        .collect();
    Ok(Spectrum::normalized(labels, raw))
}

fn block_constant() -> f64 {
    (2.0 * (PI / 3.0).sqrt()).ln()
}

pub fn block_entropy(block: usize) -> Result<EntropyReport> {
    let s = block_spectrum(block)?;
    Ok(EntropyReport {
        exact: s.entropy(),
        asymptotic: 0.5 * (block as f64).ln() + block_constant() + 0.5,
        rank: s.rank(),
    })
}

/// Block entropy asymptotics keeping the leading finite-`b` corrections
/// `-(3/4)(L/b) - (9/16)(L/b)²`, where `b` spins flank the block on each side.
pub fn block_entropy_corrected(block: usize, boundary_distance: usize) -> Result<f64> {
    check_block(block)?;
    if boundary_distance == 0 {
        return Err(Error::InvalidParameter("boundary distance must be positive".into()));
    }
    let r = block as f64 / boundary_distance as f64;
    Ok(0.5 * (block as f64).ln() + block_constant() + 0.5 - 0.75 * r - 9.0 / 16.0 * r * r)
}

/// `g(κ) = ln(2√(π/3)) - ln κ / (2(1-κ))`, continuous at `κ = 1`.
pub fn block_renyi_constant(kappa: f64) -> Result<f64> {
    check_order(kappa)?;
    if kappa == 1.0 {
        return Ok(block_constant() + 0.5);
    }
    Ok(block_constant() - kappa.ln() / (2.0 * (1.0 - kappa)))
}

pub fn block_renyi(block: usize, kappa: f64) -> Result<EntropyReport> {
    check_order(kappa)?;
    if kappa == 1.0 {
        return block_entropy(block);
    }
    let s = block_spectrum(block)?;
    Ok(EntropyReport {
        exact: renyi_entropy(&s.weights, kappa),
        asymptotic: 0.5 * (block as f64).ln() + block_renyi_constant(kappa)?,
        rank: s.rank(),
    })
}

/// `E_m = (3m²/4)(1/n1 + 1/(2n-n1)) - 2 ln m` for `m = 1..=b`. The `m = 0`
/// level has zero Gaussian weight and is left out.
pub fn entanglement_hamiltonian_cut(g: &ChainGeometry) -> Result<Vec<(i64, f64)>> {
    g.require_bulk()?;
    check_chain("entanglement Hamiltonian", g.two_n(), MAX_2N_COUNTS)?;
    let rate = gaussian_cut_rate(g);
    Ok((1..=g.boundary_distance() as i64)
        .map(|m| {
            let x = m as f64;
            (m, rate * x * x - 2.0 * x.ln())
        })
        .collect())
}

/// `E_p = (3/4)p²/L` for `p = -L..=L`.
pub fn entanglement_hamiltonian_block(block: usize) -> Result<Vec<(i64, f64)>> {
    check_block(block)?;
    let l = block as f64;
    Ok((-(block as i64)..=block as i64)
        .map(|p| (p, 0.75 * (p * p) as f64 / l))
        .collect())
}

/// Normalized Boltzmann weights `e^{-E}/Σe^{-E}` of an entanglement spectrum.
pub fn boltzmann_weights(levels: &[(i64, f64)]) -> Spectrum {
    let shift = levels.iter().map(|l| l.1).fold(f64::INFINITY, f64::min);
    Spectrum::normalized(
        levels.iter().map(|l| l.0).collect(),
        levels.iter().map(|l| (shift - l.1).exp()).collect(),
    )
}
