//! Physical checks on small chains: frustration freeness, the spectral gap and
//! its scaling, `S^z` conservation, and thermal correlators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::{self, dimension, site_stride, total_sz};
use super::build::build_hamiltonian;
use super::eigen::{
    dense_sector_spectrum, lanczos_lowest, sorted_eigenvalues, LanczosOptions, LanczosResult,
    SectorEigen,
};
use super::operator::{LinearOperator, LocalTerm, MotzkinOperator};
use super::state::{build_motzkin_state, StateVector};
use crate::error::{Error, Result};
use crate::limits::{check_chain, MAX_2N_CHECKS, MAX_2N_STATE, MAX_2N_THERMAL};

const FF_TOLERANCE: f64 = 1e-12;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `‖T ψ‖` for every local term `T`, bonds first and the boundary last.
pub fn local_term_residuals(state: &StateVector) -> Result<Vec<(LocalTerm, f64)>> {
    let op = MotzkinOperator::new(state.two_n())?;
    let x = state.amplitudes();
    let mut y = vec![0.0; x.len()];
    Ok(op
        .terms()
        .map(|t| {
            y.iter_mut().for_each(|v| *v = 0.0);
            op.apply_term_add(t, x, &mut y);
            (t, norm(&y))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrustrationReport {
    pub two_n: usize,
    pub term_residuals: Vec<(LocalTerm, f64)>,
    /// `‖H |M⟩‖`.
    pub energy_residual: f64,
    /// Lowest eigenvalue above the Motzkin state.
    pub gap: LanczosResult,
}

impl FrustrationReport {
    pub fn frustration_free(&self) -> bool {
        self.term_residuals.iter().all(|t| t.1 <= FF_TOLERANCE) && self.energy_residual <= FF_TOLERANCE
    }

    /// The Motzkin state spans the whole zero-energy space.
    pub fn unique(&self) -> bool {
        self.gap.value > 1e3 * self.gap.residual.max(FF_TOLERANCE)
    }

    pub fn passed(&self) -> bool {
        self.frustration_free() && self.unique()
    }
}

pub fn verify_frustration_free(two_n: usize) -> Result<FrustrationReport> {
    check_chain("frustration-free check", two_n, MAX_2N_CHECKS)?;
    let m = build_motzkin_state(two_n)?;
    let term_residuals = local_term_residuals(&m)?;
    let op = MotzkinOperator::new(two_n)?;
    let mut y = vec![0.0; op.dim()];
    op.apply(m.amplitudes(), &mut y);
    let gap = lanczos_lowest(&op, &[m.amplitudes()], LanczosOptions::default())?;
    Ok(FrustrationReport {
        two_n,
        term_residuals,
        energy_residual: norm(&y),
        gap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapMethod {
    /// Lanczos on the matrix-free Hamiltonian with `|M⟩` projected out.
    #[default]
    Lanczos,
    /// Full diagonalization of every `S^z` sector.
    Dense,
}

/// `Δ`, the lowest eigenvalue of `H` above its zero-energy ground state.
pub fn spectral_gap(two_n: usize, method: GapMethod) -> Result<f64> {
    Ok(spectral_gap_detailed(two_n, method)?.value)
}

pub fn spectral_gap_detailed(two_n: usize, method: GapMethod) -> Result<LanczosResult> {
    match method {
        GapMethod::Lanczos => {
            check_chain("spectral gap", two_n, MAX_2N_STATE)?;
            let op = MotzkinOperator::new(two_n)?;
            let m = build_motzkin_state(two_n)?;
            lanczos_lowest(&op, &[m.amplitudes()], LanczosOptions::default())
        }
        GapMethod::Dense => {
            check_chain("dense spectrum", two_n, MAX_2N_THERMAL)?;
            let h = build_hamiltonian(two_n)?;
            let ev = sorted_eigenvalues(&dense_sector_spectrum(&h, two_n));
            Ok(LanczosResult {
                value: ev[1],
                residual: 0.0,
                iterations: 0,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapFit {
    /// Chain lengths `2n`.
    pub sizes: Vec<usize>,
    pub gaps: Vec<f64>,
    /// `c` in `Δ ∝ n^{-c}`.
    pub exponent: f64,
    /// `A` in `Δ ≈ A n^{-c}`.
    pub amplitude: f64,
    /// Root-mean-square residual of the fit of `ln Δ` against `ln n`.
    pub residual: f64,
}

impl GapFit {
    /// Fitted gap at chain length `2n`.
    pub fn predict(&self, two_n: usize) -> f64 {
        self.amplitude * (two_n as f64 / 2.0).powf(-self.exponent)
    }
}

/// Least-squares fit of `ln Δ = a - c ln n` with `n` the half-length.
pub fn fit_power_law(sizes: &[usize], gaps: &[f64]) -> Result<GapFit> {
    if sizes.len() < 4 || sizes.len() != gaps.len() {
        return Err(Error::InsufficientData(format!(
            "need at least 4 (size, gap) pairs, got {}",
            sizes.len().min(gaps.len())
        )));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("sizes must increase strictly".into()));
    }
    if gaps.iter().any(|&g| !(g > 0.0)) {
        return Err(Error::InvalidParameter("gaps must be positive".into()));
    }
    let xs: Vec<f64> = sizes.iter().map(|&s| (s as f64 / 2.0).ln()).collect();
    let ys: Vec<f64> = gaps.iter().map(|g| g.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(GapFit {
        sizes: sizes.to_vec(),
        gaps: gaps.to_vec(),
        exponent: -slope,
        amplitude: intercept.exp(),
        residual: (ss / k).sqrt(),
    })
}

pub fn fit_gap_exponent(sizes: &[usize]) -> Result<GapFit> {
    if sizes.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 sizes, got {}",
            sizes.len()
        )));
    }
    let gaps = sizes
        .iter()
        .map(|&s| spectral_gap(s, GapMethod::Lanczos))
        .collect::<Result<Vec<_>>>()?;
    fit_power_law(sizes, &gaps)
}

/// `(HSz - SzH) v` for the total magnetization `Sz`.
fn commutator_action(op: &dyn LinearOperator, two_n: usize, v: &[f64]) -> Vec<f64> {
    let sz: Vec<f64> = (0..v.len()).map(|i| total_sz(i, two_n) as f64).collect();
    let szv: Vec<f64> = v.iter().zip(&sz).map(|(x, s)| x * s).collect();
    let mut h_szv = vec![0.0; v.len()];
    let mut hv = vec![0.0; v.len()];
    op.apply(&szv, &mut h_szv);
    op.apply(v, &mut hv);
    h_szv
        .iter()
        .zip(hv.iter().zip(&sz))
        .map(|(a, (b, s))| a - s * b)
        .collect()
}

/// Largest `‖[A, Sz] v‖ / ‖v‖` over `samples` random Gaussian-like vectors.
pub fn commutator_norm(op: &dyn LinearOperator, two_n: usize, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let v: Vec<f64> = (0..op.dim()).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
            norm(&commutator_action(op, two_n, &v)) / norm(&v)
        })
        .fold(0.0, f64::max)
}

/// `[H, Σ_j s^z_j]` estimated on `samples` random vectors.
pub fn conserved_charge_check(two_n: usize, samples: usize, seed: u64) -> Result<f64> {
    check_chain("charge conservation check", two_n, MAX_2N_CHECKS)?;
    let op = MotzkinOperator::new(two_n)?;
    Ok(commutator_norm(&op, two_n, samples, seed))
}

/// Full spectrum of a small chain, for finite-temperature traces.
#[derive(Debug, Clone)]
pub struct ThermalSpectrum {
    two_n: usize,
    sectors: Vec<SectorEigen>,
    ground: f64,
}

impl ThermalSpectrum {
    pub fn new(two_n: usize) -> Result<Self> {
        check_chain("thermal spectrum", two_n, MAX_2N_THERMAL)?;
        let h = build_hamiltonian(two_n)?;
        let sectors = dense_sector_spectrum(&h, two_n);
        let ground = sorted_eigenvalues(&sectors)[0];
        Ok(ThermalSpectrum {
            two_n,
            sectors,
            ground,
        })
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        sorted_eigenvalues(&self.sectors)
    }

    fn weights(&self, beta: f64) -> impl Iterator<Item = (&SectorEigen, usize, f64)> + '_ {
        self.sectors.iter().flat_map(move |s| {
            s.eigen
                .eigenvalues
                .iter()
                .enumerate()
                .map(move |(k, &e)| (s, k, (-beta * (e - self.ground)).exp()))
        })
    }

    /// `Tr e^{-βH}`.
    pub fn partition_function(&self, beta: f64) -> f64 {
        let shifted: f64 = self.weights(beta).map(|w| w.2).sum();
        shifted * (-beta * self.ground).exp()
    }

    /// `Tr(s^z_a s^z_b e^{-βH}) / Z`.
    pub fn szsz(&self, a: usize, b: usize, beta: f64) -> Result<f64> {
        if !(beta >= 0.0) {
            return Err(Error::InvalidParameter(format!("beta must be nonnegative, got {beta}")));
        }
        for site in [a, b] {
            if site == 0 || site > self.two_n {
                return Err(Error::InvalidGeometry(format!("site {site} outside the chain")));
            }
        }
        let (sa, sb) = (site_stride(self.two_n, a), site_stride(self.two_n, b));
        let diag = |i: usize| {
            (basis::spin(((i / sa) % 3) as u8) * basis::spin(((i / sb) % 3) as u8)) as f64
        };
        let (mut num, mut z) = (0.0, 0.0);
        for (s, k, w) in self.weights(beta) {
            let col = s.eigen.eigenvectors.column(k);
            let expect: f64 = s
                .indices
                .iter()
                .zip(col.iter())
                .map(|(&i, c)| diag(i) * c * c)
                .sum();
            num += w * expect;
            z += w;
        }
        Ok(num / z)
    }
}

pub fn thermal_correlator(two_n: usize, n1: usize, n2: usize, beta: f64) -> Result<f64> {
    ThermalSpectrum::new(two_n)?.szsz(n1, n2, beta)
}

/// The moves `0d ↔ d0`, `0u ↔ u0`, `00 ↔ ud` on adjacent sites.
pub fn local_moves(pair: (u8, u8)) -> Vec<(u8, u8)> {
    use basis::{DOWN as D, FLAT as F, UP as U};
    match pair {
        (F, D) => vec![(D, F)],
        (D, F) => vec![(F, D)],
        (F, U) => vec![(U, F)],
        (U, F) => vec![(F, U)],
        (F, F) => vec![(U, D)],
        (U, D) => vec![(F, F)],
        _ => vec![],
    }
}

/// Checks that every local move keeps Motzkin configurations Motzkin and
/// connects all of them; returns the number of configurations reached.
pub fn local_move_closure(two_n: usize) -> Result<usize> {
    check_chain("local move check", two_n, MAX_2N_THERMAL)?;
    let configs = basis::motzkin_configurations(two_n);
    let mut seen = vec![false; dimension(two_n)];
    let mut stack = vec![configs[0]];
    seen[configs[0]] = true;
    let mut reached = 0;
    while let Some(i) = stack.pop() {
        reached += 1;
        let d = basis::digits(i, two_n);
        for j in 0..two_n - 1 {
            for (a, b) in local_moves((d[j], d[j + 1])) {
                let mut e = d.clone();
                e[j] = a;
                e[j + 1] = b;
                if !basis::is_motzkin(&e) {
                    return Err(Error::InvalidParameter(format!(
                        "move at bond {} leaves the Motzkin set",
                        j + 1
                    )));
                }
                let k = basis::index_of(&e);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
    }
    Ok(reached)
}
