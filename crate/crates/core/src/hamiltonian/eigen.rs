//! Eigensolvers: Lanczos for the lowest eigenvalue of a symmetric operator
//! with known eigenvectors projected out, and dense diagonalization by
//! total-`S^z` sector for small chains.

use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::{dimension, total_sz};
use super::operator::{LinearOperator, SparseOperator};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Converged when the residual bound `β_k|s_k|` falls below
    /// `tolerance · |θ|`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Iterations between convergence checks.
    pub check_every: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            tolerance: 1e-8,
            max_iterations: 5000,
            check_every: 10,
            seed: 0x4d6f_747a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosResult {
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

/// Removes the components along each unit vector in `basis`.
fn project_out(basis: &[&[f64]], v: &mut [f64]) {
    for b in basis {
        let c = dot(b, v);
        axpy(-c, b, v);
    }
}

/// Number of eigenvalues of the tridiagonal `(alpha, beta)` below `x`.
fn sturm_count(alpha: &[f64], beta: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for k in 0..alpha.len() {
        let b2 = if k == 0 { 0.0 } else { beta[k - 1] * beta[k - 1] };
        q = alpha[k] - x - if k == 0 { 0.0 } else { b2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (alpha[k].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest eigenvalue of a symmetric tridiagonal matrix by bisection.
pub fn tridiagonal_min_eigenvalue(alpha: &[f64], beta: &[f64]) -> f64 {
    let k = alpha.len();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..k {
        let r = if i > 0 { beta[i - 1].abs() } else { 0.0 } + if i + 1 < k { beta[i].abs() } else { 0.0 };
        lo = lo.min(alpha[i] - r);
        hi = hi.max(alpha[i] + r);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(alpha, beta, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Unit eigenvector of the tridiagonal matrix for eigenvalue `theta`, by inverse
/// iteration with the Thomas algorithm.
fn tridiagonal_eigenvector(alpha: &[f64], beta: &[f64], theta: f64) -> Vec<f64> {
    let k = alpha.len();
    let scale = alpha.iter().chain(beta).fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
    let shift = theta - 1e-13 * scale;
    let mut v = vec![1.0; k];
    for _ in 0..3 {
        let mut c = vec![0.0; k];
        let mut d = v.clone();
        let mut m = alpha[0] - shift;
        if m == 0.0 {
            m = 1e-300;
        }
        if k > 1 {
            c[0] = beta[0] / m;
        }
        d[0] /= m;
        for i in 1..k {
            let mut m = alpha[i] - shift - beta[i - 1] * c[i - 1];
            if m == 0.0 {
                m = 1e-300;
            }
            if i + 1 < k {
                c[i] = beta[i] / m;
            }
            d[i] = (d[i] - beta[i - 1] * d[i - 1]) / m;
        }
        for i in (0..k.saturating_sub(1)).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = d.into_iter().map(|x| x / norm).collect();
    }
    v
}

/// Lowest eigenvalue of `op` on the orthogonal complement of `deflate`, whose
/// vectors must be orthonormal eigenvectors of `op`.
///
/// Plain three-term Lanczos: the Krylov vectors are not reorthogonalized, and
/// the deflation is reapplied after every product to keep rounding errors from
/// reintroducing the removed directions.
pub fn lanczos_lowest(
    op: &dyn LinearOperator,
    deflate: &[&[f64]],
    opts: LanczosOptions,
) -> Result<LanczosResult> {
    let dim = op.dim();
    if deflate.len() >= dim {
        return Err(Error::InvalidParameter(
            "nothing left after deflation".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() - 0.5).collect();
    project_out(deflate, &mut v);
    let norm = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);

    let mut prev = vec![0.0; dim];
    let mut w = vec![0.0; dim];
    let mut alpha = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut last = LanczosResult {
        value: f64::NAN,
        residual: f64::INFINITY,
        iterations: 0,
    };
    for it in 1..=opts.max_iterations {
        op.apply(&v, &mut w);
        project_out(deflate, &mut w);
        if let Some(&b) = beta.last() {
            axpy(-b, &prev, &mut w);
        }
        let a = dot(&w, &v);
        axpy(-a, &v, &mut w);
        alpha.push(a);
        let b = dot(&w, &w).sqrt();

        let exhausted = b <= 1e-14 * a.abs().max(1.0) || it == dim - deflate.len();
        if it % opts.check_every == 0 || exhausted || it == opts.max_iterations {
            let theta = tridiagonal_min_eigenvalue(&alpha, &beta);
            let s = tridiagonal_eigenvector(&alpha, &beta, theta);
            let residual = b * s[s.len() - 1].abs();
            last = LanczosResult {
                value: theta,
                residual,
                iterations: it,
            };
            if residual <= opts.tolerance * theta.abs() || exhausted {
                return Ok(last);
            }
        }
        beta.push(b);
        std::mem::swap(&mut prev, &mut v);
        // v_{k+1} = w / β, reusing the old prev buffer for the next product
        v.iter_mut().zip(&w).for_each(|(vi, wi)| *vi = wi / b);
    }
    Err(Error::NonConvergence {
        iterations: last.iterations,
        residual: last.residual,
    })
}

/// Basis indices grouped by total `S^z`, from `-2n` to `2n`.
pub fn sz_sectors(two_n: usize) -> Vec<(i32, Vec<usize>)> {
    let span = 2 * two_n + 1;
    let mut sectors: Vec<Vec<usize>> = vec![Vec::new(); span];
    for i in 0..dimension(two_n) {
        sectors[(total_sz(i, two_n) + two_n as i32) as usize].push(i);
    }
    sectors
        .into_iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(k, s)| (k as i32 - two_n as i32, s))
        .collect()
}

/// Eigen-decomposition of `H` restricted to one `S^z` sector.
#[derive(Debug, Clone)]
pub struct SectorEigen {
    pub sz: i32,
    pub indices: Vec<usize>,
    pub eigen: SymmetricEigen<f64, nalgebra::Dyn>,
}

/// Full spectrum of a `S^z`-conserving operator, sector by sector.
pub fn dense_sector_spectrum(h: &SparseOperator, two_n: usize) -> Vec<SectorEigen> {
    sz_sectors(two_n)
        .into_iter()
        .map(|(sz, indices)| {
            let block = h.restrict(&indices);
            SectorEigen {
                sz,
                indices,
                eigen: SymmetricEigen::new(block),
            }
        })
        .collect()
}

/// All eigenvalues of the sectors, sorted increasingly.
pub fn sorted_eigenvalues(sectors: &[SectorEigen]) -> Vec<f64> {
    let mut all: Vec<f64> = sectors
        .iter()
        .flat_map(|s| s.eigen.eigenvalues.iter().copied())
        .collect();
    all.sort_by(f64::total_cmp);
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_on_known_tridiagonal() {
        // the path-graph Laplacian-like matrix 2 on the diagonal, -1 off it
        let k = 50;
        let alpha = vec![2.0; k];
        let beta = vec![-1.0; k - 1];
        let theta = tridiagonal_min_eigenvalue(&alpha, &beta);
        let expect = 2.0 - 2.0 * (std::f64::consts::PI / (k as f64 + 1.0)).cos();
        assert!((theta - expect).abs() < 1e-13);
        let v = tridiagonal_eigenvector(&alpha, &beta, theta);
        // residual of T v - θ v
        let mut r = 0.0f64;
        for i in 0..k {
            let mut tv = alpha[i] * v[i];
            if i > 0 {
                tv += beta[i - 1] * v[i - 1];
            }
            if i + 1 < k {
                tv += beta[i] * v[i + 1];
            }
            r = r.max((tv - theta * v[i]).abs());
        }
        assert!(r < 1e-10);
    }

    #[test]
    fn lanczos_on_diagonal_operator_with_deflation() {
        let d: Vec<f64> = (0..400).map(|i| 0.5 + i as f64 * 0.01).collect();
        let trips = d.iter().enumerate().map(|(i, &x)| (i, i, x)).collect();
        let op = SparseOperator::from_triplets(400, trips);
        let e0: Vec<f64> = (0..400).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect();
        let r = lanczos_lowest(&op, &[&e0], LanczosOptions::default()).unwrap();
        assert!((r.value - 0.51).abs() < 1e-10, "{r:?}");
        let r = lanczos_lowest(&op, &[], LanczosOptions::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn non_convergence_is_reported() {
        let d: Vec<f64> = (0..2000).map(|i| 1.0 + (i as f64).sqrt()).collect();
        let trips = d.iter().enumerate().map(|(i, &x)| (i, i, x)).collect();
        let op = SparseOperator::from_triplets(2000, trips);
        let opts = LanczosOptions {
            max_iterations: 5,
            check_every: 1,
            tolerance: 1e-14,
            ..Default::default()
        };
        match lanczos_lowest(&op, &[], opts) {
            Err(Error::NonConvergence { iterations, .. }) => assert_eq!(iterations, 5),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn sectors_partition_the_basis() {
        let s = sz_sectors(4);
        assert_eq!(s.len(), 9);
        assert_eq!(s.iter().map(|x| x.1.len()).sum::<usize>(), 81);
        assert_eq!(s[4].0, 0);
        assert_eq!(s[4].1.len(), 19);
    }
}
