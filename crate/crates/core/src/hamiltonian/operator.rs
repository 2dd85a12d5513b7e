//! Real symmetric operators on the chain: compressed sparse rows for small
//! chains and a matrix-free Motzkin Hamiltonian for the largest ones.

use std::io::Write;

use nalgebra::DMatrix;

use super::basis::{dimension, site_stride, DOWN, UP};
use crate::error::{Error, Result};

pub trait LinearOperator {
    fn dim(&self) -> usize;
    /// `y = A x`; `y` is overwritten.
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// Real sparse matrix in compressed-row form. Rows are sorted by column and
/// carry no explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl SparseOperator {
    /// Sums duplicate `(row, col, value)` entries and drops exact zeros.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_unstable_by_key(|t| (t.0, t.1));
        let mut row_start = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        let mut rows = Vec::with_capacity(triplets.len());
        let mut iter = triplets.into_iter().peekable();
        while let Some((r, c, mut v)) = iter.next() {
            while let Some(&(r2, c2, v2)) = iter.peek() {
                if (r2, c2) != (r, c) {
                    break;
                }
                v += v2;
                iter.next();
            }
            if v != 0.0 {
                rows.push(r);
                cols.push(c);
                values.push(v);
            }
        }
        for &r in &rows {
            row_start[r + 1] += 1;
        }
        for i in 0..dim {
            row_start[i + 1] += row_start[i];
        }
        SparseOperator {
            dim,
            row_start,
            cols,
            values,
        }
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_start[i]..self.row_start[i + 1];
        self.cols[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.row_start[i]..self.row_start[i + 1];
        match self.cols[range.clone()].binary_search(&j) {
            Ok(k) => self.values[range.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    /// Largest `|A_ij - A_ji|`.
    pub fn asymmetry(&self) -> f64 {
        self.triplets()
            .map(|(i, j, v)| (v - self.get(j, i)).abs())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference over the union of both sparsity patterns.
    pub fn max_abs_diff(&self, other: &SparseOperator) -> f64 {
        assert_eq!(self.dim, other.dim);
        let one = self.triplets().map(|(i, j, v)| (v - other.get(i, j)).abs());
        let two = other.triplets().map(|(i, j, v)| (v - self.get(i, j)).abs());
        one.chain(two).fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    /// Dense submatrix on the given (sorted) basis indices.
    pub fn restrict(&self, indices: &[usize]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(indices.len(), indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (j, v) in self.row(i) {
                if let Ok(b) = indices.binary_search(&j) {
                    m[(a, b)] = v;
                }
            }
        }
        m
    }

    /// `A + B`.
    pub fn add(&self, other: &SparseOperator) -> SparseOperator {
        assert_eq!(self.dim, other.dim);
        SparseOperator::from_triplets(self.dim, self.triplets().chain(other.triplets()).collect())
    }

    /// One `row col value` line per stored entry, 0-indexed, with values in
    /// shortest round-trip decimal form.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> Result<()> {
        for (i, j, v) in self.triplets() {
            writeln!(w, "{i} {j} {v:?}")?;
        }
        Ok(())
    }
}

impl LinearOperator for SparseOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).map(|(j, v)| v * x[j]).sum();
        }
    }
}

/// One local term of the Motzkin Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalTerm {
    /// The projector on sites `j, j+1`.
    Bond(usize),
    /// `|d⟩⟨d|` on site 1 plus `|u⟩⟨u|` on the last site.
    Boundary,
}

/// The 9×9 two-site projector `|D⟩⟨D| + |U⟩⟨U| + |φ⟩⟨φ|` in the pair basis
/// `3·d_j + d_{j+1}`, assembled from its three unit vectors.
pub fn bond_projector() -> [[f64; 9]; 9] {
    let mut p = [[0.0; 9]; 9];
    for v in super::build::bond_kets() {
        for &(a, x) in &v {
            for &(b, y) in &v {
                p[a][b] += x * y;
            }
        }
    }
    p
}

/// Applies `H = Σ_j Π_{j,j+1} + Π_boundary` without storing it.
#[derive(Debug, Clone)]
pub struct MotzkinOperator {
    two_n: usize,
    /// Nonzero entries of the bond projector as `(row, col, value)`.
    local: Vec<(usize, usize, f64)>,
}

impl MotzkinOperator {
    pub fn new(two_n: usize) -> Result<Self> {
        if two_n < 2 || two_n % 2 == 1 {
            return Err(Error::InvalidGeometry(format!(
                "chain length must be even and at least 2, got {two_n}"
            )));
        }
        let p = bond_projector();
        let local = (0..9)
            .flat_map(|a| (0..9).map(move |b| (a, b)))
            .filter(|&(a, b)| p[a][b] != 0.0)
            .map(|(a, b)| (a, b, p[a][b]))
            .collect();
        Ok(MotzkinOperator { two_n, local })
    }

    pub fn two_n(&self) -> usize {
        self.two_n
    }

    /// `y += T x` for a single local term.
    pub fn apply_term_add(&self, term: LocalTerm, x: &[f64], y: &mut [f64]) {
        let n = self.two_n;
        match term {
            LocalTerm::Bond(j) => {
                let stride = site_stride(n, j + 1);
                let span = 9 * stride;
                for hi in (0..x.len()).step_by(span) {
                    for lo in 0..stride {
                        let base = hi + lo;
                        for &(a, b, v) in &self.local {
                            y[base + a * stride] += v * x[base + b * stride];
                        }
                    }
                }
            }
            LocalTerm::Boundary => {
                let first = site_stride(n, 1);
                for (i, (yi, xi)) in y.iter_mut().zip(x).enumerate() {
                    let mut c = 0.0;
                    if i / first == DOWN as usize {
                        c += 1.0;
                    }
                    if i % 3 == UP as usize {
                        c += 1.0;
                    }
                    *yi += c * xi;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = LocalTerm> {
        (1..self.two_n)
            .map(LocalTerm::Bond)
            .chain(std::iter::once(LocalTerm::Boundary))
    }
}

impl LinearOperator for MotzkinOperator {
    fn dim(&self) -> usize {
        dimension(self.two_n)
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for t in self.terms() {
            self.apply_term_add(t, x, y);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let a = SparseOperator::from_triplets(
            3,
            vec![(0, 1, 0.5), (1, 0, 0.5), (0, 1, 0.5), (2, 2, 1.0), (2, 2, -1.0)],
        );
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.get(0, 1), 1.0);
        assert_eq!(a.get(2, 2), 0.0);
        assert_eq!(a.asymmetry(), 0.5);
        let mut out = Vec::new();
        a.write_triplets(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "0 1 1.0\n1 0 0.5\n");
        let mut y = vec![0.0; 3];
        a.apply(&[1.0, 2.0, 3.0], &mut y);
        assert_eq!(y, vec![2.0, 0.5, 0.0]);
    }

    #[test]
    fn bond_projector_is_a_projector() {
        let p = bond_projector();
        for i in 0..9 {
            for k in 0..9 {
                let sq: f64 = (0..9).map(|j| p[i][j] * p[j][k]).sum();
                assert!((sq - p[i][k]).abs() < 1e-15);
                assert_eq!(p[i][k], p[k][i]);
            }
        }
        let trace: f64 = (0..9).map(|i| p[i][i]).sum();
        assert!((trace - 3.0).abs() < 1e-15);
    }
}
