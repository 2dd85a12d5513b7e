use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use nalgebra::{Complex, DMatrix, Matrix3, SymmetricEigen};

use super::basis::{self, dimension, site_stride};
use crate::error::{Error, Result};
use crate::limits::{check_chain, MAX_2N_STATE, MAX_REGION_SITES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Spin-1 matrices in the `(u, 0, d)` basis.
pub fn spin_matrix(axis: Axis) -> Matrix3<Complex<f64>> {
    let r = |x: f64| Complex::new(x, 0.0);
    let i = |x: f64| Complex::new(0.0, x);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = r(0.0);
    match axis {
        Axis::X => Matrix3::new(z, r(h), z, r(h), z, r(h), z, r(h), z),
        Axis::Y => Matrix3::new(z, i(-h), z, i(h), z, i(-h), z, i(h), z),
        Axis::Z => Matrix3::new(r(1.0), z, z, z, z, z, z, z, r(-1.0)),
    }
}

/// Dense real amplitudes over the `3^{2n}` product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    two_n: usize,
    amplitudes: Vec<f64>,
}

impl StateVector {
    pub fn new(two_n: usize, amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != dimension(two_n) {
            return Err(Error::InvalidParameter(format!(
                "{} amplitudes for a chain of {two_n} sites, expected {}",
                amplitudes.len(),
                dimension(two_n)
            )));
        }
        Ok(StateVector { two_n, amplitudes })
    }

    pub fn two_n(&self) -> usize {
        self.two_n
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [f64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<f64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn nonzeros(&self) -> usize {
        self.amplitudes.iter().filter(|&&a| a != 0.0).count()
    }

    /// `⟨ψ|s^axis_site|ψ⟩`, kept complex so that a spurious imaginary part
    /// would be visible.
    pub fn spin_expectation_complex(&self, site: usize, axis: Axis) -> Result<Complex<f64>> {
        if site == 0 || site > self.two_n {
            return Err(Error::InvalidGeometry(format!(
                "site {site} outside [1, {}]",
                self.two_n
            )));
        }
        let s = spin_matrix(axis);
        let stride = site_stride(self.two_n, site);
        let mut acc = Complex::new(0.0, 0.0);
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let d = (i / stride) % 3;
            let base = i - d * stride;
            for row in 0..3 {
                let e = s[(row, d)];
                if e != Complex::new(0.0, 0.0) {
                    acc += e * (self.amplitudes[base + row * stride] * a);
                }
            }
        }
        Ok(acc)
    }

    pub fn spin_expectation(&self, site: usize, axis: Axis) -> Result<f64> {
        Ok(self.spin_expectation_complex(site, axis)?.re)
    }

    /// `⟨ψ|s^z_a s^z_b|ψ⟩`.
    pub fn szsz(&self, a: usize, b: usize) -> Result<f64> {
        for site in [a, b] {
            if site == 0 || site > self.two_n {
                return Err(Error::InvalidGeometry(format!("site {site} outside the chain")));
            }
        }
        let (sa, sb) = (site_stride(self.two_n, a), site_stride(self.two_n, b));
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0.0)
            .map(|(i, &x)| {
                let za = basis::spin(((i / sa) % 3) as u8);
                let zb = basis::spin(((i / sb) % 3) as u8);
                (za * zb) as f64 * x * x
            })
            .sum())
    }

    /// Reduced density matrix of the contiguous sites `first..=last`.
    pub fn reduced_density(&self, first: usize, last: usize) -> Result<DMatrix<f64>> {
        if first == 0 || last < first || last > self.two_n {
            return Err(Error::InvalidGeometry(format!(
                "region {first}..={last} is not inside the chain of {} sites",
                self.two_n
            )));
        }
        let k = last - first + 1;
        if k > MAX_REGION_SITES {
            return Err(Error::SizeGuard {
                what: "reduced density region",
                value: k,
                limit: MAX_REGION_SITES,
            });
        }
        let inner = site_stride(self.two_n, last);
        let block = 3usize.pow(k as u32);
        // group nonzero amplitudes by the configuration of the complement
        let mut groups: HashMap<usize, Vec<(usize, f64)>> = HashMap::new();
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let lo = i % inner;
            let mid = (i / inner) % block;
            let hi = i / (inner * block);
            groups.entry(hi * inner + lo).or_default().push((mid, a));
        }
        let mut rho = DMatrix::<f64>::zeros(block, block);
        for entries in groups.values() {
            for &(r, x) in entries {
                for &(c, y) in entries {
                    rho[(r, c)] += x * y;
                }
            }
        }
        Ok(rho)
    }

    /// Eigenvalues of the reduced density matrix on one side of the cut after
    /// site `n1`, in decreasing order. The smaller side is traced out
    /// to keep the matrix small.
    pub fn cut_schmidt_weights(&self, n1: usize) -> Result<Vec<f64>> {
        if n1 == 0 || n1 >= self.two_n {
            return Err(Error::InvalidGeometry(format!("cut {n1} is not inside the chain")));
        }
        let rho = if n1 <= self.two_n - n1 {
            self.reduced_density(1, n1)?
        } else {
            self.reduced_density(n1 + 1, self.two_n)?
        };
        let mut w: Vec<f64> = SymmetricEigen::new(rho).eigenvalues.iter().copied().collect();
        w.sort_by(|a, b| b.total_cmp(a));
        Ok(w)
    }

    /// Writes an 8-byte little-endian length followed by the amplitudes as
    /// little-endian `f64`.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&(self.amplitudes.len() as u64).to_le_bytes())?;
        for a in &self.amplitudes {
            w.write_all(&a.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; 8];
        r.read_exact(&mut header)?;
        let len = u64::from_le_bytes(header) as usize;
        let two_n = (0..=40).find(|&k| dimension(k) >= len).unwrap_or(41);
        if two_n > 40 || dimension(two_n) != len {
            return Err(Error::Io(format!("length {len} is not a power of 3")));
        }
        let mut amplitudes = Vec::with_capacity(len);
        let mut buf = [0u8; 8];
        for _ in 0..len {
            r.read_exact(&mut buf)?;
            amplitudes.push(f64::from_le_bytes(buf));
        }
        StateVector::new(two_n, amplitudes)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_binary(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_binary(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

/// The uniform superposition of all Motzkin configurations on `two_n` sites.
pub fn build_motzkin_state(two_n: usize) -> Result<StateVector> {
    if two_n == 0 || two_n % 2 == 1 {
        return Err(Error::InvalidGeometry(format!(
            "chain length must be even and positive, got {two_n}"
        )));
    }
    check_chain("Motzkin state", two_n, MAX_2N_STATE)?;
    let configs = basis::motzkin_configurations(two_n);
    let amp = 1.0 / (configs.len() as f64).sqrt();
    let mut amplitudes = vec![0.0; dimension(two_n)];
    for i in configs {
        amplitudes[i] = amp;
    }
    StateVector::new(two_n, amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::motzkin_number;

    #[test]
    fn small_states() {
        let s = build_motzkin_state(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ud = basis::index_of(&[basis::UP, basis::DOWN]);
        let flat = basis::index_of(&[basis::FLAT, basis::FLAT]);
        for (i, &a) in s.amplitudes().iter().enumerate() {
            let expect = if i == ud || i == flat { h } else { 0.0 };
            assert!((a - expect).abs() < 1e-15);
        }
        let s = build_motzkin_state(4).unwrap();
        assert_eq!(s.nonzeros(), 9);
        assert!(s.amplitudes().iter().all(|&a| a == 0.0 || (a - 1.0 / 3.0).abs() < 1e-15));
        for two_n in [6, 8, 10] {
            let s = build_motzkin_state(two_n).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
            assert_eq!(s.nonzeros() as u64, motzkin_number(two_n).to_f64() as u64);
        }
    }

    #[test]
    fn spin_matrices_are_hermitian() {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let s = spin_matrix(axis);
            assert_eq!(s, s.adjoint());
        }
        // [s^x, s^y] = i s^z
        let (x, y, z) = (spin_matrix(Axis::X), spin_matrix(Axis::Y), spin_matrix(Axis::Z));
        let c = x * y - y * x - z * Complex::new(0.0, 1.0);
        assert!(c.norm() < 1e-15);
    }

    #[test]
    fn reduced_density_is_a_state() {
        let s = build_motzkin_state(8).unwrap();
        let rho = s.reduced_density(3, 5).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!((&rho - rho.transpose()).norm() < 1e-15);
        let eig = SymmetricEigen::new(rho).eigenvalues;
        assert!(eig.iter().all(|&e| e > -1e-14));
        assert!(s.reduced_density(0, 2).is_err());
        assert!(s.reduced_density(1, 7).is_err());
    }

    #[test]
    fn binary_round_trip() {
        let s = build_motzkin_state(4).unwrap();
        let mut buf = Vec::new();
        s.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 8 + 81 * 8);
        assert_eq!(&buf[..8], &81u64.to_le_bytes());
        assert_eq!(StateVector::read_binary(&buf[..]).unwrap(), s);
        assert!(StateVector::read_binary(&buf[..20]).is_err());
    }
}
