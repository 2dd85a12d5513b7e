//! Two independent assemblies of the Motzkin Hamiltonian: one applies the
//! rank-1 projectors ket by ket, the other builds the local terms from spin
//! operators and embeds them with Kronecker products.

use nalgebra::{Complex, DMatrix, Matrix3};

use super::basis::{dimension, site_stride, DOWN, FLAT, UP};
use super::operator::SparseOperator;
use super::state::{spin_matrix, Axis};
use crate::error::{Error, Result};
use crate::limits::{check_chain, MAX_2N_STATE};

const fn pair(a: u8, b: u8) -> usize {
    3 * a as usize + b as usize
}

/// The unit vectors `D = (|0d⟩ - |d0⟩)/√2`, `U = (|0u⟩ - |u0⟩)/√2` and
/// `φ = (|00⟩ - |ud⟩)/√2` as sparse `(pair index, amplitude)` lists.
pub fn bond_kets() -> [Vec<(usize, f64)>; 3] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [
        vec![(pair(FLAT, DOWN), h), (pair(DOWN, FLAT), -h)],
        vec![(pair(FLAT, UP), h), (pair(UP, FLAT), -h)],
        vec![(pair(FLAT, FLAT), h), (pair(UP, DOWN), -h)],
    ]
}

fn check_size(two_n: usize) -> Result<()> {
    if two_n < 2 || two_n % 2 == 1 {
        return Err(Error::InvalidGeometry(format!(
            "chain length must be even and at least 2, got {two_n}"
        )));
    }
    check_chain("Hamiltonian", two_n, MAX_2N_STATE)
}

/// `H` from the ket-level projectors, acting on one basis state at a time.
pub fn build_hamiltonian(two_n: usize) -> Result<SparseOperator> {
    check_size(two_n)?;
    let dim = dimension(two_n);
    let kets = bond_kets();
    let mut triplets = Vec::new();
    for i in 0..dim {
        for j in 1..two_n {
            let stride = site_stride(two_n, j + 1);
            let a = (i / stride) % 9;
            for v in &kets {
                // ⟨v|a⟩ is nonzero for at most one entry of v
                if let Some(&(_, overlap)) = v.iter().find(|e| e.0 == a) {
                    for &(b, amp) in v {
                        let target = i - a * stride + b * stride;
                        triplets.push((target, i, amp * overlap));
                    }
                }
            }
        }
        let mut diag = 0.0;
        if i / site_stride(two_n, 1) == DOWN as usize {
            diag += 1.0;
        }
        if i % 3 == UP as usize {
            diag += 1.0;
        }
        if diag != 0.0 {
            triplets.push((i, i, diag));
        }
    }
    Ok(SparseOperator::from_triplets(dim, triplets))
}

/// How the single-site outer products are written in terms of `s^z`, `S^±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityForm {
    /// `|-1⟩⟨-1| = ½(s^z - I)s^z` and likewise for `|0⟩⟨-1|`, `|-1⟩⟨0|`.
    Corrected,
    /// `|-1⟩⟨-1| = ½(I - s^z)s^z`, which is `-|-1⟩⟨-1|`.
    Printed,
}

type C3 = Matrix3<Complex<f64>>;

/// Single-site outer products `|a⟩⟨b|` built from spin operators.
pub struct SpinOuterProducts {
    pub p_up: C3,
    pub p_flat: C3,
    pub p_down: C3,
    pub flat_up: C3,
    pub flat_down: C3,
    pub up_flat: C3,
    pub down_flat: C3,
}

impl SpinOuterProducts {
    pub fn new(form: IdentityForm) -> Self {
        let sz = spin_matrix(Axis::Z);
        let sx = spin_matrix(Axis::X);
        let sy = spin_matrix(Axis::Y);
        let i = Complex::new(0.0, 1.0);
        let s_plus = sx + sy * i;
        let s_minus = sx - sy * i;
        let id = C3::identity();
        let c = |x: f64| Complex::new(x, 0.0);
        let k = c(1.0 / (2.0 * std::f64::consts::SQRT_2));
        let below = match form {
            IdentityForm::Corrected => sz - id,
            IdentityForm::Printed => id - sz,
        };
        SpinOuterProducts {
            p_flat: id - sz * sz,
            p_up: (id + sz) * sz * c(0.5),
            p_down: below * sz * c(0.5),
            flat_up: s_minus * (id + sz) * sz * k,
            flat_down: s_plus * below * sz * k,
            up_flat: sz * (id + sz) * s_plus * k,
            down_flat: sz * below * s_minus * k,
        }
    }
}

fn real_part(m: &DMatrix<Complex<f64>>) -> Result<DMatrix<f64>> {
    let imag = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > 1e-14 {
        return Err(Error::InvalidParameter(format!(
            "spin-operator term has imaginary part {imag}"
        )));
    }
    Ok(m.map(|z| z.re))
}

fn kron(a: &C3, b: &C3) -> DMatrix<Complex<f64>> {
    let a = DMatrix::from_iterator(3, 3, a.iter().copied());
    let b = DMatrix::from_iterator(3, 3, b.iter().copied());
    a.kronecker(&b)
}

/// The 9×9 bond term written with spin operators.
pub fn bond_matrix_spin(form: IdentityForm) -> Result<DMatrix<f64>> {
    let o = SpinOuterProducts::new(form);
    let id = C3::identity();
    let half = Complex::new(0.5, 0.0);
    let diag = kron(&o.p_flat, &id) + kron(&o.p_up, &(o.p_flat + o.p_down)) + kron(&o.p_down, &o.p_flat);
    let hop = kron(&o.up_flat, &o.flat_up) + kron(&o.down_flat, &o.flat_down) + kron(&o.up_flat, &o.down_flat);
    let hop = &hop + hop.adjoint();
    real_part(&((diag - hop) * half))
}

/// Single-site boundary operators on the first and last site.
pub fn boundary_spin(form: IdentityForm) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let o = SpinOuterProducts::new(form);
    let to_dense = |m: &C3| DMatrix::from_iterator(3, 3, m.iter().copied());
    Ok((real_part(&to_dense(&o.p_down))?, real_part(&to_dense(&o.p_up))?))
}

/// `H` assembled as `Σ_j I ⊗ Π ⊗ I + Π_boundary` from the spin-operator forms.
pub fn build_hamiltonian_spin(two_n: usize, form: IdentityForm) -> Result<SparseOperator> {
    check_size(two_n)?;
    let dim = dimension(two_n);
    let bond = bond_matrix_spin(form)?;
    let (first, last) = boundary_spin(form)?;
    let mut triplets = Vec::new();
    let mut embed = |local: &DMatrix<f64>, width: usize, site: usize| {
        // local acts on `width` sites starting at `site`
        let size = local.nrows();
        let stride = site_stride(two_n, site + width - 1);
        let outer = dimension(site - 1);
        for hi in 0..outer {
            for lo in 0..stride {
                for r in 0..size {
                    for c in 0..size {
                        let v = local[(r, c)];
                        if v != 0.0 {
                            let base = hi * size * stride + lo;
                            triplets.push((base + r * stride, base + c * stride, v));
                        }
                    }
                }
            }
        }
    };
    for j in 1..two_n {
        embed(&bond, 2, j);
    }
    embed(&first, 1, 1);
    embed(&last, 1, two_n);
    Ok(SparseOperator::from_triplets(dim, triplets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::operator::{bond_projector, LinearOperator, MotzkinOperator};

    #[test]
    fn corrected_identities_are_exact() {
        let o = SpinOuterProducts::new(IdentityForm::Corrected);
        let unit = |r: usize, c: usize| {
            let mut m = C3::zeros();
            m[(r, c)] = Complex::new(1.0, 0.0);
            m
        };
        let (u, z, d) = (UP as usize, FLAT as usize, DOWN as usize);
        let cases = [
            (o.p_up, unit(u, u)),
            (o.p_flat, unit(z, z)),
            (o.p_down, unit(d, d)),
            (o.flat_up, unit(z, u)),
            (o.flat_down, unit(z, d)),
            (o.up_flat, unit(u, z)),
            (o.down_flat, unit(d, z)),
        ];
        for (got, want) in cases {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn printed_identities_flip_the_down_projector() {
        let o = SpinOuterProducts::new(IdentityForm::Printed);
        let c = SpinOuterProducts::new(IdentityForm::Corrected);
        assert!((o.p_down + c.p_down).norm() < 1e-15);
        assert!((o.flat_down + c.flat_down).norm() < 1e-15);
        assert!((o.down_flat + c.down_flat).norm() < 1e-15);
    }

    #[test]
    fn spin_bond_term_equals_projector() {
        let p = bond_projector();
        let s = bond_matrix_spin(IdentityForm::Corrected).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert!((s[(a, b)] - p[a][b]).abs() < 1e-15, "({a},{b})");
            }
        }
        let sq = &s * &s;
        assert!((&sq - &s).norm() < 1e-14);
    }

    #[test]
    fn constructions_agree() {
        for two_n in [2, 4, 6] {
            let h = build_hamiltonian(two_n).unwrap();
            let s = build_hamiltonian_spin(two_n, IdentityForm::Corrected).unwrap();
            assert!(h.max_abs_diff(&s) < 1e-12);
            assert_eq!(h.asymmetry(), 0.0);
            let bad = build_hamiltonian_spin(two_n, IdentityForm::Printed).unwrap();
            assert!(h.max_abs_diff(&bad) > 0.5);
        }
    }

    #[test]
    fn matrix_free_matches_sparse() {
        let two_n = 6;
        let h = build_hamiltonian(two_n).unwrap();
        let op = MotzkinOperator::new(two_n).unwrap();
        let x: Vec<f64> = (0..h.dim()).map(|i| ((i * 7919) % 101) as f64 - 50.0).collect();
        let (mut a, mut b) = (vec![0.0; h.dim()], vec![0.0; h.dim()]);
        h.apply(&x, &mut a);
        op.apply(&x, &mut b);
        for (p, q) in a.iter().zip(&b) {
            assert!((p - q).abs() < 1e-12);
        }
    }
}
