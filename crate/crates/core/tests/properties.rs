use motzkin_core::correlations::{
    expected_height_exact, height_distribution_exact, sz_profile_exact, szsz_exact,
    two_point_height_exact,
};
use motzkin_core::entanglement::{
    block_entropy, block_spectrum, boltzmann_weights, cut_spectrum, cut_spectrum_gaussian,
    entanglement_hamiltonian_cut,
};
use motzkin_core::hamiltonian::{build_motzkin_state, thermal_correlator, Axis};
use motzkin_core::numeric::{renyi_entropy, shannon_entropy};
use motzkin_core::walks::{dyck_count, motzkin_count, motzkin_number};
use motzkin_core::{ChainGeometry, WalkEndpoints};
use num_bigint::BigUint;
use nalgebra::SymmetricEigen;
use proptest::prelude::*;

fn count(steps: usize, a: usize, b: usize) -> BigUint {
    motzkin_count(WalkEndpoints::new(steps, a, b)).into_inner()
}

proptest! {
    #[test]
    fn motzkin_counts_obey_the_transfer_recursion(steps in 1usize..60, a in 0usize..30, b in 0usize..30) {
        let down = if b > 0 { count(steps - 1, a, b - 1) } else { BigUint::ZERO };
        let rhs = down + count(steps - 1, a, b) + count(steps - 1, a, b + 1);
        prop_assert_eq!(count(steps, a, b), rhs);
    }

    #[test]
    fn walk_counts_are_reversal_symmetric(steps in 0usize..80, a in 0usize..40, b in 0usize..40) {
        prop_assert_eq!(count(steps, a, b), count(steps, b, a));
        let d = |x, y| dyck_count(WalkEndpoints::new(steps, x, y)).into_inner();
        prop_assert_eq!(d(a, b), d(b, a));
        if (steps + a + b) % 2 == 1 {
            prop_assert_eq!(d(a, b), BigUint::ZERO);
        }
    }

    #[test]
    fn cut_spectra_are_normalized_with_full_rank(half in 1usize..100, frac in 0.0f64..1.0) {
        let two_n = 2 * half;
        let n1 = 1 + ((two_n - 2) as f64 * frac) as usize;
        let g = ChainGeometry::cut(two_n, n1).unwrap();
        let s = cut_spectrum(&g).unwrap();
        prop_assert!((s.total() - 1.0).abs() < 1e-12);
        prop_assert_eq!(s.rank(), n1.min(two_n - n1) + 1);
        prop_assert!(s.weights.iter().all(|&w| w > 0.0));
        let d = height_distribution_exact(&g).unwrap();
        prop_assert!((d.mean() - expected_height_exact(&g).unwrap()).abs() < 1e-9 * d.mean().max(1.0));
    }

    #[test]
    fn renyi_entropies_decrease_with_order(raw in prop::collection::vec(1e-6f64..1.0, 2..40),
                                           k1 in 0.1f64..5.0, k2 in 0.1f64..5.0) {
        let total: f64 = raw.iter().sum();
        let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let (lo, hi) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
        prop_assert!(renyi_entropy(&p, lo) >= renyi_entropy(&p, hi) - 1e-12);
        prop_assert!(renyi_entropy(&p, hi) <= (p.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn height_two_point_is_mirror_symmetric(half in 3usize..40, a in 1usize..80, d in 1usize..20) {
        let two_n = 2 * half;
        prop_assume!(a + d <= two_n);
        let g = ChainGeometry::pair(two_n, a, a + d).unwrap();
        // heights are read after each step, so mirroring maps site k to 2n - k
        prop_assume!(two_n - a - d >= 1);
        let m = ChainGeometry::pair(two_n, two_n - a - d, two_n - a).unwrap();
        let x = two_point_height_exact(&g).unwrap();
        let y = two_point_height_exact(&m).unwrap();
        prop_assert!((x - y).abs() < 1e-12 * x.abs().max(1.0));
    }
}

#[test]
fn sz_profile_is_antisymmetric() {
    for two_n in [2, 10, 64, 170] {
        let p = sz_profile_exact(two_n).unwrap();
        for k in 0..two_n {
            assert!((p[k] + p[two_n - 1 - k]).abs() < 1e-12, "2n={two_n} site {}", k + 1);
        }
    }
}

#[test]
fn motzkin_state_matches_combinatorial_observables() {
    for two_n in [4, 8, 12] {
        let state = build_motzkin_state(two_n).unwrap();
        assert_eq!(state.nonzeros(), motzkin_number(two_n).to_f64() as usize);
        let profile = sz_profile_exact(two_n).unwrap();
        for site in 1..=two_n {
            let sz = state.spin_expectation(site, Axis::Z).unwrap();
            assert!((sz - profile[site - 1]).abs() < 1e-12);
        }
    }
    let two_n = 10;
    let state = build_motzkin_state(two_n).unwrap();
    for a in 1..two_n {
        for b in a + 1..=two_n {
            let g = ChainGeometry::pair(two_n, a, b).unwrap();
            let exact = szsz_exact(&g).unwrap();
            let direct = state.szsz(a, b).unwrap();
            assert!((exact - direct).abs() < 1e-12, "({a},{b}): {exact} vs {direct}");
        }
    }
}

#[test]
fn entanglement_hamiltonian_reproduces_gaussian_spectrum() {
    let g = ChainGeometry::cut(200, 70).unwrap();
    let levels = entanglement_hamiltonian_cut(&g).unwrap();
    let boltz = boltzmann_weights(&levels);
    let gauss = cut_spectrum_gaussian(&g).unwrap();
    // the Gaussian m = 0 weight is zero, the Boltzmann spectrum starts at m = 1
    assert_eq!(gauss.weights[0], 0.0);
    for (w, v) in boltz.weights.iter().zip(&gauss.weights[1..]) {
        assert!((w - v).abs() < 1e-14);
    }
    let block = block_spectrum(50).unwrap();
    assert_eq!(block.rank(), 101);
    assert!((block.total() - 1.0).abs() < 1e-14);
}

#[test]
fn thermal_correlator_approaches_ground_state() {
    let two_n = 8;
    let state = build_motzkin_state(two_n).unwrap();
    let ground = state.szsz(3, 6).unwrap();
    // the 2n = 8 gap is about 4.65e-3, so only a large β isolates the ground state
    let cold = thermal_correlator(two_n, 3, 6, 1e4).unwrap();
    assert!((cold - ground).abs() < 1e-6, "{cold} vs {ground}");
    let warm = thermal_correlator(two_n, 3, 6, 50.0).unwrap();
    assert!((warm - ground).abs() > 1e-6);
    assert!(thermal_correlator(two_n, 3, 6, 0.0).unwrap().abs() < 1e-14);
}

#[test]
fn middle_block_entropy_trends_toward_the_asymptotic_form() {
    let predicted = block_entropy(2).unwrap().asymptotic;
    let mut errors = Vec::new();
    for two_n in [4, 6, 8, 10, 12] {
        let n = two_n / 2;
        let rho = build_motzkin_state(two_n).unwrap().reduced_density(n, n + 1).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        let eig = SymmetricEigen::new(rho).eigenvalues;
        assert!(eig.iter().all(|&w| w > -1e-12));
        let weights: Vec<f64> = eig.iter().map(|&w| w.max(0.0)).collect();
        let s = shannon_entropy(&weights);
        errors.push((s - predicted).abs() / predicted);
    }
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(*errors.last().unwrap() < 0.25, "{errors:?}");
}
