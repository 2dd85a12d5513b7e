//! Cross-module oracle suites: each compares two independent computations of
//! the same object and produces one report record.

use std::f64::consts::PI;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use motzkin_core::correlations::{
    excursion_moments, excursion_moments_quadrature, excursion_two_point,
    excursion_two_point_quadrature, sz_profile_exact,
};
use motzkin_core::entanglement::cut_spectrum;
use motzkin_core::hamiltonian::{
    build_hamiltonian, build_hamiltonian_spin, build_motzkin_state, conserved_charge_check,
    verify_frustration_free, Axis, IdentityForm,
};
use motzkin_core::walks::{
    brute_force_count, dyck_count, motzkin_count, motzkin_number, motzkin_number_via_catalan,
};
use motzkin_core::{BigCount, ChainGeometry, ExcursionPoint, WalkEndpoints};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Quick,
    Full,
}

/// Walk-count implementations under test. Swapping in a broken one must make
/// the walk suite fail.
#[derive(Clone, Copy)]
pub struct WalkCounts {
    pub dyck: fn(WalkEndpoints) -> BigCount,
    pub motzkin: fn(WalkEndpoints) -> BigCount,
}

impl Default for WalkCounts {
    fn default() -> Self {
        WalkCounts {
            dyck: dyck_count,
            motzkin: motzkin_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub level: Level,
    pub passed: bool,
    pub records: Vec<Record>,
}

type SuiteResult = motzkin_core::Result<(bool, String)>;

fn walks_vs_brute_force(max_steps: usize, counts: WalkCounts) -> SuiteResult {
    let mut bad = Vec::new();
    let mut checked = 0;
    for steps in 0..=max_steps {
        for start in 0..=steps {
            for end in 0..=steps {
                let e = WalkEndpoints::new(steps, start, end);
                if (counts.dyck)(e) != brute_force_count(e, false)?
                    || (counts.motzkin)(e) != brute_force_count(e, true)?
                {
                    bad.push(format!("({steps},{start},{end})"));
                }
                checked += 1;
            }
        }
    }
    let shown: Vec<_> = bad.iter().take(5).cloned().collect();
    Ok((
        bad.is_empty(),
        format!(
            "{checked} endpoint triples up to {max_steps} steps, {} mismatches {}",
            bad.len(),
            shown.join(" ")
        ),
    ))
}

fn catalan_identity(max: usize) -> SuiteResult {
    let bad: Vec<usize> = (0..=max / 2)
        .map(|i| 2 * i)
        .filter(|&l| motzkin_number(l) != motzkin_number_via_catalan(l))
        .collect();
    Ok((bad.is_empty(), format!("2n <= {max}, failing {bad:?}")))
}

fn spectra_vs_partial_trace(max: usize) -> SuiteResult {
    let mut worst = 0.0f64;
    let mut ranks_ok = true;
    for two_n in (2..=max).step_by(2) {
        let state = build_motzkin_state(two_n)?;
        for n1 in 1..two_n {
            let mut exact = cut_spectrum(&ChainGeometry::cut(two_n, n1)?)?.weights;
            exact.sort_by(|a, b| b.total_cmp(a));
            let traced = state.cut_schmidt_weights(n1)?;
            for (k, w) in traced.iter().enumerate() {
                worst = worst.max((w - exact.get(k).copied().unwrap_or(0.0)).abs());
            }
            let rank = traced.iter().filter(|&&w| w > 1e-10).count();
            ranks_ok &= rank == n1.min(two_n - n1) + 1;
        }
    }
    Ok((
        worst < 1e-10 && ranks_ok,
        format!("2n <= {max}: max eigenvalue difference {worst:.2e}, ranks match {ranks_ok}"),
    ))
}

fn sz_profile_vs_state(max: usize) -> SuiteResult {
    let mut worst = 0.0f64;
    let mut transverse = 0.0f64;
    for two_n in (2..=max).step_by(2) {
        let state = build_motzkin_state(two_n)?;
        let profile = sz_profile_exact(two_n)?;
        for site in 1..=two_n {
            worst = worst.max((state.spin_expectation(site, Axis::Z)? - profile[site - 1]).abs());
            for axis in [Axis::X, Axis::Y] {
                transverse = transverse.max(state.spin_expectation_complex(site, axis)?.norm());
            }
        }
    }
    Ok((
        worst < 1e-12 && transverse < 1e-12,
        format!("2n <= {max}: max |<s^z> - profile| {worst:.2e}, max |<s^x,y>| {transverse:.2e}"),
    ))
}

fn dual_hamiltonian(max: usize) -> SuiteResult {
    let mut worst = 0.0f64;
    let mut printed = f64::INFINITY;
    for two_n in (2..=max).step_by(2) {
        let h = build_hamiltonian(two_n)?;
        worst = worst.max(h.max_abs_diff(&build_hamiltonian_spin(two_n, IdentityForm::Corrected)?));
        printed = printed.min(h.max_abs_diff(&build_hamiltonian_spin(two_n, IdentityForm::Printed)?));
    }
    Ok((
        worst < 1e-12 && printed > 0.5,
        format!("2n <= {max}: max difference {worst:.2e}; sign-flipped identities differ by {printed:.3}"),
    ))
}

fn frustration_free(max: usize) -> SuiteResult {
    let mut worst = 0.0f64;
    let mut ok = true;
    for two_n in (2..=max).step_by(2) {
        let r = verify_frustration_free(two_n)?;
        worst = worst.max(r.energy_residual);
        ok &= r.passed() && r.energy_residual < 1e-12;
    }
    Ok((ok, format!("2n <= {max}: max |H M| {worst:.2e}, unique ground state {ok}")))
}

fn charge_conservation(max: usize) -> SuiteResult {
    let mut worst = 0.0f64;
    for two_n in (2..=max).step_by(2) {
        worst = worst.max(conserved_charge_check(two_n, 20, two_n as u64)?);
    }
    Ok((worst < 1e-12, format!("2n <= {max}: max commutator action {worst:.2e}")))
}

fn quadrature_vs_closed_forms(lambdas: &[f64]) -> SuiteResult {
    let n = 85;
    let mut moment_rel = 0.0f64;
    let mut var_rel = 0.0f64;
    for &l in lambdas {
        let e = ExcursionPoint::single(l, n)?;
        let (c, q) = (excursion_moments(&e)?, excursion_moments_quadrature(&e)?);
        moment_rel = moment_rel
            .max((c.mean - q.mean).abs() / c.mean)
            .max((c.second - q.second).abs() / c.second);
        let identity = n as f64 * 4.0 * l * (1.0 - l) * (1.0 - 8.0 / (3.0 * PI));
        var_rel = var_rel.max((q.variance() - identity).abs() / identity);
    }
    let mut joint_rel = 0.0f64;
    let mut norm_err = 0.0f64;
    for (l, m) in [(0.3, 0.6), (0.25, 0.75)] {
        let e = ExcursionPoint::pair(l, m, n)?;
        let (c, q) = (excursion_two_point(&e)?, excursion_two_point_quadrature(&e)?);
        joint_rel = joint_rel.max((q.joint.value - c.joint).abs() / c.joint);
        norm_err = norm_err.max((q.normalization.value - 1.0).abs());
    }
    Ok((
        moment_rel < 1e-8 && var_rel < 1e-8 && joint_rel < 1e-6 && norm_err < 1e-8,
        format!(
            "moments rel {moment_rel:.2e}, variance rel {var_rel:.2e}, two-point rel {joint_rel:.2e}, \
             |norm - 1| {norm_err:.2e}"
        ),
    ))
}

fn record(name: &'static str, suite: impl FnOnce() -> SuiteResult) -> Record {
    let start = Instant::now();
    let (passed, detail) = match suite() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Record {
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_validation(level: Level) -> ValidationReport {
    run_validation_with(level, WalkCounts::default())
}

pub fn run_validation_with(level: Level, counts: WalkCounts) -> ValidationReport {
    let full = level == Level::Full;
    let pick = |quick: usize, full_size: usize| if full { full_size } else { quick };
    let lambdas: &[f64] = if full {
        &[0.1, 0.25, 0.5, 0.7, 0.9]
    } else {
        &[0.25, 0.5]
    };
    let records = vec![
        record("walks_vs_brute_force", || walks_vs_brute_force(pick(10, 14), counts)),
        record("motzkin_catalan_identity", || catalan_identity(60)),
        record("cut_spectra_vs_partial_trace", || spectra_vs_partial_trace(pick(8, 12))),
        record("sz_profile_vs_state", || sz_profile_vs_state(pick(8, 12))),
        record("dual_hamiltonian_construction", || dual_hamiltonian(pick(6, 8))),
        record("frustration_free_ground_state", || frustration_free(pick(8, 12))),
        record("charge_conservation", || charge_conservation(pick(6, 10))),
        record("quadrature_vs_closed_forms", || quadrature_vs_closed_forms(lambdas)),
    ];
    ValidationReport {
        level,
        passed: records.iter().all(|r| r.passed),
        records,
    }
}
