//! Self-contained verification suite: re-derives the library's structural
//! invariants at runtime and reports one record per check.
//!
//! Each record compares a computed number against an expected one under an
//! absolute allowance (relative tolerances are scaled by the expected value
//! before they land in the record, so `|computed − expected| ≤ tolerance`
//! is the pass rule for every row). The suite is deterministic: fixed grids,
//! fixed probe points, no environment dependence.

use num_complex::Complex64;
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

use crate::gauge;
use crate::geometry::{ComplexInterval, FourVector};
use crate::massshell::MassShellGrid;
use crate::phasespace::{self, PhaseSpaceSlice};
use crate::specfun::bessel_k;
use crate::states::{coherent_norm2, effective_mass, WaveFunction};
use crate::thermal::{self, ThermalVector};
use crate::tolerances;
use crate::Result;

/// One verification row: `pass` means `|computed − expected| ≤ tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationRecord {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Wall-clock seconds spent on this check.
    pub runtime: f64,
}

/// The full suite outcome; `overall` is the conjunction of all rows.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub records: Vec<VerificationRecord>,
    pub overall: bool,
}

impl VerificationReport {
    fn push(&mut self, name: &str, started: Instant, computed: f64, expected: f64, tol: f64) {
        let pass = (computed - expected).abs() <= tol;
        self.overall &= pass;
        self.records.push(VerificationRecord {
            name: name.to_string(),
            computed,
            expected,
            tolerance: tol,
            pass,
            runtime: started.elapsed().as_secs_f64(),
        });
    }
}

// Frozen reference values (50-digit arithmetic, truncated to f64).
const K0_2: f64 = 0.113_893_872_749_533_43;
const K1_2: f64 = 0.139_865_881_816_522_43;
const K1_OVER_K0_AT_2: f64 = 1.228_036_929_818_908;
const NORMALIZATION_CLOSED: f64 = 1.137_911_126_179_267_4;
const MEAN_ENERGY_BETA_2: f64 = 1.314_307_758_763_789_5;

fn reference_state(grid: &Arc<MassShellGrid>) -> Result<WaveFunction> {
    WaveFunction::superposition(
        Arc::clone(grid),
        &[
            (
                Complex64::new(0.8, 0.1),
                ComplexInterval::new(FourVector::new(&[0.0, -0.6]), FourVector::new(&[1.1, 0.2])),
            ),
            (
                Complex64::new(-0.3, 0.45),
                ComplexInterval::new(FourVector::new(&[0.2, 0.5]), FourVector::new(&[1.4, -0.3])),
            ),
        ],
    )
}

/// Run every check with the default parameter set (d = 1, m = λ = ħ = 1).
pub fn run_verification() -> Result<VerificationReport> {
    let mut report = VerificationReport { records: Vec::new(), overall: true };

    // Geometry: the rest interval z = −iλu has proper length exactly λ.
    let t0 = Instant::now();
    let rest = ComplexInterval::imaginary(FourVector::rest(1.0, 1));
    let len = rest.complex_length()?;
    report.push("interval_length_rest", t0, len.zeta.norm(), 1.0, 1e-12);

    // Kernel function against a frozen high-precision value.
    let t0 = Instant::now();
    let k = bessel_k(0.0, Complex64::new(2.0, 0.0))?;
    report.push("bessel_k0_at_2", t0, k.value.re, K0_2, tolerances::BESSEL_ABS);

    let grid = Arc::new(MassShellGrid::build(1, 1.0, 6.0, 512)?);

    // Coherent-state norm: shell quadrature vs the closed form K₀(2λm/ħ).
    let t0 = Instant::now();
    let z = ComplexInterval::imaginary(FourVector::rest(1.0, 1));
    let e_z = WaveFunction::coherent(Arc::clone(&grid), &z)?;
    let closed = coherent_norm2(1.0, 1, 1.0, 1.0)?;
    report.push(
        "coherent_norm_closed_form",
        t0,
        e_z.norm2(),
        closed,
        tolerances::NORM_FORMULA_REL * closed,
    );

    // Effective mass of the filtered shell at λm/ħ = 1.
    let t0 = Instant::now();
    let m_eff = effective_mass(1.0, 1, 1.0, 1.0)?;
    report.push(
        "effective_mass",
        t0,
        m_eff,
        K1_OVER_K0_AT_2,
        tolerances::EFFECTIVE_MASS_REL * K1_OVER_K0_AT_2,
    );

    // Phase-space slice: calibration profile must be rapidity-independent.
    let mut slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0)?;
    let t0 = Instant::now();
    let profile = slice.calibration_profile(Arc::clone(&grid))?;
    let mean = profile.iter().sum::<f64>() / profile.len() as f64;
    let flatness = profile.iter().map(|v| (v / mean - 1.0).abs()).fold(0.0, f64::max);
    report.push("plancherel_flatness", t0, flatness, 0.0, tolerances::FLATNESS_REL);

    // ... and the calibrated constant must match its closed form
    // m / (2πħλ K₁(2λm/ħ)).
    let t0 = Instant::now();
    let n0 = slice.calibrate(Arc::clone(&grid))?;
    report.push(
        "slice_normalization",
        t0,
        n0,
        NORMALIZATION_CLOSED,
        tolerances::CALIBRATION_REL * NORMALIZATION_CLOSED,
    );

    // Born rule: the slice integral of |ψ|² reproduces the shell norm.
    let psi = reference_state(&grid)?;
    let t0 = Instant::now();
    let shell_norm = psi.norm2();
    let slice_norm = slice.norm2(&psi)?;
    report.push(
        "phase_space_norm",
        t0,
        slice_norm,
        shell_norm,
        tolerances::PLANCHEREL_REL * shell_norm,
    );

    // Reproducing identity at a point off the integration slice.
    let t0 = Instant::now();
    let zp = ComplexInterval::new(
        FourVector::new(&[0.6, -0.5]),
        FourVector::new(&[1.3, 0.25]),
    );
    let direct = psi.synthesize(&zp)?;
    let reproduced = slice.reproduce(&psi, &zp)?;
    let rel = (reproduced - direct).norm() / direct.norm();
    report.push("reproducing_identity", t0, rel, 0.0, tolerances::REPRODUCE_REL);

    // Continuity: the probability current of a synthesized state is
    // divergence-free on shell.
    let t0 = Instant::now();
    let z_probe = ComplexInterval::new(
        FourVector::new(&[0.3, 0.4]),
        FourVector::new(&[1.2, -0.1]),
    );
    let residual = phasespace::conservation_residual(&psi, &z_probe, 1.0)?;
    report.push("current_conservation", t0, residual, 0.0, tolerances::CONSERVATION_ABS);

    // Ensemble average over the slice equals the canonical shell average.
    let t0 = Instant::now();
    let tv = ThermalVector::rest(2.0, 1, 1.0)?;
    let energy = |p: &FourVector| p.t();
    let phase_avg = thermal::thermal_average(&grid, &slice, &energy, &tv)?;
    let canon = thermal::canonical_average(&grid, &energy, &tv);
    report.push(
        "thermal_equivalence",
        t0,
        phase_avg,
        canon,
        tolerances::THERMAL_EQUIV_REL * canon.abs(),
    );

    // Partition function identity Z(β)·2πħ = 2m K₁(βm) in one dimension.
    let t0 = Instant::now();
    let phi = thermal::log_partition(&grid, 2.0, &FourVector::rest(1.0, 1), 1.0)?;
    let z_scaled = phi.exp() * 2.0 * std::f64::consts::PI;
    let expected = 2.0 * K1_2;
    report.push("partition_identity", t0, z_scaled, expected, 1e-8 * expected);

    // Internal energy from the Massieu derivative against the frozen mean.
    let t0 = Instant::now();
    let pots = thermal::potentials(&grid, &[2.0], &FourVector::rest(1.0, 1), 1.0)?;
    report.push(
        "internal_energy",
        t0,
        pots[0].internal_energy,
        MEAN_ENERGY_BETA_2,
        tolerances::POTENTIALS_U_REL * MEAN_ENERGY_BETA_2,
    );

    // Synthesized states are holomorphic: Cauchy–Riemann residual.
    let t0 = Instant::now();
    let z_cr = ComplexInterval::new(
        FourVector::new(&[0.25, -0.35]),
        FourVector::new(&[1.15, 0.2]),
    );
    let h = gauge::default_step(&z_cr)?;
    let scale = psi.synthesize(&z_cr)?.norm();
    let cr = gauge::cauchy_riemann_residual(&psi, &z_cr, h)? / scale;
    report.push("cauchy_riemann", t0, cr, 0.0, tolerances::CR_RESIDUAL_ABS);

    // Gauge sector: abelian field strength is invariant under holomorphic
    // gauge transformations.
    let t0 = Instant::now();
    let metric = gauge::abelian_test_metric(vec![0.6, -0.3]);
    let z_g = ComplexInterval::new(FourVector::new(&[0.1, -0.4]), FourVector::new(&[1.2, 0.3]));
    let hg = gauge::default_step(&z_g)?;
    let base = gauge::field_scalar(&metric, &z_g, hg)?;
    let chi = gauge::plane_wave_gauge(FourVector::new(&[0.7, -0.4]));
    let moved = gauge::field_scalar(&gauge::gauge_transform_scalar(&metric, &chi), &z_g, hg)?;
    let mut drift: f64 = 0.0;
    for mu in 0..2 {
        for nu in 0..2 {
            drift = drift.max((moved.components[mu][nu] - base.components[mu][nu]).norm());
        }
    }
    report.push("gauge_field_invariance", t0, drift, 0.0, tolerances::GAUGE_INVARIANCE_ABS);

    // Non-abelian integrability: holomorphic curl of 𝒜 equals its
    // self-commutator.
    let t0 = Instant::now();
    let (ma, mb) = gauge::test_metric_pair();
    let gm = gauge::nonabelian_test_metric(ma, mb);
    let r = gauge::integrability_residual(&gm, &z_g, hg)?;
    report.push("integrability", t0, r, 0.0, tolerances::INTEGRABILITY_ABS);

    // Covariant density is exactly gauge invariant.
    let t0 = Instant::now();
    let rho = gauge::covariant_density(&psi, &metric, &z_g)?;
    let transformed = gauge::gauge_transform_scalar(&metric, &chi);
    let rho_t = (psi.synthesize(&z_g)? * chi(&z_g)).norm_sqr() * transformed(&z_g)?;
    report.push(
        "covariant_density",
        t0,
        (rho - rho_t).abs(),
        0.0,
        tolerances::COVARIANT_DENSITY_ABS * rho.abs().max(1.0),
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_and_is_complete() {
        let report = run_verification().unwrap();
        assert!(report.records.len() >= 14, "suite lost checks: {}", report.records.len());
        for r in &report.records {
            assert!(
                r.pass,
                "{}: computed {} expected {} tolerance {}",
                r.name, r.computed, r.expected, r.tolerance
            );
        }
        assert!(report.overall);
    }

    #[test]
    fn report_serializes_to_json() {
        let report = VerificationReport {
            records: vec![VerificationRecord {
                name: "demo".into(),
                computed: 1.0,
                expected: 1.0,
                tolerance: 1e-12,
                pass: true,
                runtime: 0.001,
            }],
            overall: true,
        };
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"overall\":true"));
        assert!(text.contains("\"demo\""));
    }
}
