//! Thermal ensembles as imaginary displacements, and thermodynamic
//! potentials.
//!
//! Equilibrium at reciprocal temperature β in the frame of a unit future
//! timelike u is encoded by the thermal vector ϑ = (ħβ/2)u. Canonical
//! averages of diagonal observables A(p) become pure phase-space integrals:
//! shifting every slice point z ↦ z − iϑ deepens each ray filter by the
//! Boltzmann factor, and
//!
//! ⟨A⟩_β = ∫_Γ dγ Ã(z − iϑ) / ∫_Γ dγ ‖e_{z−iϑ}‖²,
//! Ã(z) = ∫ dμ A(p) e^{−2y·p/ħ}.
//!
//! Both integrands are x-independent, so the infinite spatial volume cancels
//! in the ratio and is factored out analytically; the remaining y-integration
//! runs over the slice hyperboloid with its graph measure. Because that
//! measure's momentum marginal is proportional to E(p), the ratio equals the
//! canonical average in the *flat* measure d^dp — the independent oracle this
//! module also provides.

use crate::error::Error;
use crate::geometry::{ComplexInterval, FourVector};
use crate::massshell::MassShellGrid;
use crate::phasespace::PhaseSpaceSlice;
use crate::quadrature::Kahan;
use crate::Result;

/// Relative step of the centered finite difference for U = −∂_β ln Z.
const BETA_FD_STEP: f64 = 1e-4;

/// Reciprocal temperature β and equilibrium frame u, packaged as the
/// imaginary displacement ϑ = (ħβ/2)u.
#[derive(Debug, Clone)]
pub struct ThermalVector {
    beta: f64,
    u: FourVector,
    theta: FourVector,
}

impl ThermalVector {
    /// Requires β > 0 and a future timelike unit u.
    pub fn new(beta: f64, u: &FourVector, hbar: f64) -> Result<Self> {
        if beta <= 0.0 {
            return Err(Error::Domain(format!("beta must be positive, got {beta}")));
        }
        if !u.is_future_timelike() || (u.norm2() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("equilibrium frame must be a future timelike unit vector".into()));
        }
        Ok(Self { beta, u: *u, theta: u.scaled(0.5 * hbar * beta) })
    }

    /// Rest frame u = (1, 𝟎).
    pub fn rest(beta: f64, d: usize, hbar: f64) -> Result<Self> {
        Self::new(beta, &FourVector::rest(1.0, d), hbar)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn frame(&self) -> &FourVector {
        &self.u
    }

    pub fn theta(&self) -> &FourVector {
        &self.theta
    }

    /// The thermal translation z ↦ z − iϑ; x is untouched, y deepens to
    /// y + ϑ, and the reverse triangle inequality gives |y + ϑ| ≥ |y| + |ϑ|.
    pub fn translate(&self, z: &ComplexInterval) -> ComplexInterval {
        z.translated_imag(&self.theta)
    }
}

/// Diagonal observables used by the command-line tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    One,
    Energy,
    EnergySquared,
    MomentumSquared,
}

impl Observable {
    pub fn eval(&self, p: &FourVector) -> f64 {
        match self {
            Observable::One => 1.0,
            Observable::Energy => p.t(),
            Observable::EnergySquared => p.t() * p.t(),
            Observable::MomentumSquared => p[1] * p[1],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Observable::One => "1",
            Observable::Energy => "E",
            Observable::EnergySquared => "E^2",
            Observable::MomentumSquared => "p1^2",
        }
    }
}

/// Filtered symbol Ã(y) = ∫ dμ A(p) e^{−2y·p/ħ} (real y, real A).
pub fn filtered_symbol(
    grid: &MassShellGrid,
    a: &dyn Fn(&FourVector) -> f64,
    y: &FourVector,
    hbar: f64,
) -> Result<f64> {
    if !y.is_future_timelike() {
        return Err(Error::PastTube);
    }
    let mut acc = Kahan::new();
    for (p, w) in grid.nodes().iter().zip(grid.weights()) {
        acc.add(a(p) * (-2.0 * y.dot(p) / hbar).exp() * w);
    }
    let v = acc.value();
    if !v.is_finite() {
        return Err(Error::Domain("filtered symbol diverged on the grid".into()));
    }
    Ok(v)
}

/// Phase-space thermal average ⟨A⟩_β over a calibrated slice.
///
/// The x-volume is cancelled analytically (both integrands are
/// x-independent); what remains is the ratio of hyperboloid integrals of the
/// filtered symbol at the displaced points y(u) + ϑ.
pub fn thermal_average(
    grid: &MassShellGrid,
    slice: &PhaseSpaceSlice,
    a: &dyn Fn(&FourVector) -> f64,
    tv: &ThermalVector,
) -> Result<f64> {
    slice.normalization()?; // calibration gate: uncalibrated slices refuse service
    let hbar = grid.hbar();
    let mut num = Kahan::new();
    let mut den = Kahan::new();
    for (u, w) in slice.u_weights() {
        let y = slice.y_at(u) + *tv.theta();
        num.add(w * filtered_symbol(grid, a, &y, hbar)?);
        den.add(w * filtered_symbol(grid, &|_| 1.0, &y, hbar)?);
    }
    if den.value() <= 0.0 {
        return Err(Error::Domain("thermal partition weight vanished".into()));
    }
    Ok(num.value() / den.value())
}

/// Canonical-ensemble oracle ∫d^dp A e^{−βu·p} / ∫d^dp e^{−βu·p} with the
/// flat momentum measure (dμ · 2E).
pub fn canonical_average(
    grid: &MassShellGrid,
    a: &dyn Fn(&FourVector) -> f64,
    tv: &ThermalVector,
) -> f64 {
    let mut num = Kahan::new();
    let mut den = Kahan::new();
    for (p, w) in grid.nodes().iter().zip(grid.weights()) {
        let flat = 2.0 * p.t() * w;
        let boltz = (-tv.beta() * tv.frame().dot(p)).exp();
        num.add(a(p) * boltz * flat);
        den.add(boltz * flat);
    }
    num.value() / den.value()
}

/// Per-unit-volume thermodynamic record at one β.
#[derive(Debug, Clone, Copy)]
pub struct ThermoPotentials {
    pub beta: f64,
    /// Massieu potential Φ = ln Z.
    pub massieu: f64,
    /// Internal energy U = −∂_β ln Z (centered finite difference).
    pub internal_energy: f64,
    /// Entropy S = Φ + βU.
    pub entropy: f64,
    /// Helmholtz free energy F = −Φ/β.
    pub free_energy: f64,
}

/// ln Z(β) with Z = ∫d^dp e^{−βu·p}/(2πħ)^d per unit volume.
pub fn log_partition(grid: &MassShellGrid, beta: f64, u: &FourVector, hbar: f64) -> Result<f64> {
    if beta <= 0.0 {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    let mut z = Kahan::new();
    for (p, w) in grid.nodes().iter().zip(grid.weights()) {
        z.add(2.0 * p.t() * w * (-beta * u.dot(p)).exp());
    }
    let cell = (2.0 * std::f64::consts::PI * hbar).powi(grid.d() as i32);
    Ok((z.value() / cell).ln())
}

/// Thermodynamic potentials on a β grid; U by the centered finite difference
/// of ln Z with relative step 10⁻⁴, S and F by their defining identities.
pub fn potentials(
    grid: &MassShellGrid,
    betas: &[f64],
    u: &FourVector,
    hbar: f64,
) -> Result<Vec<ThermoPotentials>> {
    betas
        .iter()
        .map(|&beta| {
            let phi = log_partition(grid, beta, u, hbar)?;
            let h = BETA_FD_STEP * beta;
            let hi = log_partition(grid, beta + h, u, hbar)?;
            let lo = log_partition(grid, beta - h, u, hbar)?;
            let internal_energy = -(hi - lo) / (2.0 * h);
            Ok(ThermoPotentials {
                beta,
                massieu: phi,
                internal_energy,
                entropy: phi + beta * internal_energy,
                free_energy: -phi / beta,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::LorentzBoost;
    use crate::tolerances;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::sync::Arc;

    /// (K₀(2)+K₂(2))/(2K₁(2))
    const MEAN_ENERGY_BETA2: f64 = 1.314_307_758_763_789_489_948_79;
    /// 2K₁(2)
    const TWO_K1_2: f64 = 2.0 * 0.139_865_881_816_522_427_284_6;

    fn grid() -> Arc<MassShellGrid> {
        Arc::new(MassShellGrid::build(1, 1.0, 6.0, 512).unwrap())
    }

    fn calibrated_slice(g: &Arc<MassShellGrid>, t: f64, lambda: f64) -> PhaseSpaceSlice {
        let mut s = PhaseSpaceSlice::new(t, lambda, 1.0, 1.0).unwrap();
        s.calibrate(Arc::clone(g)).unwrap();
        s
    }

    #[test]
    fn translate_deepens_y() {
        let tv = ThermalVector::rest(2.0, 1, 1.0).unwrap();
        assert_abs_diff_eq!(tv.theta().t(), 1.0);
        // parallel case: equality in the reverse triangle inequality
        let z = ComplexInterval::imaginary(FourVector::new(&[1.0, 0.0]));
        let shifted = tv.translate(&z);
        assert_abs_diff_eq!(shifted.y.timelike_norm().unwrap(), 2.0, epsilon = 1e-15);
        // generic case: strict gain
        let z = ComplexInterval::imaginary(FourVector::new(&[2.0_f64.sqrt(), 1.0]));
        let shifted = tv.translate(&z);
        assert!(
            shifted.y.timelike_norm().unwrap() >= z.y.timelike_norm().unwrap() + 1.0 - 1e-15
        );
        assert_abs_diff_eq!(shifted.x.t(), z.x.t());
    }

    #[test]
    fn rejects_bad_thermal_vectors() {
        assert!(ThermalVector::rest(-1.0, 1, 1.0).is_err());
        assert!(ThermalVector::new(1.0, &FourVector::new(&[2.0, 0.0]), 1.0).is_err());
        assert!(ThermalVector::new(1.0, &FourVector::new(&[-1.0, 0.0]), 1.0).is_err());
    }

    #[test]
    fn unit_observable_averages_to_one() {
        let g = grid();
        let slice = calibrated_slice(&g, 0.0, 1.0);
        let tv = ThermalVector::rest(1.0, 1, 1.0).unwrap();
        let v = thermal_average(&g, &slice, &|p| Observable::One.eval(p), &tv).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn odd_observable_averages_to_zero() {
        let g = grid();
        let slice = calibrated_slice(&g, 0.0, 1.0);
        let tv = ThermalVector::rest(1.0, 1, 1.0).unwrap();
        let v = thermal_average(&g, &slice, &|p| p[1], &tv).unwrap();
        assert!(v.abs() < 1e-10, "odd symbol must average out, got {v}");
    }

    #[test]
    fn mean_energy_matches_bessel_value() {
        let g = grid();
        let slice = calibrated_slice(&g, 0.0, 1.0);
        let tv = ThermalVector::rest(2.0, 1, 1.0).unwrap();
        let phase = thermal_average(&g, &slice, &|p| p.t(), &tv).unwrap();
        let oracle = canonical_average(&g, &|p| p.t(), &tv);
        assert_relative_eq!(phase, MEAN_ENERGY_BETA2, max_relative = 1e-9);
        assert_relative_eq!(oracle, MEAN_ENERGY_BETA2, max_relative = 1e-9);
    }

    #[test]
    fn theorem_equivalence_over_observables_and_temperatures() {
        let g = grid();
        let slice = calibrated_slice(&g, 0.0, 1.0);
        let observables = [
            Observable::One,
            Observable::Energy,
            Observable::EnergySquared,
            Observable::MomentumSquared,
        ];
        for beta in [0.5, 1.0, 2.0] {
            let tv = ThermalVector::rest(beta, 1, 1.0).unwrap();
            for obs in &observables {
                let phase = thermal_average(&g, &slice, &|p| obs.eval(p), &tv).unwrap();
                let oracle = canonical_average(&g, &|p| obs.eval(p), &tv);
                assert_relative_eq!(phase, oracle, max_relative = tolerances::THERMAL_EQUIV_REL);
            }
        }
    }

    #[test]
    fn boosted_frame_reproduces_rest_average() {
        let g = grid();
        let slice = calibrated_slice(&g, 0.0, 1.0);
        let r = 0.3;
        let u = FourVector::new(&[f64::cosh(r), f64::sinh(r)]);
        let tv_rest = ThermalVector::rest(2.0, 1, 1.0).unwrap();
        let tv_boost = ThermalVector::new(2.0, &u, 1.0).unwrap();
        let lam_inv = LorentzBoost::boost1(-r);

        // boosted symbol u·p against boosted frame = rest-frame ⟨E⟩
        let phase = thermal_average(&g, &slice, &|p| u.dot(p), &tv_boost).unwrap();
        let rest = thermal_average(&g, &slice, &|p| p.t(), &tv_rest).unwrap();
        assert_relative_eq!(phase, rest, max_relative = tolerances::THERMAL_EQUIV_REL);

        // transverse momentum-squared transported by the inverse boost
        let psq_boost =
            thermal_average(&g, &slice, &|p| lam_inv.apply(p)[1].powi(2), &tv_boost).unwrap();
        let psq_rest = thermal_average(&g, &slice, &|p| p[1] * p[1], &tv_rest).unwrap();
        assert_relative_eq!(psq_boost, psq_rest, max_relative = tolerances::THERMAL_EQUIV_REL);

        // canonical oracle shows the same covariance
        let o_boost = canonical_average(&g, &|p| u.dot(p), &tv_boost);
        let o_rest = canonical_average(&g, &|p| p.t(), &tv_rest);
        assert_relative_eq!(o_boost, o_rest, max_relative = 1e-9);
    }

    #[test]
    fn slice_independence_of_thermal_averages() {
        let g = grid();
        let tv = ThermalVector::rest(1.0, 1, 1.0).unwrap();
        let base = thermal_average(
            &g,
            &calibrated_slice(&g, 0.0, 1.0),
            &|p| p.t(),
            &tv,
        )
        .unwrap();
        for (t, lam) in [(0.0, 2.0), (0.7, 1.0), (0.7, 2.0)] {
            let v = thermal_average(&g, &calibrated_slice(&g, t, lam), &|p| p.t(), &tv).unwrap();
            assert_relative_eq!(v, base, max_relative = tolerances::THERMAL_INDEPENDENCE_REL);
        }
    }

    #[test]
    fn uncalibrated_slice_is_refused() {
        let g = grid();
        let slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let tv = ThermalVector::rest(1.0, 1, 1.0).unwrap();
        assert!(matches!(
            thermal_average(&g, &slice, &|p| p.t(), &tv),
            Err(Error::NotCalibrated)
        ));
    }

    #[test]
    fn partition_function_closed_form() {
        // Z·2πħ = ∫dq e^{−βE} = 2K₁(2) at β = 2, m = 1
        let g = grid();
        let u = FourVector::rest(1.0, 1);
        let phi = log_partition(&g, 2.0, &u, 1.0).unwrap();
        let expect = (TWO_K1_2 / (2.0 * std::f64::consts::PI)).ln();
        assert_relative_eq!(phi, expect, max_relative = 1e-9);
    }

    #[test]
    fn internal_energy_matches_mean_energy() {
        let g = grid();
        let u = FourVector::rest(1.0, 1);
        let pots = potentials(&g, &[2.0], &u, 1.0).unwrap();
        assert_relative_eq!(
            pots[0].internal_energy,
            MEAN_ENERGY_BETA2,
            max_relative = tolerances::POTENTIALS_U_REL
        );
    }

    #[test]
    fn potentials_identities_and_monotonicity() {
        let g = grid();
        let u = FourVector::rest(1.0, 1);
        let betas = [0.5, 1.0, 2.0, 4.0];
        let pots = potentials(&g, &betas, &u, 1.0).unwrap();
        let mut prev_u = f64::INFINITY;
        for p in &pots {
            assert!(
                (p.entropy - p.massieu - p.beta * p.internal_energy).abs()
                    < tolerances::POTENTIALS_IDENTITY_ABS
            );
            assert!((p.free_energy + p.massieu / p.beta).abs() < tolerances::POTENTIALS_IDENTITY_ABS);
            // F = U − S/β re-derived from the record
            let f2 = p.internal_energy - p.entropy / p.beta;
            assert!((f2 - p.free_energy).abs() < tolerances::POTENTIALS_IDENTITY_ABS);
            assert!(p.internal_energy < prev_u, "U must decrease with beta");
            prev_u = p.internal_energy;
        }
        assert!(potentials(&g, &[-1.0], &u, 1.0).is_err());
    }

    #[test]
    fn filtered_symbol_rejects_past_y() {
        let g = grid();
        let y = FourVector::new(&[-1.0, 0.0]);
        assert!(filtered_symbol(&g, &|_| 1.0, &y, 1.0).is_err());
    }
}
