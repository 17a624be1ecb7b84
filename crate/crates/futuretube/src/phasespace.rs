//! Covariant phase-space slices, the Born-rule normalization, and conserved
//! currents.
//!
//! A slice Γ = Σ_t − iΩ_λ pairs the constant-time plane x⁰ = t with the
//! hyperboloid λ(y) = λ. Points are z = (t, 𝐱) − iy(u); the measure is
//! dγ = N d𝐱 d𝐲 with 𝐲 the spatial coordinates of the hyperboloid graph
//! (weight λ cosh u du in d = 1). With the right constant N, holomorphic
//! synthesis becomes an isometry: ∫_Γ dγ |ψ|² = ‖a‖² for every state, because
//! the momentum weight the slice induces,
//! ∫ d𝐲 e^{−2y·p/ħ} = (2λ/m) K₁(2λm/ħ) E(p), is exactly proportional to the
//! energy that the invariant measure dμ = dq/2E divides out.
//!
//! [`PhaseSpaceSlice::calibrate`] fixes N empirically from reference states at
//! several boosts and errors when the implied weight fails to be flat; the
//! closed form N = m/(2πħ λ K₁(2λm/ħ)) is then a theorem the tests check, not
//! an input.
//!
//! The probability current contracts the density with momentum insertions
//! rather than finite differences: j⁰ ∝ Re(ψ̄·S[E]) > 0 and j¹ ∝ Re(ψ̄·S[q]),
//! where S[f] resynthesizes the state with f(p) inserted. On shell,
//! E² − q² = m² makes the four-divergence cancel mode by mode, so the
//! conservation residual measures pure floating-point noise.

use num_complex::Complex64;

use crate::error::Error;
use crate::geometry::{ComplexInterval, FourVector};
use crate::quadrature::{gauss_legendre, Kahan, KahanComplex};
use crate::states::{coherent_norm2, overlap_closed, WaveFunction};
use crate::tolerances;
use crate::Result;

/// Rapidities of the reference states used to calibrate N; spanning a range
/// of boosts is what makes calibration a flatness test rather than a fit.
const CALIBRATION_RAPIDITIES: [f64; 3] = [0.0, 0.4, 0.8];

/// Width of the imaginary-space band B_λ used for charge integration, in
/// units of ħ/m; e^{−2·12} ≈ 4·10⁻¹¹ bounds the discarded tail.
const BAND_WIDTH: f64 = 12.0;

/// A sampled phase-space slice Γ = Σ_t − iΩ_λ in d = 1.
#[derive(Debug, Clone)]
pub struct PhaseSpaceSlice {
    t: f64,
    lambda: f64,
    m: f64,
    hbar: f64,
    x_step: f64,
    x_nodes: Vec<f64>,
    du: f64,
    u_nodes: Vec<f64>,
    normalization: Option<f64>,
}

/// Field sampled on a slice grid, row-major over (u, x).
struct SliceField {
    values: Vec<Complex64>,
    n_x: usize,
}

impl SliceField {
    fn at(&self, iu: usize, ix: usize) -> Complex64 {
        self.values[iu * self.n_x + ix]
    }
}

impl PhaseSpaceSlice {
    /// Slice at time `t` and resolution λ with default grids (|x¹| ≤ 12,
    /// step 0.1; |u| ≤ 7 with 280 nodes), adequate for unit-scale states:
    /// the rapidity window leaves a relative tail below 1e−9 even for states
    /// boosted to |u| ≈ 1.
    pub fn new(t: f64, lambda: f64, m: f64, hbar: f64) -> Result<Self> {
        Self::with_grids(t, lambda, m, hbar, 12.0, 0.1, 7.0, 280)
    }

    /// Slice with explicit grid extents; x¹ and u nodes are uniform midpoints.
    #[allow(clippy::too_many_arguments)]
    pub fn with_grids(
        t: f64,
        lambda: f64,
        m: f64,
        hbar: f64,
        x_extent: f64,
        x_step: f64,
        u_extent: f64,
        n_u: usize,
    ) -> Result<Self> {
        if lambda <= 0.0 || m <= 0.0 || hbar <= 0.0 {
            return Err(Error::Domain(format!(
                "lambda, m, hbar must be positive, got {lambda}, {m}, {hbar}"
            )));
        }
        if x_extent <= 0.0 || x_step <= 0.0 || x_step >= x_extent {
            return Err(Error::Domain(format!(
                "need 0 < x_step < x_extent, got {x_step}, {x_extent}"
            )));
        }
        if u_extent <= 0.0 || n_u < 16 {
            return Err(Error::Domain(format!(
                "need positive u_extent and at least 16 u nodes, got {u_extent}, {n_u}"
            )));
        }
        let n_x = (2.0 * x_extent / x_step).round() as usize;
        let x_nodes = (0..n_x).map(|i| -x_extent + (i as f64 + 0.5) * x_step).collect();
        let du = 2.0 * u_extent / n_u as f64;
        let u_nodes = (0..n_u).map(|j| -u_extent + (j as f64 + 0.5) * du).collect();
        Ok(Self { t, lambda, m, hbar, x_step, x_nodes, du, u_nodes, normalization: None })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Imaginary part y(u) = λ(cosh u, sinh u).
    pub fn y_at(&self, u: f64) -> FourVector {
        FourVector::new(&[self.lambda * u.cosh(), self.lambda * u.sinh()])
    }

    /// Tube point z = (t, x¹) − iy(u).
    pub fn point(&self, x1: f64, u: f64) -> ComplexInterval {
        ComplexInterval::new(FourVector::new(&[self.t, x1]), self.y_at(u))
    }

    /// Slice measure weight at the (x, u) node: Δx · λ cosh u · Δu.
    fn weight(&self, u: f64) -> f64 {
        self.x_step * self.lambda * u.cosh() * self.du
    }

    /// The u nodes with their hyperboloid graph-measure weights λ cosh u Δu
    /// (no x factor) — the y-marginal used where the x-volume cancels.
    pub fn u_weights(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.u_nodes
            .iter()
            .map(move |&u| (u, self.lambda * u.cosh() * self.du))
    }

    /// The calibrated normalization N, or [`Error::NotCalibrated`].
    pub fn normalization(&self) -> Result<f64> {
        self.normalization.ok_or(Error::NotCalibrated)
    }

    /// Samples Σ_j w_j a_j f(p_j) conj(e_z(p_j)) on the whole grid.
    ///
    /// The x¹-dependence enters only through e^{i x¹ q_j / ħ}, so the phase
    /// matrix over (x, q) is built once and each u row is a matrix–vector
    /// product — no transcendentals in the inner loop.
    fn field(&self, psi: &WaveFunction, insert: impl Fn(&FourVector) -> f64) -> SliceField {
        let grid = psi.grid();
        let hbar = self.hbar;
        let n_x = self.x_nodes.len();
        let n_p = grid.len();
        // conj(e_z(p)) = e^{−i x·p/ħ} e^{−y·p/ħ}, and x·p = tE − x¹q
        let mut phase = vec![Complex64::default(); n_x * n_p];
        for (i, x1) in self.x_nodes.iter().enumerate() {
            for (j, p) in grid.nodes().iter().enumerate() {
                phase[i * n_p + j] = Complex64::from_polar(1.0, x1 * p[1] / hbar);
            }
        }
        let mut values = vec![Complex64::default(); self.u_nodes.len() * n_x];
        let mut coeff = vec![Complex64::default(); n_p];
        for (iu, &u) in self.u_nodes.iter().enumerate() {
            let y = self.y_at(u);
            for (j, ((p, a), w)) in grid
                .nodes()
                .iter()
                .zip(psi.amplitudes())
                .zip(grid.weights())
                .enumerate()
            {
                let damp = (-y.dot(p) / hbar).exp();
                let tphase = Complex64::from_polar(1.0, -self.t * p.t() / hbar);
                coeff[j] = a * insert(p) * damp * w * tphase;
            }
            for ix in 0..n_x {
                let mut acc = KahanComplex::new();
                let row = &phase[ix * n_p..(ix + 1) * n_p];
                for (ph, c) in row.iter().zip(&coeff) {
                    acc.add(ph * c);
                }
                values[iu * n_x + ix] = acc.value();
            }
        }
        SliceField { values, n_x }
    }

    /// Fixes N by requiring ∫_Γ dγ |e_w|² = ‖e_w‖² for reference coherent
    /// states at several boosts, then stores and returns it.
    ///
    /// The per-boost constants must agree to within
    /// [`tolerances::FLATNESS_REL`]; disagreement means the slice measure does
    /// not weight momenta flatly and calibration fails. Reaching that bound
    /// needs a fine rapidity lattice (spacing ≲ 0.025 for unit-scale states);
    /// for coarser production grids use [`Self::calibrate_with_tolerance`].
    pub fn calibrate(&mut self, grid: std::sync::Arc<crate::massshell::MassShellGrid>) -> Result<f64> {
        self.calibrate_with_tolerance(grid, tolerances::FLATNESS_REL)
    }

    /// [`Self::calibrate`] with an explicit flatness tolerance, for callers
    /// whose downstream quantities are ratios in which N cancels and who can
    /// therefore trade calibration sharpness for grid economy.
    pub fn calibrate_with_tolerance(
        &mut self,
        grid: std::sync::Arc<crate::massshell::MassShellGrid>,
        tol: f64,
    ) -> Result<f64> {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        let profile = self.calibration_profile(grid)?;
        let n0 = profile[0];
        for nk in &profile {
            if ((nk - n0) / n0).abs() > tol {
                return Err(Error::Calibration(format!(
                    "induced momentum weight is not flat to {tol:.1e}: constants {profile:?}"
                )));
            }
        }
        self.normalization = Some(n0);
        Ok(n0)
    }

    /// The per-boost calibration constants ‖e_w‖² / ∫_Γ |e_w|² (N candidates).
    pub fn calibration_profile(
        &self,
        grid: std::sync::Arc<crate::massshell::MassShellGrid>,
    ) -> Result<Vec<f64>> {
        if grid.d() != 1 {
            return Err(Error::UnsupportedDimension(grid.d()));
        }
        let mut out = Vec::new();
        for s in CALIBRATION_RAPIDITIES {
            let y = FourVector::new(&[self.lambda * s.cosh(), self.lambda * s.sinh()]);
            let w = ComplexInterval::imaginary(y);
            let psi = WaveFunction::coherent(std::sync::Arc::clone(&grid), &w)?;
            let closed = coherent_norm2(self.lambda, 1, self.m, self.hbar)?;
            let raw = self.raw_norm2(&psi)?;
            out.push(closed / raw);
        }
        Ok(out)
    }

    /// ∫_Γ d𝐱 d𝐲 |ψ|² without the normalization constant.
    fn raw_norm2(&self, psi: &WaveFunction) -> Result<f64> {
        let field = self.field(psi, |_| 1.0);
        let n_x = field.n_x;
        let mut acc = Kahan::new();
        let mut edge = Kahan::new();
        for (iu, &u) in self.u_nodes.iter().enumerate() {
            let w = self.weight(u);
            for ix in 0..n_x {
                let v = field.at(iu, ix).norm_sqr() * w;
                acc.add(v);
                if ix == 0 || ix == n_x - 1 {
                    edge.add(v);
                }
            }
        }
        let total = acc.value();
        if total > 0.0 {
            // edge columns bound the mass abandoned beyond the x window
            let rel = edge.value() / total;
            if rel > 1e-6 {
                return Err(Error::Truncation { estimate: rel, threshold: 1e-6 });
            }
        }
        Ok(total)
    }

    /// Born-rule norm ∫_Γ dγ |ψ|² = N ∫ d𝐱 d𝐲 |ψ(z)|².
    ///
    /// Requires calibration; errors when the spatial window visibly truncates
    /// the state (edge-column mass above 10⁻⁶ of the total).
    pub fn norm2(&self, psi: &WaveFunction) -> Result<f64> {
        let n = self.normalization()?;
        Ok(n * self.raw_norm2(psi)?)
    }

    /// Reproducing synthesis ψ(z′) = N ∫_Γ d𝐱 d𝐲 K(z′, z) ψ(z), where
    /// K(z′, z) = ⟨e_{z′}, e_z⟩ is the closed-form overlap kernel.
    ///
    /// Holds for every z′ in the tube, on or off the slice: the slice data
    /// propagates the state everywhere.
    pub fn reproduce(&self, psi: &WaveFunction, zp: &ComplexInterval) -> Result<Complex64> {
        if !zp.in_future_tube() {
            return Err(Error::OutsideTube);
        }
        let n = self.normalization()?;
        let field = self.field(psi, |_| 1.0);
        let mut acc = KahanComplex::new();
        for (iu, &u) in self.u_nodes.iter().enumerate() {
            let w = self.weight(u);
            for (ix, &x1) in self.x_nodes.iter().enumerate() {
                let z = self.point(x1, u);
                let k = overlap_closed(zp, &z, self.m, self.hbar)?.value;
                acc.add(k * field.at(iu, ix) * w);
            }
        }
        Ok(acc.value() * n)
    }

    /// Probability current (j⁰, j¹) at a tube point, via exact momentum
    /// insertions: j⁰ = (2N/ħ) Re(ψ̄ S[E]) and j¹ = (2N/ħ) Re(ψ̄ S[q]).
    ///
    /// j⁰ is positive wherever ψ ≠ 0: the inserted energies are positive, so
    /// the u-side window never lets the density count backwards.
    pub fn current_at(&self, psi: &WaveFunction, z: &ComplexInterval) -> Result<(f64, f64)> {
        let n = self.normalization()?;
        if !z.in_future_tube() {
            return Err(Error::OutsideTube);
        }
        let (value, s_e, s_q) = synthesis_insertions(psi, z, self.hbar);
        let j0 = 2.0 * n / self.hbar * (value.conj() * s_e).re;
        let j1 = 2.0 * n / self.hbar * (value.conj() * s_q).re;
        Ok((j0, j1))
    }

    /// Total charge Q(t) = N ∫ d𝐱 ∫_{B_λ} d²y j⁰ over the imaginary-space
    /// band B_λ = {λ < λ(y) ≤ λ + 12ħ/m}, with the invariant measure
    /// d²y = λ′ dλ′ du (Gauss–Legendre in λ′).
    ///
    /// The discarded tail beyond the band is below 10⁻¹⁰ of the total. The
    /// value is conserved: sweeping t must leave Q unchanged.
    pub fn charge(&self, psi: &WaveFunction, t: f64, n_lambda: usize) -> Result<f64> {
        let n = self.normalization()?;
        if n_lambda < 8 {
            return Err(Error::Domain(format!("need at least 8 band nodes, got {n_lambda}")));
        }
        let grid = psi.grid();
        let hbar = self.hbar;
        let lam_top = self.lambda + BAND_WIDTH * hbar / self.m;
        let (xs, ws) = gauss_legendre(n_lambda);
        let half = 0.5 * (lam_top - self.lambda);
        let mid = 0.5 * (lam_top + self.lambda);
        let n_x = self.x_nodes.len();
        let n_p = grid.len();
        let mut phase = vec![Complex64::default(); n_x * n_p];
        for (i, x1) in self.x_nodes.iter().enumerate() {
            for (j, p) in grid.nodes().iter().enumerate() {
                phase[i * n_p + j] = Complex64::from_polar(1.0, x1 * p[1] / hbar);
            }
        }
        let mut total = Kahan::new();
        let mut coeff = vec![Complex64::default(); n_p];
        let mut coeff_e = vec![Complex64::default(); n_p];
        for (xg, wg) in xs.iter().zip(&ws) {
            let lam = mid + half * xg;
            let wlam = half * wg * lam; // λ′ dλ′
            for &u in &self.u_nodes {
                let y = FourVector::new(&[lam * u.cosh(), lam * u.sinh()]);
                for (j, ((p, a), w)) in grid
                    .nodes()
                    .iter()
                    .zip(psi.amplitudes())
                    .zip(grid.weights())
                    .enumerate()
                {
                    let damp = (-y.dot(p) / hbar).exp();
                    let tphase = Complex64::from_polar(1.0, -t * p.t() / hbar);
                    let c = a * damp * w * tphase;
                    coeff[j] = c;
                    coeff_e[j] = c * p.t();
                }
                let wy = wlam * self.du * self.x_step;
                for ix in 0..n_x {
                    let row = &phase[ix * n_p..(ix + 1) * n_p];
                    let mut v = KahanComplex::new();
                    let mut ve = KahanComplex::new();
                    for (j, ph) in row.iter().enumerate() {
                        v.add(ph * coeff[j]);
                        ve.add(ph * coeff_e[j]);
                    }
                    let j0 = 2.0 / hbar * (v.value().conj() * ve.value()).re;
                    total.add(j0 * wy);
                }
            }
        }
        Ok(n * total.value())
    }

    /// tr |e_w⟩⟨e_w| computed on the slice: N ∫ d𝐱 d𝐲 |K(z, w)|², which must
    /// return ‖e_w‖². Uses the closed-form kernel only — no synthesis.
    pub fn trace_rank_one(&self, w: &ComplexInterval) -> Result<f64> {
        let n = self.normalization()?;
        if !w.in_future_tube() {
            return Err(Error::OutsideTube);
        }
        let mut acc = Kahan::new();
        for &u in &self.u_nodes {
            let wu = self.weight(u);
            for &x1 in &self.x_nodes {
                let z = self.point(x1, u);
                let k = overlap_closed(&z, w, self.m, self.hbar)?.value;
                acc.add(k.norm_sqr() * wu);
            }
        }
        Ok(n * acc.value())
    }
}

/// Synthesizes ψ(z), S[E](z), S[q](z) in one pass over the grid.
fn synthesis_insertions(
    psi: &WaveFunction,
    z: &ComplexInterval,
    hbar: f64,
) -> (Complex64, Complex64, Complex64) {
    let grid = psi.grid();
    let mut v = KahanComplex::new();
    let mut se = KahanComplex::new();
    let mut sq = KahanComplex::new();
    for ((p, a), w) in grid.nodes().iter().zip(psi.amplitudes()).zip(grid.weights()) {
        let damp = (-z.y.dot(p) / hbar).exp();
        let ph = Complex64::from_polar(damp, -z.x.dot(p) / hbar);
        let c = a * ph * *w;
        v.add(c);
        se.add(c * p.t());
        sq.add(c * p[1]);
    }
    (v.value(), se.value(), sq.value())
}

/// Normalized residual of current conservation ∂_μ j^μ at a tube point.
///
/// With exact momentum insertions the divergence reduces to
/// (2/ħ²) Im(ψ̄ · (S[E²] − S[q²])) = (2m²/ħ²) Im(ψ̄ψ), which vanishes
/// identically on shell; the returned value divides by the magnitude of the
/// uncancelled terms, so it measures floating-point cancellation quality and
/// must sit at the 10⁻¹⁶ level — no finite differences are involved.
pub fn conservation_residual(psi: &WaveFunction, z: &ComplexInterval, hbar: f64) -> Result<f64> {
    if !z.in_future_tube() {
        return Err(Error::OutsideTube);
    }
    let grid = psi.grid();
    let mut v = KahanComplex::new();
    let mut se2 = KahanComplex::new();
    let mut sq2 = KahanComplex::new();
    for ((p, a), w) in grid.nodes().iter().zip(psi.amplitudes()).zip(grid.weights()) {
        let damp = (-z.y.dot(p) / hbar).exp();
        let ph = Complex64::from_polar(damp, -z.x.dot(p) / hbar);
        let c = a * ph * *w;
        v.add(c);
        se2.add(c * p.t() * p.t());
        sq2.add(c * p[1] * p[1]);
    }
    let psi_bar = v.value().conj();
    let div = (psi_bar * (se2.value() - sq2.value())).im;
    let scale = (psi_bar * se2.value()).norm() + (psi_bar * sq2.value()).norm();
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((div / scale).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::massshell::MassShellGrid;
    use crate::states::kernel_on_interval;
    use crate::tolerances;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    /// N(λ=1, m=1, ħ=1) = 1/(2π K₁(2))
    const N_CLOSED: f64 = 1.137_911_126_179_267_4;

    fn grid() -> Arc<MassShellGrid> {
        Arc::new(MassShellGrid::build(1, 1.0, 6.0, 512).unwrap())
    }

    fn test_state(g: &Arc<MassShellGrid>) -> WaveFunction {
        let terms = [
            (
                Complex64::new(0.8, 0.1),
                ComplexInterval::new(
                    FourVector::new(&[0.0, -0.6]),
                    FourVector::new(&[1.1, 0.2]),
                ),
            ),
            (
                Complex64::new(-0.3, 0.45),
                ComplexInterval::new(
                    FourVector::new(&[0.2, 0.5]),
                    FourVector::new(&[1.4, -0.3]),
                ),
            ),
        ];
        WaveFunction::superposition(Arc::clone(g), &terms).unwrap()
    }

    #[test]
    fn calibration_matches_closed_form() {
        let g = grid();
        let mut slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let n = slice.calibrate(Arc::clone(&g)).unwrap();
        assert_relative_eq!(n, N_CLOSED, max_relative = tolerances::CALIBRATION_REL);
    }

    #[test]
    fn calibration_profile_is_flat() {
        let g = grid();
        let slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let prof = slice.calibration_profile(Arc::clone(&g)).unwrap();
        for nk in &prof {
            assert_relative_eq!(*nk, prof[0], max_relative = tolerances::FLATNESS_REL);
        }
    }

    #[test]
    fn norm_requires_calibration() {
        let g = grid();
        let slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let psi = test_state(&g);
        assert!(matches!(slice.norm2(&psi), Err(Error::NotCalibrated)));
    }

    #[test]
    fn slice_norm_equals_mass_shell_norm() {
        let g = grid();
        let psi = test_state(&g);
        let mut slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        slice.calibrate(Arc::clone(&g)).unwrap();
        let on_slice = slice.norm2(&psi).unwrap();
        assert_relative_eq!(
            on_slice,
            psi.norm2(),
            max_relative = tolerances::PLANCHEREL_REL
        );
    }

    #[test]
    fn slice_norm_is_slice_independent() {
        let g = grid();
        let psi = test_state(&g);
        let mut a = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let mut b = PhaseSpaceSlice::new(0.7, 1.6, 1.0, 1.0).unwrap();
        a.calibrate(Arc::clone(&g)).unwrap();
        b.calibrate(Arc::clone(&g)).unwrap();
        let na = a.norm2(&psi).unwrap();
        let nb = b.norm2(&psi).unwrap();
        assert_relative_eq!(na, nb, max_relative = tolerances::SLICE_INDEPENDENCE_REL);
    }

    #[test]
    fn reproduce_propagates_on_and_off_slice() {
        let g = grid();
        let psi = test_state(&g);
        let mut slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        slice.calibrate(Arc::clone(&g)).unwrap();
        // on the slice
        let z_on = slice.point(0.4, 0.3);
        // off the slice: different t and different λ
        let z_off = ComplexInterval::new(
            FourVector::new(&[0.6, -0.5]),
            FourVector::new(&[1.3, 0.25]),
        );
        for z in [z_on, z_off] {
            let direct = psi.synthesize(&z).unwrap();
            let rep = slice.reproduce(&psi, &z).unwrap();
            assert_relative_eq!(rep.re, direct.re, max_relative = tolerances::REPRODUCE_REL, epsilon = 1e-10);
            assert_relative_eq!(rep.im, direct.im, max_relative = tolerances::REPRODUCE_REL, epsilon = 1e-10);
        }
    }

    #[test]
    fn current_time_component_positive() {
        let g = grid();
        let psi = test_state(&g);
        let mut slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        slice.calibrate(Arc::clone(&g)).unwrap();
        for &u in &[-1.0, 0.0, 0.8] {
            for &x1 in &[-2.0, 0.0, 1.5] {
                let z = slice.point(x1, u);
                let (j0, _) = slice.current_at(&psi, &z).unwrap();
                assert!(j0 > 0.0, "j0 must be positive, got {j0} at x={x1}, u={u}");
            }
        }
    }

    #[test]
    fn conservation_residual_is_roundoff() {
        let g = grid();
        let psi = test_state(&g);
        for (x1, u) in [(0.0, 0.0), (1.2, -0.6), (-0.7, 0.9)] {
            let z = ComplexInterval::new(
                FourVector::new(&[0.3, x1]),
                FourVector::new(&[f64::cosh(u), f64::sinh(u)]),
            );
            let r = conservation_residual(&psi, &z, 1.0).unwrap();
            assert!(
                r < tolerances::CONSERVATION_ABS,
                "residual {r} at ({x1}, {u}) should be pure roundoff"
            );
        }
    }

    #[test]
    fn charge_is_conserved_in_time() {
        let g = grid();
        let psi = test_state(&g);
        let mut slice =
            PhaseSpaceSlice::with_grids(0.0, 1.0, 1.0, 1.0, 12.0, 0.125, 7.0, 224).unwrap();
        slice.calibrate(Arc::clone(&g)).unwrap();
        let q0 = slice.charge(&psi, 0.0, 32).unwrap();
        assert!(q0 > 0.0);
        for t in [0.5, 1.0] {
            let qt = slice.charge(&psi, t, 32).unwrap();
            assert_relative_eq!(qt, q0, max_relative = tolerances::CHARGE_AGREEMENT_REL);
        }
    }

    #[test]
    fn band_measure_matches_closed_form() {
        // ∫_{λ(y) > λ} d²y e^{−P·y/ħ} = 2λK₁(Mλ/ħ)·ħ/M for timelike P,
        // M = |P|; checks the band quadrature geometry independently
        let slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let (xs, ws) = gauss_legendre(48);
        let lam_top = 1.0 + 12.0;
        let (half, mid) = (0.5 * (lam_top - 1.0), 0.5 * (lam_top + 1.0));
        let m_inv = 2.0; // P = 2p with p at rest, m = 1
        let mut acc = Kahan::new();
        for (xg, wg) in xs.iter().zip(&ws) {
            let lam = mid + half * xg;
            for &u in &slice.u_nodes {
                acc.add(half * wg * lam * slice.du * (-m_inv * lam * u.cosh()).exp());
            }
        }
        let expect = 2.0 * 1.0 * crate::specfun::bessel_k(1.0, Complex64::new(m_inv * 1.0, 0.0))
            .unwrap()
            .value
            .re
            / m_inv;
        assert_relative_eq!(acc.value(), expect, max_relative = 1e-8);
    }

    #[test]
    fn trace_of_rank_one_projector() {
        let g = grid();
        let mut slice = PhaseSpaceSlice::new(0.0, 1.0, 1.0, 1.0).unwrap();
        slice.calibrate(Arc::clone(&g)).unwrap();
        let w = ComplexInterval::new(
            FourVector::new(&[0.0, 0.4]),
            FourVector::new(&[1.2, -0.2]),
        );
        let lam_w = w.y.timelike_norm().unwrap();
        let tr = slice.trace_rank_one(&w).unwrap();
        let expect = coherent_norm2(lam_w, 1, 1.0, 1.0).unwrap();
        assert_relative_eq!(tr, expect, max_relative = tolerances::TRACE_REL);
    }

    #[test]
    fn kernel_on_interval_matches_overlap() {
        let z = ComplexInterval::new(FourVector::new(&[0.1, 0.2]), FourVector::new(&[1.0, 0.0]));
        let zp = ComplexInterval::new(FourVector::new(&[-0.3, 0.5]), FourVector::new(&[1.1, 0.1]));
        let via_overlap = overlap_closed(&z, &zp, 1.0, 1.0).unwrap().value;
        let w = ComplexInterval::kernel_interval(&z, &zp);
        let via_interval = kernel_on_interval(&w, 1.0, 1.0).unwrap().value;
        assert_relative_eq!(via_overlap.re, via_interval.re, max_relative = 1e-14);
        assert_relative_eq!(via_overlap.im, via_interval.im, max_relative = 1e-14);
    }
}
