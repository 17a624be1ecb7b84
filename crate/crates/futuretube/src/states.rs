//! Coherent states labeled by tube points and their closed-form overlaps.
//!
//! A point z = x − iy of the future tube labels the state
//! e_z(p) = e^{i z̄·p/ħ} = e^{i x·p/ħ} e^{−y·p/ħ}: a plane wave windowed by the
//! ray filter of y. Overlaps of two such states have a closed form in terms of
//! the modified Bessel kernel evaluated on the relative interval
//! w = (x′ − x) − i(y′ + y), which stays inside the tube because future cones
//! are closed under addition.
//!
//! General states are finite quadrature vectors a(p_j) on a [`MassShellGrid`];
//! synthesis ψ(z) = ⟨e_z, a⟩ extends them holomorphically into the tube.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Error;
use crate::geometry::{ComplexInterval, FourVector};
use crate::massshell::MassShellGrid;
use crate::quadrature::{Kahan, KahanComplex};
use crate::specfun::bessel_k;
use crate::Result;

/// Closed-form overlap ⟨e_z, e_z′⟩ together with the interval it was
/// evaluated on.
#[derive(Debug, Clone, Copy)]
pub struct KernelValue {
    /// Relative interval w = z′ − z̄.
    pub w: ComplexInterval,
    /// Complex length ζ(w).
    pub zeta: Complex64,
    /// Kernel value (2πm/ζ)^ν K_ν(mζ/ħ) with ν = (d−1)/2.
    pub value: Complex64,
}

/// Evaluates e_z(p) = e^{i z̄·p/ħ}.
pub fn coherent_amplitude(z: &ComplexInterval, p: &FourVector, hbar: f64) -> Complex64 {
    let phase = z.x.dot(p) / hbar;
    let decay = (-z.y.dot(p) / hbar).exp();
    Complex64::from_polar(decay, phase)
}

/// Closed-form overlap ⟨e_z, e_z′⟩ = ∫ dμ e^{−i z·p/ħ} e^{i z̄′·p/ħ}.
///
/// Only the relative interval w = z′ − z̄ enters, so the result is invariant
/// under simultaneous translation and boost of both labels. Supported in
/// d ∈ {1, 3}, where the order ν = (d−1)/2 makes the prefactor single-valued.
pub fn overlap_closed(z: &ComplexInterval, zp: &ComplexInterval, m: f64, hbar: f64) -> Result<KernelValue> {
    kernel_on_interval(&ComplexInterval::kernel_interval(z, zp), m, hbar)
}

/// Kernel (2πm/ζ(w))^ν K_ν(m ζ(w)/ħ) on an interval already of the form
/// w = z′ − z̄.
pub fn kernel_on_interval(w: &ComplexInterval, m: f64, hbar: f64) -> Result<KernelValue> {
    let d = w.d();
    let len = w.complex_length()?;
    let arg = len.zeta * m / hbar;
    let value = match d {
        1 => bessel_k(0.0, arg)?.value,
        3 => (2.0 * PI * m / len.zeta) * bessel_k(1.0, arg)?.value,
        other => return Err(Error::UnsupportedDimension(other)),
    };
    Ok(KernelValue { w: *w, zeta: len.zeta, value })
}

/// ‖e_z‖² = (πm/λ)^ν K_ν(2λm/ħ), depending on z only through λ(y).
pub fn coherent_norm2(lambda: f64, d: usize, m: f64, hbar: f64) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    let arg = Complex64::new(2.0 * lambda * m / hbar, 0.0);
    let v = match d {
        1 => bessel_k(0.0, arg)?.value.re,
        3 => PI * m / lambda * bessel_k(1.0, arg)?.value.re,
        other => return Err(Error::UnsupportedDimension(other)),
    };
    Ok(v)
}

/// Effective mass m_λ = m K_{ν+1}(2λm/ħ)/K_ν(2λm/ħ): the magnitude of the
/// expected four-momentum in the state e_z with λ = λ(y).
///
/// Exceeds m for every finite λ and decreases toward it like m + (d/2)·ħ/(2λ)
/// as λ → ∞ (sharp classical limit).
pub fn effective_mass(lambda: f64, d: usize, m: f64, hbar: f64) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    let nu = match d {
        1 => 0.0,
        3 => 1.0,
        other => return Err(Error::UnsupportedDimension(other)),
    };
    let arg = Complex64::new(2.0 * lambda * m / hbar, 0.0);
    let hi = bessel_k(nu + 1.0, arg)?.value.re;
    let lo = bessel_k(nu, arg)?.value.re;
    Ok(m * hi / lo)
}

/// Quadrature state: amplitudes sampled on a shared mass-shell grid.
///
/// States built from coherent labels remember them, enabling closed-form
/// Gram-matrix norms that bypass quadrature entirely.
#[derive(Debug, Clone)]
pub struct WaveFunction {
    grid: Arc<MassShellGrid>,
    a: Vec<Complex64>,
    labels: Option<Vec<(Complex64, ComplexInterval)>>,
}

impl WaveFunction {
    /// Wraps raw amplitudes; they must be sampled on every grid node.
    pub fn from_amplitudes(grid: Arc<MassShellGrid>, a: Vec<Complex64>) -> Result<Self> {
        if a.len() != grid.len() {
            return Err(Error::Domain(format!(
                "amplitude vector has {} entries, grid has {} nodes",
                a.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, a, labels: None })
    }

    /// The coherent state e_w sampled on the grid.
    pub fn coherent(grid: Arc<MassShellGrid>, w: &ComplexInterval) -> Result<Self> {
        Self::superposition(grid, &[(Complex64::new(1.0, 0.0), *w)])
    }

    /// Finite superposition Σ c_i e_{w_i}.
    pub fn superposition(
        grid: Arc<MassShellGrid>,
        terms: &[(Complex64, ComplexInterval)],
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("superposition needs at least one term".into()));
        }
        for (_, w) in terms {
            if !w.in_future_tube() {
                return Err(Error::OutsideTube);
            }
            if w.d() != grid.d() {
                return Err(Error::Domain(format!(
                    "label dimension {} does not match grid dimension {}",
                    w.d(),
                    grid.d()
                )));
            }
        }
        let hbar = grid.hbar();
        let a = grid
            .nodes()
            .iter()
            .map(|p| {
                terms
                    .iter()
                    .map(|(c, w)| c * coherent_amplitude(w, p, hbar))
                    .sum()
            })
            .collect();
        Ok(Self { grid, a, labels: Some(terms.to_vec()) })
    }

    pub fn grid(&self) -> &MassShellGrid {
        &self.grid
    }

    pub fn grid_arc(&self) -> Arc<MassShellGrid> {
        Arc::clone(&self.grid)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.a
    }

    /// Coherent labels when the state was built from them.
    pub fn labels(&self) -> Option<&[(Complex64, ComplexInterval)]> {
        self.labels.as_deref()
    }

    /// ‖a‖² = ∫ dμ |a(p)|² by quadrature.
    pub fn norm2(&self) -> f64 {
        let mut acc = Kahan::new();
        for (v, w) in self.a.iter().zip(self.grid.weights()) {
            acc.add(v.norm_sqr() * w);
        }
        acc.value()
    }

    /// ‖a‖² via the closed-form Gram matrix Σ c̄_i c_j K(w_j − w̄_i).
    /// Errors when the state carries no coherent labels.
    pub fn norm2_closed(&self) -> Result<f64> {
        let Some(terms) = &self.labels else {
            return Err(Error::Domain(
                "closed-form norm needs a state built from coherent labels".into(),
            ));
        };
        let m = self.grid.m();
        let hbar = self.grid.hbar();
        let mut acc = KahanComplex::new();
        for (ci, wi) in terms {
            for (cj, wj) in terms {
                let k = overlap_closed(wi, wj, m, hbar)?.value;
                acc.add(ci.conj() * cj * k);
            }
        }
        Ok(acc.value().re)
    }

    /// Inner product ⟨self, other⟩ = ∫ dμ conj(self)·other on the shared grid.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.a.len() != other.a.len() {
            return Err(Error::Domain("states live on different grids".into()));
        }
        let mut acc = KahanComplex::new();
        for ((u, v), w) in self.a.iter().zip(&other.a).zip(self.grid.weights()) {
            acc.add(u.conj() * v * *w);
        }
        Ok(acc.value())
    }

    /// Holomorphic synthesis ψ(z) = ⟨e_z, a⟩ = ∫ dμ conj(e_z(p)) a(p).
    /// The evaluation point must lie in the future tube.
    pub fn synthesize(&self, z: &ComplexInterval) -> Result<Complex64> {
        if !z.in_future_tube() {
            return Err(Error::OutsideTube);
        }
        let hbar = self.grid.hbar();
        let mut acc = KahanComplex::new();
        for ((p, a), w) in self.grid.nodes().iter().zip(&self.a).zip(self.grid.weights()) {
            acc.add(coherent_amplitude(z, p, hbar).conj() * a * *w);
        }
        Ok(acc.value())
    }

    /// Expected four-momentum ⟨P_μ⟩ = ∫ dμ p_μ |a|² / ‖a‖².
    pub fn momentum_expectation(&self) -> Result<FourVector> {
        let n2 = self.norm2();
        if n2 <= 0.0 {
            return Err(Error::Domain("zero-norm state has no expectations".into()));
        }
        let dim = self.grid.d() + 1;
        let mut comps = [Kahan::new(), Kahan::new(), Kahan::new(), Kahan::new()];
        for ((p, a), w) in self.grid.nodes().iter().zip(&self.a).zip(self.grid.weights()) {
            let density = a.norm_sqr() * w;
            for mu in 0..dim {
                comps[mu].add(p[mu] * density);
            }
        }
        let mut out = [0.0; 4];
        for mu in 0..dim {
            out[mu] = comps[mu].value() / n2;
        }
        Ok(FourVector::new(&out[..dim]))
    }
}

/// Newton–Wigner position expectation at time zero for a d = 1 state.
///
/// The position operator acts as X = iħ d/dq on φ(q) = a(q)/√(2E); the
/// expectation uses the flat measure dq that makes X symmetric. The q
/// derivative is taken along the rapidity grid (dq = m cosh s ds) with a
/// 4th-order centered stencil; the two outermost nodes on each side are
/// dropped (their Boltzmann-suppressed weight is far below every tolerance).
///
/// Errors unless the state's labels all sit at x⁰ = 0, where the light-front
/// ambiguities of relativistic position vanish.
pub fn position_expectation(state: &WaveFunction) -> Result<f64> {
    let grid = state.grid();
    if grid.d() != 1 {
        return Err(Error::UnsupportedDimension(grid.d()));
    }
    if let Some(labels) = state.labels() {
        for (_, w) in labels {
            if w.x.t().abs() > 1e-12 {
                return Err(Error::NonzeroTime(w.x.t()));
            }
        }
    }
    let n = grid.len();
    let hbar = grid.hbar();
    let ds = 2.0 * grid.s_max() / n as f64;
    let phi: Vec<Complex64> = grid
        .nodes()
        .iter()
        .zip(state.amplitudes())
        .map(|(p, a)| a / (2.0 * p.t()).sqrt())
        .collect();
    let mut num = Kahan::new();
    let mut den = Kahan::new();
    for j in 2..n - 2 {
        // dφ/ds, 4th order
        let dphi_ds = (phi[j - 2] - 8.0 * phi[j - 1] + 8.0 * phi[j + 1] - phi[j + 2]) / (12.0 * ds);
        let e = grid.nodes()[j].t(); // dq/ds = m cosh s = E
        let dphi_dq = dphi_ds / e;
        let wq = e * ds; // flat dq weight
        // ⟨X⟩ = ∫ conj(φ)(iħ dφ/dq) dq, real part by symmetry
        num.add((phi[j].conj() * Complex64::new(0.0, hbar) * dphi_dq).re * wq);
        den.add(phi[j].norm_sqr() * wq);
    }
    if den.value() <= 0.0 {
        return Err(Error::Domain("zero-norm state has no position".into()));
    }
    Ok(num.value() / den.value())
}

/// Nonrelativistic Gaussian reference: the state whose momentum profile is
/// exp(i x·p/ħ − λ(q − q̄)²/(2mħ)) with q̄ = m y¹/λ, matching e_z through
/// second order around the filter peak.
pub fn nonrelativistic_oracle(grid: Arc<MassShellGrid>, z: &ComplexInterval) -> Result<WaveFunction> {
    if grid.d() != 1 {
        return Err(Error::UnsupportedDimension(grid.d()));
    }
    if !z.in_future_tube() {
        return Err(Error::OutsideTube);
    }
    let m = grid.m();
    let hbar = grid.hbar();
    let lambda = z.y.timelike_norm()?;
    let qbar = m * z.y[1] / lambda;
    let a = grid
        .nodes()
        .iter()
        .map(|p| {
            let q = p[1];
            let gauss = (-lambda * (q - qbar) * (q - qbar) / (2.0 * m * hbar)).exp();
            Complex64::from_polar(gauss, z.x.dot(p) / hbar)
        })
        .collect();
    WaveFunction::from_amplitudes(grid, a)
}

/// Overlap fidelity |⟨u, v⟩|² / (‖u‖²‖v‖²) ∈ [0, 1].
pub fn fidelity(u: &WaveFunction, v: &WaveFunction) -> Result<f64> {
    let ip = u.inner(v)?;
    Ok(ip.norm_sqr() / (u.norm2() * v.norm2()))
}

/// Newton–Wigner position and momentum spreads (ΔX, ΔP) at time zero for a
/// d = 1 state, computed in the flat measure dq on φ = a/√(2E).
pub fn uncertainties(state: &WaveFunction) -> Result<(f64, f64)> {
    let grid = state.grid();
    if grid.d() != 1 {
        return Err(Error::UnsupportedDimension(grid.d()));
    }
    let n = grid.len();
    let hbar = grid.hbar();
    let ds = 2.0 * grid.s_max() / n as f64;
    let phi: Vec<Complex64> = grid
        .nodes()
        .iter()
        .zip(state.amplitudes())
        .map(|(p, a)| a / (2.0 * p.t()).sqrt())
        .collect();
    let mut norm = Kahan::new();
    let mut x1 = Kahan::new();
    let mut x2 = Kahan::new();
    let mut p1 = Kahan::new();
    let mut p2 = Kahan::new();
    for j in 2..n - 2 {
        let dphi_ds = (phi[j - 2] - 8.0 * phi[j - 1] + 8.0 * phi[j + 1] - phi[j + 2]) / (12.0 * ds);
        let e = grid.nodes()[j].t();
        let dphi_dq = dphi_ds / e;
        let wq = e * ds;
        let q = grid.nodes()[j][1];
        norm.add(phi[j].norm_sqr() * wq);
        x1.add((phi[j].conj() * Complex64::new(0.0, hbar) * dphi_dq).re * wq);
        // ⟨X²⟩ = ‖Xφ‖² with Xφ = iħ dφ/dq
        x2.add(hbar * hbar * dphi_dq.norm_sqr() * wq);
        p1.add(q * phi[j].norm_sqr() * wq);
        p2.add(q * q * phi[j].norm_sqr() * wq);
    }
    let n0 = norm.value();
    if n0 <= 0.0 {
        return Err(Error::Domain("zero-norm state has no uncertainties".into()));
    }
    let mx = x1.value() / n0;
    let mp = p1.value() / n0;
    let vx = (x2.value() / n0 - mx * mx).max(0.0);
    let vp = (p2.value() / n0 - mp * mp).max(0.0);
    Ok((vx.sqrt(), vp.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::LorentzBoost;
    use crate::tolerances;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const K0_2: f64 = 0.113_893_872_749_533_435_652_72;
    const K1_OVER_K0_AT_2: f64 = 1.228_036_929_818_907_975_742_67;
    const K2_OVER_K1_AT_2: f64 = 1.814_307_758_763_789_489_948_79;
    const PI_K1_2: f64 = 0.439_401_626_802_159_177_226_13;

    fn grid1() -> Arc<MassShellGrid> {
        Arc::new(MassShellGrid::build(1, 1.0, 8.0, 512).unwrap())
    }

    fn rest_label(lambda: f64) -> ComplexInterval {
        ComplexInterval::imaginary(FourVector::new(&[lambda, 0.0]))
    }

    #[test]
    fn coherent_norm_matches_closed_form_d1() {
        let g = grid1();
        let psi = WaveFunction::coherent(Arc::clone(&g), &rest_label(1.0)).unwrap();
        assert_relative_eq!(psi.norm2(), K0_2, max_relative = tolerances::NORM_FORMULA_REL);
        assert_relative_eq!(
            coherent_norm2(1.0, 1, 1.0, 1.0).unwrap(),
            K0_2,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            psi.norm2_closed().unwrap(),
            psi.norm2(),
            max_relative = tolerances::NORM_FORMULA_REL
        );
    }

    #[test]
    fn coherent_norm_matches_closed_form_d3() {
        let g = Arc::new(MassShellGrid::build(3, 1.0, 8.0, 192).unwrap());
        let z = ComplexInterval::imaginary(FourVector::new(&[1.0, 0.0, 0.0, 0.0]));
        let psi = WaveFunction::coherent(g, &z).unwrap();
        assert_relative_eq!(psi.norm2(), PI_K1_2, max_relative = 1e-6);
        assert_relative_eq!(coherent_norm2(1.0, 3, 1.0, 1.0).unwrap(), PI_K1_2, max_relative = 1e-10);
    }

    #[test]
    fn overlap_quadrature_agrees_with_kernel_d1() {
        // 5×5 coherent pairs with generic labels: quadrature vs closed form
        let g = grid1();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let labels: Vec<ComplexInterval> = (0..5)
            .map(|_| {
                let x = FourVector::new(&[rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]);
                let s = rng.random_range(-0.8..0.8);
                let lam = rng.random_range(0.6..2.0);
                let y = FourVector::new(&[lam * f64::cosh(s), lam * f64::sinh(s)]);
                ComplexInterval::new(x, y)
            })
            .collect();
        for zi in &labels {
            let ei = WaveFunction::coherent(Arc::clone(&g), zi).unwrap();
            for zj in &labels {
                let ej = WaveFunction::coherent(Arc::clone(&g), zj).unwrap();
                let quad = ei.inner(&ej).unwrap();
                let closed = overlap_closed(zi, zj, 1.0, 1.0).unwrap().value;
                assert_relative_eq!(
                    quad.re,
                    closed.re,
                    max_relative = tolerances::KERNEL_QUADRATURE_REL,
                    epsilon = 1e-12
                );
                assert_relative_eq!(
                    quad.im,
                    closed.im,
                    max_relative = tolerances::KERNEL_QUADRATURE_REL,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn overlap_quadrature_agrees_with_kernel_d3() {
        // axially symmetric labels keep the single-azimuth grid exact
        let g = Arc::new(MassShellGrid::build(3, 1.0, 8.0, 160).unwrap());
        let pairs = [
            (
                ComplexInterval::imaginary(FourVector::new(&[1.0, 0.0, 0.0, 0.0])),
                ComplexInterval::new(
                    FourVector::new(&[0.3, 0.0, 0.0, 0.5]),
                    FourVector::new(&[1.2, 0.0, 0.0, 0.0]),
                ),
            ),
            (
                ComplexInterval::new(
                    FourVector::new(&[0.0, 0.0, 0.0, -0.4]),
                    FourVector::new(&[1.1, 0.0, 0.0, 0.3]),
                ),
                ComplexInterval::imaginary(FourVector::new(&[0.9, 0.0, 0.0, 0.0])),
            ),
            (
                ComplexInterval::new(
                    FourVector::new(&[0.2, 0.0, 0.0, 0.0]),
                    FourVector::new(&[1.0, 0.0, 0.0, -0.2]),
                ),
                ComplexInterval::new(
                    FourVector::new(&[-0.1, 0.0, 0.0, 0.3]),
                    FourVector::new(&[1.3, 0.0, 0.0, 0.4]),
                ),
            ),
        ];
        for (zi, zj) in &pairs {
            let ei = WaveFunction::coherent(Arc::clone(&g), zi).unwrap();
            let ej = WaveFunction::coherent(Arc::clone(&g), zj).unwrap();
            let quad = ei.inner(&ej).unwrap();
            let closed = overlap_closed(zi, zj, 1.0, 1.0).unwrap().value;
            assert_relative_eq!(quad.re, closed.re, max_relative = 1e-5, epsilon = 1e-9);
            assert_relative_eq!(quad.im, closed.im, max_relative = 1e-5, epsilon = 1e-9);
        }
    }

    #[test]
    fn gram_matrix_is_positive_definite() {
        // 6 coherent labels; the closed-form Gram matrix must admit a
        // Cholesky factorization (reproducing-kernel positivity)
        use nalgebra::DMatrix;
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let labels: Vec<ComplexInterval> = (0..6)
            .map(|_| {
                let x = FourVector::new(&[rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]);
                let s = rng.random_range(-1.0..1.0);
                let lam = rng.random_range(0.5..2.5);
                let y = FourVector::new(&[lam * f64::cosh(s), lam * f64::sinh(s)]);
                ComplexInterval::new(x, y)
            })
            .collect();
        let gram = DMatrix::from_fn(6, 6, |i, j| {
            overlap_closed(&labels[i], &labels[j], 1.0, 1.0).unwrap().value
        });
        // Hermiticity first: K(z_i, z_j) = conj(K(z_j, z_i))
        for i in 0..6 {
            for j in 0..6 {
                let diff = (gram[(i, j)] - gram[(j, i)].conj()).norm();
                assert!(diff < 1e-12 * gram[(i, i)].norm().max(gram[(j, j)].norm()));
            }
        }
        assert!(gram.cholesky().is_some(), "Gram matrix must be positive definite");
    }

    #[test]
    fn kernel_invariant_under_translation_and_boost() {
        let z = ComplexInterval::new(
            FourVector::new(&[0.4, -0.3]),
            FourVector::new(&[1.1, 0.2]),
        );
        let zp = ComplexInterval::new(
            FourVector::new(&[-0.2, 0.6]),
            FourVector::new(&[0.9, -0.1]),
        );
        let base = overlap_closed(&z, &zp, 1.0, 1.0).unwrap().value;
        let shift = FourVector::new(&[0.7, -1.3]);
        let lam = LorentzBoost::boost1(0.6);
        let tz = z.boosted(&lam).translated(&shift);
        let tzp = zp.boosted(&lam).translated(&shift);
        let moved = overlap_closed(&tz, &tzp, 1.0, 1.0).unwrap().value;
        assert_relative_eq!(base.re, moved.re, max_relative = 1e-12);
        assert_relative_eq!(base.im, moved.im, max_relative = 1e-12);
    }

    #[test]
    fn effective_mass_reference_values() {
        // d = 1, λ = m = ħ = 1: ratio K₁/K₀ at argument 2
        assert_relative_eq!(
            effective_mass(1.0, 1, 1.0, 1.0).unwrap(),
            K1_OVER_K0_AT_2,
            max_relative = 1e-10
        );
        // d = 3 replaces the orders by 2 and 1
        assert_relative_eq!(
            effective_mass(1.0, 3, 1.0, 1.0).unwrap(),
            K2_OVER_K1_AT_2,
            max_relative = 1e-10
        );
    }

    #[test]
    fn effective_mass_exceeds_m_and_decays() {
        let mut prev = f64::INFINITY;
        for lam in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
            let ml = effective_mass(lam, 1, 1.0, 1.0).unwrap();
            assert!(ml > 1.0, "m_λ={ml} must stay above m");
            assert!(ml < prev, "m_λ must decrease with λ");
            prev = ml;
        }
        // asymptotics m + d/(4λ)·ħ in units m = ħ = 1
        let lam = 50.0;
        let ml = effective_mass(lam, 1, 1.0, 1.0).unwrap();
        assert_relative_eq!(ml - 1.0, 1.0 / (4.0 * lam), max_relative = 2e-2);
    }

    #[test]
    fn momentum_expectation_is_effective_mass_times_yhat() {
        let g = grid1();
        let s0 = 0.4;
        let lam = 1.0;
        let y = FourVector::new(&[lam * f64::cosh(s0), lam * f64::sinh(s0)]);
        let psi = WaveFunction::coherent(Arc::clone(&g), &ComplexInterval::imaginary(y)).unwrap();
        let p = psi.momentum_expectation().unwrap();
        let ml = effective_mass(lam, 1, 1.0, 1.0).unwrap();
        assert_relative_eq!(p.t(), ml * f64::cosh(s0), max_relative = tolerances::EFFECTIVE_MASS_REL);
        assert_relative_eq!(p[1], ml * f64::sinh(s0), max_relative = tolerances::EFFECTIVE_MASS_REL);
    }

    #[test]
    fn synthesis_reproduces_kernel() {
        // ψ = e_w synthesized at z must equal the closed-form overlap
        let g = grid1();
        let w = rest_label(1.0);
        let psi = WaveFunction::coherent(Arc::clone(&g), &w).unwrap();
        let z = ComplexInterval::new(FourVector::new(&[0.5, 0.3]), FourVector::new(&[1.2, -0.1]));
        let synth = psi.synthesize(&z).unwrap();
        let closed = overlap_closed(&z, &w, 1.0, 1.0).unwrap().value;
        assert_relative_eq!(synth.re, closed.re, max_relative = 1e-8, epsilon = 1e-12);
        assert_relative_eq!(synth.im, closed.im, max_relative = 1e-8, epsilon = 1e-12);
    }

    #[test]
    fn synthesis_rejects_points_outside_tube() {
        let g = grid1();
        let psi = WaveFunction::coherent(Arc::clone(&g), &rest_label(1.0)).unwrap();
        let bad = ComplexInterval::new(FourVector::zero(1), FourVector::new(&[-1.0, 0.0]));
        assert!(matches!(psi.synthesize(&bad), Err(Error::OutsideTube)));
    }

    #[test]
    fn position_expectation_reads_off_label() {
        let g = Arc::new(MassShellGrid::build(1, 1.0, 8.0, 2048).unwrap());
        for x1 in [0.0, 0.7, -1.3] {
            let z = ComplexInterval::new(
                FourVector::new(&[0.0, x1]),
                FourVector::new(&[1.0, 0.0]),
            );
            let psi = WaveFunction::coherent(Arc::clone(&g), &z).unwrap();
            let x = position_expectation(&psi).unwrap();
            assert_abs_diff_eq!(x, x1, epsilon = tolerances::POSITION_ABS);
        }
    }

    #[test]
    fn position_rejects_nonzero_time() {
        let g = grid1();
        let z = ComplexInterval::new(FourVector::new(&[0.5, 0.0]), FourVector::new(&[1.0, 0.0]));
        let psi = WaveFunction::coherent(Arc::clone(&g), &z).unwrap();
        assert!(matches!(position_expectation(&psi), Err(Error::NonzeroTime(_))));
    }

    #[test]
    fn tight_filter_approaches_gaussian() {
        // λ = 50, slow drift u = 0.05: fidelity with the Gaussian oracle
        let g = Arc::new(MassShellGrid::build(1, 1.0, 2.0, 4096).unwrap());
        let lam = 50.0;
        let u = 0.05;
        let y = FourVector::new(&[lam * (1.0_f64 + u * u).sqrt(), lam * u]);
        let z = ComplexInterval::new(FourVector::new(&[0.0, 0.3]), y);
        let psi = WaveFunction::coherent(Arc::clone(&g), &z).unwrap();
        let chi = nonrelativistic_oracle(Arc::clone(&g), &z).unwrap();
        let f = fidelity(&psi, &chi).unwrap();
        // reference: adaptive quadrature with the ‖e_z‖² piece in closed form
        assert_relative_eq!(f, 0.999_934_042_385_573_6, epsilon = 1e-9);
        assert!(f > tolerances::FIDELITY_MIN);
    }

    #[test]
    fn loose_filter_departs_from_gaussian() {
        let g = grid1();
        let lam = 0.5;
        let z = ComplexInterval::imaginary(FourVector::new(&[lam, 0.0]));
        let psi = WaveFunction::coherent(Arc::clone(&g), &z).unwrap();
        let chi = nonrelativistic_oracle(Arc::clone(&g), &z).unwrap();
        let f = fidelity(&psi, &chi).unwrap();
        assert_relative_eq!(f, 0.963_542_064_218_7, epsilon = 1e-9);
        assert!(f < 0.99);
    }

    #[test]
    fn uncertainty_product_near_heisenberg_floor() {
        // tight filter: ΔX·ΔP → ħ/2 from above
        let g = Arc::new(MassShellGrid::build(1, 1.0, 2.0, 4096).unwrap());
        let z = ComplexInterval::imaginary(FourVector::new(&[50.0, 0.0]));
        let psi = WaveFunction::coherent(Arc::clone(&g), &z).unwrap();
        let (dx, dp) = uncertainties(&psi).unwrap();
        let prod = dx * dp;
        assert!(prod >= 0.5 - 1e-9, "product {prod} must respect the floor");
        assert!(prod < 0.5 * 1.01, "tight filter should sit near ħ/2, got {prod}");

        // loose filter sits measurably above the floor
        let g2 = grid1();
        let z2 = ComplexInterval::imaginary(FourVector::new(&[0.5, 0.0]));
        let psi2 = WaveFunction::coherent(g2, &z2).unwrap();
        let (dx2, dp2) = uncertainties(&psi2).unwrap();
        assert!(dx2 * dp2 > 0.5 * 1.05, "loose filter product {} should exceed the floor", dx2 * dp2);
    }

    #[test]
    fn superposition_rejects_bad_labels() {
        let g = grid1();
        let past = ComplexInterval::imaginary(FourVector::new(&[-1.0, 0.0]));
        assert!(WaveFunction::coherent(Arc::clone(&g), &past).is_err());
        assert!(WaveFunction::superposition(g, &[]).is_err());
    }
}
