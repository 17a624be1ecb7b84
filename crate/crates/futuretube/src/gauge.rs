//! Holomorphic gauge calculus on the tube: Wirtinger derivatives, fiber
//! metrics, potentials, field strengths, and the non-abelian integrability
//! identity.
//!
//! With z = x − iy, the Wirtinger split of the exterior derivative is
//! ∂_μ = ½(∂/∂x^μ + i ∂/∂y^μ) and ∂̄_μ = ½(∂/∂x^μ − i ∂/∂y^μ), so that
//! ∂_μ z^ν = δ_μ^ν and ∂̄_μ z^ν = 0. Synthesized wavefunctions are
//! holomorphic: their ∂̄ residual certifies the Cauchy–Riemann equations.
//!
//! A fiber metric g (positive scalar, or Hermitian positive-definite matrix)
//! reweights the density to ρ = ψ g ψ*; its holomorphic logarithmic
//! derivative 𝒜_μ = (∂_μ g) g⁻¹ is the gauge potential and the mixed second
//! derivative ℱ_{μ̄ν} = ∂̄_μ 𝒜_ν the field strength. Because 𝒜 comes from a
//! single g, its holomorphic curl is pure commutator:
//! ∂_μ𝒜_ν − ∂_ν𝒜_μ = [𝒜_μ, 𝒜_ν] — the integrability identity this module
//! measures. Signs follow the left-acting convention used throughout the
//! crate and are certified by the abelian limit, where both sides vanish.
//!
//! Derivatives are numerical (metrics are black boxes): 4th-order centered
//! stencils with default step 10⁻³·λ(y), plus a Richardson step-halving error
//! estimate. Stencils displace y as well as x, so they refuse points whose
//! neighborhood pokes out of the tube.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::Error;
use crate::geometry::{ComplexInterval, FourVector};
use crate::states::WaveFunction;
use crate::Result;

/// Values a differentiable tube field can take: complex scalars or 2×2
/// complex matrices.
pub trait FieldValue: Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, c: Complex64) -> Self;
    /// Frobenius magnitude.
    fn magnitude(&self) -> f64;
}

impl FieldValue for Complex64 {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, c: Complex64) -> Self {
        self * c
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl FieldValue for Matrix2<Complex64> {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, c: Complex64) -> Self {
        self * c
    }
    fn magnitude(&self) -> f64 {
        self.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Wirtinger derivatives of a field at a point: D holomorphic components,
/// D antiholomorphic ones, and a Richardson error estimate for the worst
/// component.
#[derive(Debug, Clone)]
pub struct Wirtinger<T> {
    pub holo: Vec<T>,
    pub anti: Vec<T>,
    pub estimated_error: f64,
}

/// Default stencil step for a point with imaginary part y: 10⁻³·λ(y).
pub fn default_step(z: &ComplexInterval) -> Result<f64> {
    Ok(1e-3 * z.y.timelike_norm()?)
}

fn displaced(z: &ComplexInterval, mu: usize, along_y: bool, step: f64) -> ComplexInterval {
    let mut x = z.x;
    let mut y = z.y;
    if along_y {
        y[mu] += step;
    } else {
        x[mu] += step;
    }
    ComplexInterval::new(x, y)
}

/// 4th-order centered first derivative of f along one real direction.
fn directional<T: FieldValue>(
    f: &dyn Fn(&ComplexInterval) -> Result<T>,
    z: &ComplexInterval,
    mu: usize,
    along_y: bool,
    h: f64,
) -> Result<T> {
    let m2 = f(&displaced(z, mu, along_y, -2.0 * h))?;
    let m1 = f(&displaced(z, mu, along_y, -h))?;
    let p1 = f(&displaced(z, mu, along_y, h))?;
    let p2 = f(&displaced(z, mu, along_y, 2.0 * h))?;
    // (f(−2h) − 8f(−h) + 8f(h) − f(2h)) / 12h
    let num = m2
        .sub(&m1.scale(Complex64::new(8.0, 0.0)))
        .add(&p1.scale(Complex64::new(8.0, 0.0)))
        .sub(&p2);
    Ok(num.scale(Complex64::new(1.0 / (12.0 * h), 0.0)))
}

/// Wirtinger derivatives (∂_μ f, ∂̄_μ f) for all μ, via 4th-order stencils at
/// steps h and 2h; the Richardson comparison |D_h − D_{2h}|/15 is returned as
/// the error estimate.
///
/// Errors with [`Error::StencilExitsTube`] when any y-displacement up to ±4h
/// leaves the future cone.
pub fn wirtinger<T: FieldValue>(
    f: &dyn Fn(&ComplexInterval) -> Result<T>,
    z: &ComplexInterval,
    h: f64,
) -> Result<Wirtinger<T>> {
    if h <= 0.0 {
        return Err(Error::Domain(format!("stencil step must be positive, got {h}")));
    }
    let dim = z.d() + 1;
    for mu in 0..dim {
        for sign in [-1.0, 1.0] {
            if !displaced(z, mu, true, sign * 4.0 * h).y.is_future_timelike() {
                return Err(Error::StencilExitsTube);
            }
        }
    }
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    let mut holo = Vec::with_capacity(dim);
    let mut anti = Vec::with_capacity(dim);
    let mut err: f64 = 0.0;
    for mu in 0..dim {
        let dx = directional(f, z, mu, false, h)?;
        let dy = directional(f, z, mu, true, h)?;
        let dx2 = directional(f, z, mu, false, 2.0 * h)?;
        let dy2 = directional(f, z, mu, true, 2.0 * h)?;
        let ho = dx.scale(half).add(&dy.scale(half_i));
        let an = dx.scale(half).sub(&dy.scale(half_i));
        let ho2 = dx2.scale(half).add(&dy2.scale(half_i));
        let an2 = dx2.scale(half).sub(&dy2.scale(half_i));
        err = err.max(ho.sub(&ho2).magnitude() / 15.0);
        err = err.max(an.sub(&an2).magnitude() / 15.0);
        holo.push(ho);
        anti.push(an);
    }
    Ok(Wirtinger { holo, anti, estimated_error: err })
}

/// Antiholomorphic residual max_μ |∂̄_μ ψ| of a synthesized state at z —
/// the Cauchy–Riemann certificate.
pub fn cauchy_riemann_residual(psi: &WaveFunction, z: &ComplexInterval, h: f64) -> Result<f64> {
    let w = wirtinger(&|p: &ComplexInterval| psi.synthesize(p), z, h)?;
    Ok(w.anti.iter().map(|c| c.norm()).fold(0.0, f64::max))
}

/// Gauge potential components 𝒜_μ at a point, with the stencil error of the
/// underlying derivatives.
#[derive(Debug, Clone)]
pub struct GaugePotential<T> {
    pub components: Vec<T>,
    pub estimated_error: f64,
}

/// Field strength ℱ_{μ̄ν} = ∂̄_μ 𝒜_ν, stored row-major with the barred index
/// first.
#[derive(Debug, Clone)]
pub struct GaugeField<T> {
    pub components: Vec<Vec<T>>,
    pub estimated_error: f64,
}

/// Abelian potential 𝒜_μ = ∂_μ ln g for a positive scalar metric.
pub fn potential_scalar(
    g: &dyn Fn(&ComplexInterval) -> Result<f64>,
    z: &ComplexInterval,
    h: f64,
) -> Result<GaugePotential<Complex64>> {
    let log_g = |p: &ComplexInterval| -> Result<Complex64> {
        let v = g(p)?;
        if v <= 0.0 {
            return Err(Error::SingularMetric);
        }
        Ok(Complex64::new(v.ln(), 0.0))
    };
    let w = wirtinger(&log_g, z, h)?;
    Ok(GaugePotential { components: w.holo, estimated_error: w.estimated_error })
}

/// Hermiticity and positive-definiteness gate for 2×2 metric values.
fn check_positive(m: &Matrix2<Complex64>) -> Result<()> {
    let scale = m.iter().map(|e| e.norm()).fold(0.0, f64::max).max(1.0);
    let herm = (m[(0, 1)] - m[(1, 0)].conj()).norm()
        + m[(0, 0)].im.abs()
        + m[(1, 1)].im.abs();
    if herm > 1e-10 * scale {
        return Err(Error::SingularMetric);
    }
    let tr = m[(0, 0)].re + m[(1, 1)].re;
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let eig_min = 0.5 * (tr - disc);
    if eig_min <= 0.0 {
        return Err(Error::SingularMetric);
    }
    Ok(())
}

/// Non-abelian potential 𝒜_μ = (∂_μ g) g⁻¹ for a Hermitian positive-definite
/// matrix metric (left-acting ordering).
pub fn potential_matrix(
    g: &dyn Fn(&ComplexInterval) -> Result<Matrix2<Complex64>>,
    z: &ComplexInterval,
    h: f64,
) -> Result<GaugePotential<Matrix2<Complex64>>> {
    let at_z = g(z)?;
    check_positive(&at_z)?;
    let inv = at_z.try_inverse().ok_or(Error::SingularMetric)?;
    let w = wirtinger(g, z, h)?;
    let components = w.holo.into_iter().map(|d| d * inv).collect();
    Ok(GaugePotential { components, estimated_error: w.estimated_error })
}

/// Abelian field strength ℱ_{μ̄ν} = ∂̄_μ ∂_ν ln g via nested stencils.
pub fn field_scalar(
    g: &(dyn Fn(&ComplexInterval) -> Result<f64> + Sync),
    z: &ComplexInterval,
    h: f64,
) -> Result<GaugeField<Complex64>> {
    let dim = z.d() + 1;
    let mut rows = Vec::with_capacity(dim);
    let mut err: f64 = 0.0;
    for nu in 0..dim {
        let a_nu = |p: &ComplexInterval| -> Result<Complex64> {
            Ok(potential_scalar(g, p, h)?.components[nu])
        };
        let w = wirtinger(&a_nu, z, h)?;
        err = err.max(w.estimated_error);
        rows.push(w.anti);
    }
    // transpose: rows[nu][mu] is ∂̄_μ 𝒜_ν; store with μ̄ first
    let components = (0..dim)
        .map(|mu| (0..dim).map(|nu| rows[nu][mu]).collect())
        .collect();
    Ok(GaugeField { components, estimated_error: err })
}

/// Non-abelian field strength ℱ_{μ̄ν} = ∂̄_μ 𝒜_ν.
pub fn field_matrix(
    g: &(dyn Fn(&ComplexInterval) -> Result<Matrix2<Complex64>> + Sync),
    z: &ComplexInterval,
    h: f64,
) -> Result<GaugeField<Matrix2<Complex64>>> {
    let dim = z.d() + 1;
    let mut rows = Vec::with_capacity(dim);
    let mut err: f64 = 0.0;
    for nu in 0..dim {
        let a_nu = |p: &ComplexInterval| -> Result<Matrix2<Complex64>> {
            Ok(potential_matrix(g, p, h)?.components[nu])
        };
        let w = wirtinger(&a_nu, z, h)?;
        err = err.max(w.estimated_error);
        rows.push(w.anti);
    }
    let components = (0..dim)
        .map(|mu| (0..dim).map(|nu| rows[nu][mu]).collect())
        .collect();
    Ok(GaugeField { components, estimated_error: err })
}

/// Holomorphic scalar gauge function χ(z) = e^{i z·k} for real k; never
/// vanishes on the tube (|χ| = e^{y·k}).
pub fn plane_wave_gauge(k: FourVector) -> impl Fn(&ComplexInterval) -> Complex64 {
    move |z| Complex64::from_polar(z.y.dot(&k).exp(), z.x.dot(&k))
}

/// The transformed scalar metric g′ = χ⁻¹ g (χ*)⁻¹ = g/|χ|².
pub fn gauge_transform_scalar<'a>(
    g: &'a (dyn Fn(&ComplexInterval) -> Result<f64> + Sync),
    chi: &'a (dyn Fn(&ComplexInterval) -> Complex64 + Sync),
) -> impl Fn(&ComplexInterval) -> Result<f64> + Sync + 'a {
    move |z| {
        let c = chi(z).norm_sqr();
        if c == 0.0 {
            return Err(Error::Domain("gauge function vanishes at a sample point".into()));
        }
        Ok(g(z)? / c)
    }
}

/// Covariant probability density ρ(z) = ψ(z) g(z) ψ(z)* for a scalar metric.
/// With g ≡ 1 this is exactly the free |ψ(z)|².
pub fn covariant_density(
    psi: &WaveFunction,
    g: &dyn Fn(&ComplexInterval) -> Result<f64>,
    z: &ComplexInterval,
) -> Result<f64> {
    let gv = g(z)?;
    if gv <= 0.0 {
        return Err(Error::SingularMetric);
    }
    Ok(psi.synthesize(z)?.norm_sqr() * gv)
}

/// Max-norm residual of the integrability identity
/// ∂_μ𝒜_ν − ∂_ν𝒜_μ = 𝒜_μ𝒜_ν − 𝒜_ν𝒜_μ over index pairs, for a matrix metric.
///
/// Exactly zero in exact arithmetic for any potential of the form (∂g)g⁻¹;
/// the numerical value reflects stencil truncation only. In the abelian
/// (commuting) case both sides vanish separately, which certifies the sign
/// convention.
pub fn integrability_residual(
    g: &(dyn Fn(&ComplexInterval) -> Result<Matrix2<Complex64>> + Sync),
    z: &ComplexInterval,
    h: f64,
) -> Result<f64> {
    let dim = z.d() + 1;
    let a_at = |p: &ComplexInterval| potential_matrix(g, p, h);
    let a0 = a_at(z)?.components;
    // holomorphic derivatives of each component
    let mut da = Vec::with_capacity(dim);
    for nu in 0..dim {
        let a_nu = |p: &ComplexInterval| Ok(a_at(p)?.components[nu]);
        da.push(wirtinger(&a_nu, z, h)?.holo);
    }
    let mut worst: f64 = 0.0;
    for mu in 0..dim {
        for nu in (mu + 1)..dim {
            let curl = da[nu][mu] - da[mu][nu]; // ∂_μ𝒜_ν − ∂_ν𝒜_μ
            let comm = a0[mu] * a0[nu] - a0[nu] * a0[mu];
            worst = worst.max((curl - comm).magnitude());
        }
    }
    Ok(worst)
}

/// Closed-form exponential of a 2×2 complex matrix:
/// exp(M) = e^{tr M/2} (cosh δ · I + sinhc δ · A), A = M − (tr M/2) I,
/// δ = √(−det A).
pub fn mat2_exp(m: &Matrix2<Complex64>) -> Matrix2<Complex64> {
    let half_tr = (m[(0, 0)] + m[(1, 1)]) * Complex64::new(0.5, 0.0);
    let a = m - Matrix2::identity() * half_tr;
    let delta_sq = -(a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]);
    let delta = delta_sq.sqrt();
    let (ch, shc) = if delta.norm() < 1e-6 {
        // series: cosh δ ≈ 1 + δ²/2, sinh δ/δ ≈ 1 + δ²/6
        (
            Complex64::new(1.0, 0.0) + delta_sq * Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.0) + delta_sq * Complex64::new(1.0 / 6.0, 0.0),
        )
    } else {
        (delta.cosh(), delta.sinh() / delta)
    };
    (Matrix2::identity() * ch + a * shc) * half_tr.exp()
}

/// Positive scalar test metric g(z) = exp(Σ_μ a_μ z_μ z̄_μ); its potential is
/// 𝒜_ν = a_ν z̄_ν and its field strength ℱ_{μ̄ν} = a_ν δ_{μν}.
pub fn abelian_test_metric(coeffs: Vec<f64>) -> impl Fn(&ComplexInterval) -> Result<f64> + Sync {
    move |z| {
        let dim = z.d() + 1;
        if coeffs.len() != dim {
            return Err(Error::Domain(format!(
                "metric has {} coefficients for dimension {dim}",
                coeffs.len()
            )));
        }
        let mut s = 0.0;
        for mu in 0..dim {
            s += coeffs[mu] * (z.x[mu] * z.x[mu] + z.y[mu] * z.y[mu]);
        }
        Ok(s.exp())
    }
}

/// Hermitian positive-definite matrix test metric
/// g(z) = exp(A·z₀z̄₀ + B·z₁z̄₁) with constant non-commuting Hermitian A, B.
pub fn nonabelian_test_metric(
    a: Matrix2<Complex64>,
    b: Matrix2<Complex64>,
) -> impl Fn(&ComplexInterval) -> Result<Matrix2<Complex64>> + Sync {
    move |z| {
        let s0 = Complex64::new(z.x[0] * z.x[0] + z.y[0] * z.y[0], 0.0);
        let s1 = Complex64::new(z.x[1] * z.x[1] + z.y[1] * z.y[1], 0.0);
        Ok(mat2_exp(&(a * s0 + b * s1)))
    }
}

/// The standard non-commuting Hermitian pair used by the test-metric family.
pub fn test_metric_pair() -> (Matrix2<Complex64>, Matrix2<Complex64>) {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let a = Matrix2::new(c(0.30, 0.0), c(0.12, 0.0), c(0.12, 0.0), c(-0.06, 0.0));
    let b = Matrix2::new(c(0.05, 0.0), c(0.0, 0.075), c(0.0, -0.075), c(0.25, 0.0));
    (a, b)
}
