//! Mass-shell quadrature and the ray filter.
//!
//! Momenta live on the hyperboloid Ω_m = {p : p² = m², p₀ > 0}, carrying the
//! invariant measure dμ = d𝐩/2E. In d = 1 the rapidity substitution
//! q = m sinh s turns dμ into ds/2 on a uniform grid, so Lorentz boosts become
//! exact lattice shifts. In d = 3 a radial rapidity grid is crossed with
//! Gauss–Legendre in cos θ and a uniform azimuthal grid; integrands in this
//! crate are axially symmetric, so the azimuthal count defaults to one node
//! carrying the full 2π.
//!
//! The ray filter R_y(p) = e^{−y·p/ħ} is the directional momentum window opened
//! by the imaginary part y of a tube point; by the reverse triangle inequality
//! y·p ≥ λ(y)·m, it is bounded by e^{−λm/ħ} with the maximum at p = mŷ.

use num_complex::Complex64;

use crate::error::Error;
use crate::geometry::FourVector;
use crate::quadrature::{gauss_legendre, Kahan, KahanComplex};
use crate::Result;

/// Default rapidity cutoff; the Boltzmann-type integrands used here are below
/// e^{−m cosh 8} ≈ 10⁻⁶⁴⁷ beyond it.
pub const DEFAULT_S_MAX: f64 = 8.0;

/// Default node count per axis.
pub const DEFAULT_NODES: usize = 512;

/// Quadrature grid realizing ∫ dμ on the mass shell.
#[derive(Debug, Clone)]
pub struct MassShellGrid {
    d: usize,
    m: f64,
    hbar: f64,
    s_max: f64,
    node_count: usize,
    nodes: Vec<FourVector>,
    weights: Vec<f64>,
    /// Indices of the outermost-rapidity nodes, for tail reporting.
    rim: Vec<usize>,
}

impl MassShellGrid {
    /// Builds the default grid for spatial dimension d ∈ {1, 3}.
    ///
    /// d = 1: n uniform rapidity midpoints on [−s_max, s_max], weight Δs/2.
    /// d = 3: n radial rapidity midpoints on (0, s_max] with weight
    /// (m²/2)·sinh²s·Δs, a 32-point Gauss–Legendre rule in cos θ, and a single
    /// azimuthal node carrying 2π (axially symmetric integrands).
    pub fn build(d: usize, m: f64, s_max: f64, n: usize) -> Result<Self> {
        Self::build_with_angular(d, m, s_max, n, 32, 1)
    }

    /// d = 3 builder with explicit angular resolution; n_phi > 1 lifts the
    /// axial-symmetry reduction.
    pub fn build_with_angular(
        d: usize,
        m: f64,
        s_max: f64,
        n: usize,
        n_theta: usize,
        n_phi: usize,
    ) -> Result<Self> {
        if m <= 0.0 {
            return Err(Error::Domain(format!("mass must be positive, got {m}")));
        }
        if s_max <= 0.0 {
            return Err(Error::Domain(format!("s_max must be positive, got {s_max}")));
        }
        if n < 16 {
            return Err(Error::Domain(format!("node count must be at least 16, got {n}")));
        }
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut rim = Vec::new();
        match d {
            1 => {
                let ds = 2.0 * s_max / n as f64;
                for j in 0..n {
                    let s = -s_max + (j as f64 + 0.5) * ds;
                    nodes.push(FourVector::new(&[m * s.cosh(), m * s.sinh()]));
                    weights.push(0.5 * ds);
                    if j == 0 || j == n - 1 {
                        rim.push(j);
                    }
                }
            }
            3 => {
                if n_theta < 2 || n_phi < 1 {
                    return Err(Error::Domain(
                        "d = 3 grid needs n_theta >= 2 and n_phi >= 1".into(),
                    ));
                }
                let ds = s_max / n as f64;
                let (ct, wt) = gauss_legendre(n_theta);
                let wphi = 2.0 * std::f64::consts::PI / n_phi as f64;
                for j in 0..n {
                    let s = (j as f64 + 0.5) * ds;
                    let radial = 0.5 * m * m * s.sinh() * s.sinh() * ds;
                    let e = m * s.cosh();
                    let pr = m * s.sinh();
                    for (cos_th, w_th) in ct.iter().zip(&wt) {
                        let sin_th = (1.0 - cos_th * cos_th).sqrt();
                        for k in 0..n_phi {
                            let phi = wphi * (k as f64 + 0.5);
                            nodes.push(FourVector::new(&[
                                e,
                                pr * sin_th * phi.cos(),
                                pr * sin_th * phi.sin(),
                                pr * cos_th,
                            ]));
                            weights.push(radial * w_th * wphi);
                            if j == n - 1 {
                                rim.push(nodes.len() - 1);
                            }
                        }
                    }
                }
            }
            other => return Err(Error::UnsupportedDimension(other)),
        }
        Ok(Self { d, m, hbar: 1.0, s_max, node_count: n, nodes, weights, rim })
    }

    /// Same grid with a different ħ (used by states carrying explicit units).
    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        if hbar <= 0.0 {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        self.hbar = hbar;
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    /// Node count per axis requested at build time.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Total number of quadrature nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[FourVector] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Rapidity of the j-th node in d = 1 (the grid is uniform in it).
    pub fn rapidity(&self, j: usize) -> f64 {
        debug_assert_eq!(self.d, 1);
        let ds = 2.0 * self.s_max / self.node_count as f64;
        -self.s_max + (j as f64 + 0.5) * ds
    }

    /// ∫ dμ f over the grid: Σ weights·f in fixed node order with compensated
    /// summation. Errors when `f` is not sampled on every node.
    pub fn integrate(&self, f: &[Complex64]) -> Result<Complex64> {
        Ok(self.integrate_with_tail(f)?.0)
    }

    /// Like [`integrate`](Self::integrate), also reporting the magnitude of
    /// the outermost-rapidity contribution as a truncation-tail estimate.
    pub fn integrate_with_tail(&self, f: &[Complex64]) -> Result<(Complex64, f64)> {
        if f.len() != self.nodes.len() {
            return Err(Error::Domain(format!(
                "integrand sampled on {} nodes, grid has {}",
                f.len(),
                self.nodes.len()
            )));
        }
        let mut acc = KahanComplex::new();
        for (v, w) in f.iter().zip(&self.weights) {
            acc.add(v * *w);
        }
        let mut tail = Kahan::new();
        for &j in &self.rim {
            tail.add(f[j].norm() * self.weights[j]);
        }
        Ok((acc.value(), tail.value()))
    }

    /// Convenience: integrate a function evaluated on the nodes.
    pub fn integrate_fn(&self, f: impl Fn(&FourVector) -> Complex64) -> Complex64 {
        let mut acc = KahanComplex::new();
        for (p, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(p) * *w);
        }
        acc.value()
    }
}

/// Ray filter R_y(p) = e^{−y·p/ħ}.
///
/// Defined only for y in the open future cone; for past-pointing y the filter
/// grows like e^{+λ|𝐩|/ħ} and every mass-shell integral diverges.
pub fn ray_filter(y: &FourVector, p: &FourVector, hbar: f64) -> Result<f64> {
    if !y.is_future_timelike() {
        return Err(Error::PastTube);
    }
    Ok((-y.dot(p) / hbar).exp())
}

/// Grid node maximizing the ray filter; lands within one grid spacing of the
/// true peak p_y = mŷ.
pub fn filter_peak(y: &FourVector, grid: &MassShellGrid) -> Result<FourVector> {
    if !y.is_future_timelike() {
        return Err(Error::PastTube);
    }
    // R_y is maximal where y·p is minimal
    let mut best = 0;
    let mut best_dot = f64::INFINITY;
    for (j, p) in grid.nodes().iter().enumerate() {
        let d = y.dot(p);
        if d < best_dot {
            best_dot = d;
            best = j;
        }
    }
    Ok(grid.nodes()[best])
}
