//! Central registry of numerical tolerances.
//!
//! Every acceptance-level comparison in the crate reads its tolerance from
//! here, so a change in one place propagates to the unit tests, the
//! verification suite, and the CLI alike. Values are deliberately conservative:
//! each was chosen from measured convergence of the underlying quadratures at
//! the default desk-scale grids, with at least two orders of magnitude of
//! headroom.

/// Absolute error target for the Bessel engine `specfun::bessel_k`.
/// Honoured on the operating envelope Re w ≥ 0.1, ν ≤ 3.
pub const BESSEL_ABS: f64 = 1e-10;

/// Relative agreement between closed-form kernels and brute-force mass-shell
/// quadrature (the crate's central equivalence).
pub const KERNEL_QUADRATURE_REL: f64 = 1e-8;

/// Relative agreement of the norm formula ‖e_z‖² = (πm/λ)^ν K_ν(2λm/ħ)
/// with direct quadrature.
pub const NORM_FORMULA_REL: f64 = 1e-8;

/// Relative agreement of the effective-mass ratio K_{ν+1}/K_ν with the
/// quadrature energy expectation.
pub const EFFECTIVE_MASS_REL: f64 = 1e-6;

/// Relative agreement of the phase-space norm with the momentum-space norm
/// (Born rule / Plancherel identity).
pub const PLANCHEREL_REL: f64 = 1e-4;

/// Maximum relative deviation of W(p)/E(p) across the probe momenta during
/// calibration; flatness is the numerical content of the Plancherel theorem.
pub const FLATNESS_REL: f64 = 1e-8;

/// Relative agreement of the calibrated Liouville constant with its
/// closed form m/(2πħλK₁(2λm/ħ)).
pub const CALIBRATION_REL: f64 = 1e-6;

/// Relative spread of the slice norm across (t₀, λ) slice choices.
pub const SLICE_INDEPENDENCE_REL: f64 = 2e-4;

/// Relative spread of thermal averages across slice choices.
pub const THERMAL_INDEPENDENCE_REL: f64 = 2e-3;

/// Relative agreement of the reproducing/propagating integral with direct
/// synthesis.
pub const REPRODUCE_REL: f64 = 1e-3;

/// Normalized conservation residual of the contracted mixed derivative
/// ∂²ρ/∂x^μ∂y^μ (an algebraic identity under the quadrature sum).
pub const CONSERVATION_ABS: f64 = 1e-10;

/// Relative agreement of the total charge between two time slices.
pub const CHARGE_AGREEMENT_REL: f64 = 1e-4;

/// Relative agreement of phase-space thermal averages with the flat-measure
/// canonical oracle.
pub const THERMAL_EQUIV_REL: f64 = 1e-3;

/// Relative agreement of the rank-one trace with ‖e_w‖².
pub const TRACE_REL: f64 = 1e-3;

/// Relative agreement of U = −∂_β ln Z with the canonical ⟨E⟩.
pub const POTENTIALS_U_REL: f64 = 1e-5;

/// Absolute slack in the thermodynamic record identities S = Φ + βU,
/// F = −Φ/β.
pub const POTENTIALS_IDENTITY_ABS: f64 = 1e-10;

/// Fidelity threshold for the nonrelativistic-limit comparison at
/// λm/ħ = 50, |u| = 0.05.
pub const FIDELITY_MIN: f64 = 0.99;

/// Absolute slack on the Gaussian oracle's uncertainty product Δ_XΔ_P = ħ/2.
pub const UNCERTAINTY_ABS: f64 = 1e-6;

/// Absolute slack on the Newton–Wigner position expectation ⟨X⟩ = x.
pub const POSITION_ABS: f64 = 1e-6;

/// Relative invariance of Minkowski products and ζ under restricted boosts.
pub const BOOST_INVARIANCE_REL: f64 = 1e-12;

/// Relative accuracy of the local-invariant identities λ²r_y² = (σ²−λ²)(τ²+λ²)
/// and λt_y = στ on random tube points.
pub const LOCAL_INVARIANT_REL: f64 = 1e-10;

/// Absolute Cauchy–Riemann residual of synthesized wavefunctions.
pub const CR_RESIDUAL_ABS: f64 = 1e-8;

/// Gauge invariance of the abelian field under holomorphic rescalings.
pub const GAUGE_INVARIANCE_ABS: f64 = 1e-6;

/// Non-abelian integrability residual ∂𝒜 − 𝒜∧𝒜 on the test metric family.
pub const INTEGRABILITY_ABS: f64 = 1e-5;

/// Pointwise invariance of the covariant density under simultaneous gauge
/// transformation of (ψ, g).
pub const COVARIANT_DENSITY_ABS: f64 = 1e-12;

/// Absolute tolerance band for lightlike sector classification, scaled by
/// (‖x‖² + 1).
pub const LIGHTLIKE_BAND: f64 = 1e-12;

/// Relative mass-shell residual allowed on grid nodes, p₀ vs √(m² + 𝐩²).
pub const ON_SHELL_REL: f64 = 1e-14;
