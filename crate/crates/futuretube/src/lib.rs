//! Relativistic phase-space quantum mechanics on the future tube.
//!
//! The future tube is the set of complexified spacetime points z = x − iy whose
//! imaginary part y lies in the open future cone. Positive-energy wavefunctions
//! extend holomorphically into this domain, and the extension turns out to carry
//! a complete phase-space formulation of relativistic quantum mechanics:
//!
//! * [`geometry`] — real and complex Minkowski geometry: scalar products, sector
//!   classification, restricted boosts, the complex length ζ(z) = √(−z²) and its
//!   level surfaces and local invariants.
//! * [`specfun`] — the modified Bessel function K_ν for real order and complex
//!   argument, evaluated from its integral representation. Every closed-form
//!   kernel in the crate reduces to it.
//! * [`massshell`] — quadrature grids for the mass shell with the invariant
//!   measure d𝐩/2E, and the ray filter e^{−y·p/ħ}.
//! * [`states`] — coherent states e_z labelled by tube points, their Bessel-kernel
//!   overlaps, expectation values, effective mass, and the nonrelativistic
//!   Gaussian limit.
//! * [`phasespace`] — covariant phase-space slices, calibration of the Liouville
//!   constant, the phase-space Born rule (Plancherel identity), reproducing
//!   kernels, and conserved microlocal currents.
//! * [`thermal`] — canonical-ensemble averages computed two ways (phase-space
//!   translation and a direct momentum-space oracle), the rank-one trace check,
//!   and thermodynamic potentials.
//! * [`gauge`] — Wirtinger derivatives, fiber metrics, gauge potentials and
//!   fields, and the non-abelian integrability residual.
//! * [`verify`] — the runnable verification suite behind `futuretube verify`.
//!
//! Natural units are used throughout: c = 1 and, unless a call site says
//! otherwise, ħ = 1 and all masses are expressed in the same energy scale.
//! Every grid and reduction in the crate is deterministic: fixed node ordering
//! and compensated summation make repeated runs byte-identical.

pub mod error;
pub mod geometry;
pub mod massshell;
pub mod phasespace;
pub mod quadrature;
pub mod specfun;
pub mod states;
pub mod thermal;
pub mod tolerances;
pub mod verify;

pub mod gauge;

pub mod guide;

pub use error::Error;
pub use geometry::{ComplexInterval, ComplexLength, FourVector, LorentzBoost, SectorLabel};
pub use massshell::MassShellGrid;
pub use phasespace::PhaseSpaceSlice;
pub use specfun::BesselResult;
pub use states::WaveFunction;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
