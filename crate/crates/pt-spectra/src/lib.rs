//! One quantum particle in a trigonometric tangent-squared well.
//!
//! The potential `V(x) = V0 tan^2(pi x / L)` confines a particle of mass `m`
//! to the open interval `(-L/2, L/2)`, interpolating between the hard-wall
//! box (`V0 -> 0`) and the harmonic oscillator (deep, wide well). Everything
//! in this crate hangs off the dimensionless reduction
//!
//! ```text
//! W = (hbar^2 / 2m) (pi / L)^2,   v = V0 / W,   lambda(lambda - 1) = v,
//! ```
//!
//! under which the spectrum is exactly `epsilon_n = (n + lambda)^2` in units
//! of `W`, split as a box ladder plus a harmonic ladder. The crate provides:
//!
//! - [`params`]: parameter validation and the reduction to `(W, v, lambda)`;
//! - [`potential`]: the exact well plus its core and wall asymptotics;
//! - [`spectrum`]: closed-form levels, their decomposition, and `dE/dL`;
//! - [`wavefunction`]: ultraspherical-product eigenfunctions, normalized by
//!   escalating Gauss-Legendre quadrature;
//! - [`quadrature`]: the underlying Gauss-Legendre rules;
//! - [`oracle`]: an independent finite-difference Sturm-bisection eigensolver
//!   used to certify the closed forms;
//! - [`thermo`]: canonical partition function, energy, heat capacity, and
//!   confinement pressure (k_B = 1).
//!
//! Fallible operations return [`error::Error`], split into invalid input,
//! out-of-domain evaluation, and numerical breakdown.

pub mod error;
pub mod oracle;
pub mod params;
pub mod potential;
pub mod quadrature;
pub mod spectrum;
pub mod thermo;
pub mod wavefunction;

pub use error::{Error, Result};
pub use params::{reduce, DimensionlessParams, PhysicalParams};
pub use spectrum::{energy_level, h_omega, SpectrumEntry};
