//! The confining tangent-squared potential and its two asymptotic reductions.
//!
//! Exact form: `V(x) = V0 tan^2(alpha x)` on the open interval `(-L/2, L/2)`,
//! singular at the walls. Near the center it reduces to a harmonic plus
//! quartic core; near the walls to an inverse-square form whose structure
//! matches the hard-wall box. The spring constant of the deep-well limit is
//! `k = 2 V0 alpha^2`.

use crate::error::{Error, Result};
use crate::params::PhysicalParams;
use std::f64::consts::PI;

/// Fraction of `L` beyond which the near-wall form is considered valid:
/// for `|x| > 0.4 L` the dropped linear cotangent term contributes < 5%.
pub const NEAR_WALL_BAND: f64 = 0.4;

/// Which evaluation of the potential a sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Exact `V0 tan^2(alpha x)`.
    Exact,
    /// Quadratic core `V0 (alpha x)^2`.
    Harmonic2,
    /// Quadratic plus quartic core `V0 (alpha x)^2 (1 + 2/3 (alpha x)^2)`.
    Harmonic4,
    /// Inverse-square wall form `V0 (L^4/pi^2) (x^2 - L^2/4)^-2`.
    NearWall,
}

/// Truncation order of the small-argument expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicOrder {
    Quadratic,
    Quartic,
}

/// One evaluated point of the potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub x: f64,
    pub value: f64,
    pub regime: Regime,
}

fn check_interior(x: f64, p: &PhysicalParams) -> Result<f64> {
    let half = 0.5 * p.length;
    if !x.is_finite() || x.abs() >= half {
        return Err(Error::domain(format!(
            "x = {x} is outside the open interval (-L/2, L/2); the potential is singular at x = -{half} and x = +{half}"
        )));
    }
    Ok(half)
}

/// Exact potential `V0 tan^2(alpha x)`, with the tangent taken as sin/cos of
/// the reduced argument `xi = alpha x` in `(-pi/2, pi/2)`. Even in `x`, zero
/// at the center, strictly increasing in `|x|`.
pub fn eval_exact(x: f64, p: &PhysicalParams) -> Result<f64> {
    check_interior(x, p)?;
    let xi = p.alpha() * x;
    let t = xi.sin() / xi.cos();
    Ok(p.v0 * t * t)
}

/// Small-argument core of the potential, to quadratic or quartic order.
pub fn eval_harmonic(x: f64, p: &PhysicalParams, order: HarmonicOrder) -> Result<f64> {
    check_interior(x, p)?;
    let xi2 = {
        let xi = p.alpha() * x;
        xi * xi
    };
    Ok(match order {
        HarmonicOrder::Quadratic => p.v0 * xi2,
        HarmonicOrder::Quartic => p.v0 * xi2 * (1.0 + (2.0 / 3.0) * xi2),
    })
}

/// Inverse-square wall form `V0 (L^4/pi^2) (x^2 - L^2/4)^-2`.
///
/// Only meaningful near the walls; requires `0.4 L < |x| < L/2`.
pub fn eval_near_wall(x: f64, p: &PhysicalParams) -> Result<f64> {
    check_interior(x, p)?;
    if x.abs() <= NEAR_WALL_BAND * p.length {
        return Err(Error::domain(format!(
            "x = {x} is outside the near-wall validity band |x| > {NEAR_WALL_BAND} L (L = {})",
            p.length
        )));
    }
    let l2 = p.length * p.length;
    let d = x * x - 0.25 * l2;
    Ok(p.v0 * l2 * l2 / (PI * PI * d * d))
}

/// Spring constant of the deep-well limit, `k = 2 V0 alpha^2 = 2 pi^2 V0 / L^2`.
pub fn spring_constant(p: &PhysicalParams) -> Result<f64> {
    // Validation only; alpha is always finite for valid L.
    PhysicalParams::new(p.mass, p.hbar, p.v0, p.length)?;
    let alpha = p.alpha();
    Ok(2.0 * p.v0 * alpha * alpha)
}

/// Evaluate the potential in a given regime, tagging the result.
pub fn sample(x: f64, p: &PhysicalParams, regime: Regime) -> Result<PotentialSample> {
    let value = match regime {
        Regime::Exact => eval_exact(x, p)?,
        Regime::Harmonic2 => eval_harmonic(x, p, HarmonicOrder::Quadratic)?,
        Regime::Harmonic4 => eval_harmonic(x, p, HarmonicOrder::Quartic)?,
        Regime::NearWall => eval_near_wall(x, p)?,
    };
    Ok(PotentialSample { x, value, regime })
}
