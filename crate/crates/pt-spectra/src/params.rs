//! Physical parameters of the confined well and their dimensionless reduction.
//!
//! The model is controlled by four physical quantities (mass, hbar, well
//! amplitude `V0`, width `L`). Everything downstream consumes the derived
//! dimensionless triple `(W, v, lambda)` together with the inverse length
//! `alpha = pi / L`:
//!
//! * `W` — ground-state energy scale of the hard-wall box, `(hbar^2/2m) alpha^2`,
//! * `v` — dimensionless well depth `V0 / W`,
//! * `lambda` — positive root of `lambda (lambda - 1) = v`, which controls both
//!   the spectrum `(n + lambda)^2` and the wall decay of the eigenfunctions.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Depth at which `lambda` switches to its asymptotic branch `sqrt(v) + 1/2`.
/// Beyond this the dropped `1/(8 sqrt(v))` term is below double precision.
const LAMBDA_ASYMPTOTIC_V: f64 = 1e30;

/// Physical inputs of the model. Natural units (`hbar = m = 1`) are the
/// default; any consistent unit system works.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Particle mass, > 0.
    pub mass: f64,
    /// Reduced Planck constant, > 0.
    pub hbar: f64,
    /// Well amplitude, >= 0. Zero is the hard-wall box.
    pub v0: f64,
    /// Effective width of the well, > 0. The potential is singular at +-L/2.
    pub length: f64,
}

impl PhysicalParams {
    /// Validated constructor. Rejects non-finite fields, non-positive
    /// `mass`/`hbar`/`length`, and negative `v0`.
    pub fn new(mass: f64, hbar: f64, v0: f64, length: f64) -> Result<Self> {
        for (name, value) in [("mass", mass), ("hbar", hbar), ("V0", v0), ("L", length)] {
            if !value.is_finite() {
                return Err(Error::invalid(format!(
                    "{name} must be finite, got {value}"
                )));
            }
        }
        if mass <= 0.0 {
            return Err(Error::invalid(format!("mass must be > 0, got {mass}")));
        }
        if hbar <= 0.0 {
            return Err(Error::invalid(format!("hbar must be > 0, got {hbar}")));
        }
        if v0 < 0.0 {
            return Err(Error::invalid(format!("V0 must be >= 0, got {v0}")));
        }
        if length <= 0.0 {
            return Err(Error::invalid(format!("L must be > 0, got {length}")));
        }
        Ok(Self {
            mass,
            hbar,
            v0,
            length,
        })
    }

    /// Natural-units constructor: `mass = hbar = 1`.
    pub fn natural(v0: f64, length: f64) -> Result<Self> {
        Self::new(1.0, 1.0, v0, length)
    }

    /// Inverse length scale `alpha = pi / L`.
    pub fn alpha(&self) -> f64 {
        PI / self.length
    }

    /// Box ground-state energy `W = (hbar^2 / 2m) alpha^2`.
    pub fn energy_scale(&self) -> f64 {
        let alpha = self.alpha();
        self.hbar * self.hbar / (2.0 * self.mass) * alpha * alpha
    }

    /// Dimensionless reduction `(alpha, W, v, lambda)`.
    pub fn reduce(&self) -> Result<DimensionlessParams> {
        reduce(self)
    }
}

/// Derived dimensionless parameters of the well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    /// Inverse length `pi / L`.
    pub alpha: f64,
    /// Box ground-state energy scale (energy units).
    pub w: f64,
    /// Dimensionless depth `V0 / W`.
    pub v: f64,
    /// Positive root of `lambda (lambda - 1) = v`; always >= 1, and 1 iff v = 0.
    pub lambda: f64,
}

/// Reduce physical parameters to the dimensionless set.
///
/// Fails if the intermediate energy scale `W` or the depth `v` overflows
/// double precision (degenerate widths or amplitudes).
pub fn reduce(p: &PhysicalParams) -> Result<DimensionlessParams> {
    // Re-validate so values constructed literal-style are still checked.
    let p = PhysicalParams::new(p.mass, p.hbar, p.v0, p.length)?;
    let alpha = p.alpha();
    let w = p.energy_scale();
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::numerics(format!(
            "energy scale W = (hbar^2/2m)(pi/L)^2 is not representable (W = {w}) for L = {}",
            p.length
        )));
    }
    let v = p.v0 / w;
    if !v.is_finite() {
        return Err(Error::numerics(format!(
            "dimensionless depth v = V0/W overflows (V0 = {}, W = {w})",
            p.v0
        )));
    }
    let lambda = lambda_of_v(v)?;
    Ok(DimensionlessParams {
        alpha,
        w,
        v,
        lambda,
    })
}

/// Positive branch of `lambda (lambda - 1) = v`:
/// `lambda = (1 + sqrt(1 + 4v)) / 2`, evaluated on the asymptotic branch
/// `sqrt(v) + 1/2` once `v` is large enough that the two agree to machine
/// precision (guards `4v` against overflow in the deep-well limit).
pub fn lambda_of_v(v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::domain(format!("v must be finite and >= 0, got {v}")));
    }
    if v >= LAMBDA_ASYMPTOTIC_V {
        return Ok(v.sqrt() + 0.5);
    }
    Ok(0.5 * (1.0 + (1.0 + 4.0 * v).sqrt()))
}

/// Closed-form width derivative of the spectral exponent:
/// `d lambda / dL = (1/L) * 2v / sqrt(1 + 4v)` (zero for the box case).
pub fn dlambda_dl(p: &PhysicalParams) -> Result<f64> {
    let dim = reduce(p)?;
    let v = dim.v;
    if v >= LAMBDA_ASYMPTOTIC_V {
        // 2v / sqrt(1 + 4v) -> sqrt(v) as v -> infinity.
        return Ok(v.sqrt() / p.length);
    }
    Ok(2.0 * v / (1.0 + 4.0 * v).sqrt() / p.length)
}
