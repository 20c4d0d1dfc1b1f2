//! Independent finite-difference eigenvalue solver.
//!
//! The reduced Hamiltonian `-d^2/dxi^2 + v / cos^2 xi` is discretized on a
//! uniform interior grid of the well by the standard three-point stencil,
//! giving a symmetric tridiagonal matrix. Its lowest eigenvalues are located
//! by Sturm-sequence bisection -- no factorization, no iteration on vectors,
//! nothing shared with the closed-form spectrum -- and then Richardson
//! extrapolation over a grid doubling cancels the leading `h^2` error.
//!
//! This solver exists to certify the analytic levels; it must stay
//! structurally independent of them.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

/// Diagonal entries above this magnitude are clamped and flagged: the wall
/// divergence of the potential exceeds what bisection needs to resolve.
pub const DIAG_CLAMP: f64 = 1e300;

/// Interior-grid description: `n` points at spacing `h = pi / (n + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n: usize,
}

impl GridSpec {
    /// At least 16 points (anything less cannot bracket even the ground
    /// state usefully); at most 2^22 as a memory guard.
    pub fn new(n: usize) -> Result<Self> {
        if !(16..=(1 << 22)).contains(&n) {
            return Err(Error::invalid(format!(
                "grid size must be in 16..=4194304, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn spacing(&self) -> f64 {
        PI / (self.n as f64 + 1.0)
    }

    /// The i-th interior point, `i` in `0..n`.
    pub fn point(&self, i: usize) -> f64 {
        -FRAC_PI_2 + self.spacing() * (i as f64 + 1.0)
    }
}

/// Symmetric tridiagonal discretization of the reduced Hamiltonian.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    /// Diagonal `2/h^2 + v/cos^2 xi_i`, clamped at [`DIAG_CLAMP`].
    pub diag: Vec<f64>,
    /// Off-diagonal `-1/h^2`, `diag.len() - 1` entries.
    pub off: Vec<f64>,
    /// True if any diagonal entry hit the clamp.
    pub clamped: bool,
}

/// Assemble the stencil matrix for well strength `v >= 0`.
pub fn assemble(grid: &GridSpec, v: f64) -> Result<Tridiagonal> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::invalid(format!(
            "well strength v must be finite and non-negative, got {v}"
        )));
    }
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let mut clamped = false;
    let mut diag = Vec::with_capacity(grid.n);
    for i in 0..grid.n {
        let c = grid.point(i).cos();
        let mut d = 2.0 * inv_h2 + v / (c * c);
        if d.is_nan() || d > DIAG_CLAMP {
            d = DIAG_CLAMP;
            clamped = true;
        }
        diag.push(d);
    }
    let off = vec![-inv_h2; grid.n - 1];
    Ok(Tridiagonal { diag, off, clamped })
}

/// Number of eigenvalues strictly below `x`, by the Sturm sequence of the
/// shifted LDL^T pivots. Zero pivots are nudged to a tiny negative value so
/// an eigenvalue exactly at `x` counts as below it; the count is then
/// non-decreasing in `x`, which is all bisection needs.
pub fn sturm_count(t: &Tridiagonal, x: f64) -> usize {
    let mut count = 0usize;
    let mut q = t.diag[0] - x;
    if q == 0.0 {
        q = -f64::MIN_POSITIVE;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..t.diag.len() {
        let e = t.off[i - 1];
        q = t.diag[i] - x - e * e / q;
        if q == 0.0 {
            q = -f64::MIN_POSITIVE;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// A bisection-certified eigenvalue: midpoint of the final bracket plus its
/// half-width, which bounds the distance to the true matrix eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenInterval {
    pub value: f64,
    pub half_width: f64,
}

fn gershgorin(t: &Tridiagonal) -> (f64, f64) {
    let n = t.diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += t.off[i - 1].abs();
        }
        if i < n - 1 {
            r += t.off[i].abs();
        }
        lo = lo.min(t.diag[i] - r);
        hi = hi.max(t.diag[i] + r);
    }
    (lo, hi)
}

fn bracket_tol(mid: f64) -> f64 {
    1e-12 * mid.abs() + 1e-12
}

/// Locate the `k` lowest eigenvalues by bisection on the Sturm count.
///
/// `k` is capped at a quarter of the grid size: higher discrete eigenvalues
/// exist but no longer approximate the continuum problem well enough to be
/// worth certifying.
pub fn lowest_eigenvalues(t: &Tridiagonal, k: usize) -> Result<Vec<EigenInterval>> {
    let n = t.diag.len();
    if k == 0 || k > n / 4 {
        return Err(Error::invalid(format!(
            "requested {k} eigenvalues from an n = {n} grid; valid range is 1..={}",
            n / 4
        )));
    }
    let (glo, ghi) = gershgorin(t);
    let mut out = Vec::with_capacity(k);
    let mut floor = glo;
    for j in 0..k {
        // Eigenvalues are sought in ascending order, so the lower edge of the
        // previous bracket is a valid floor for this one.
        let mut lo = floor;
        let mut hi = ghi;
        let mut iters = 0usize;
        while hi - lo > bracket_tol(0.5 * (lo + hi)) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break; // float resolution exhausted
            }
            if sturm_count(t, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
            iters += 1;
            if iters > 1200 {
                return Err(Error::numerics(format!(
                    "bisection for eigenvalue {j} failed to close its bracket (width {})",
                    hi - lo
                )));
            }
        }
        out.push(EigenInterval {
            value: 0.5 * (lo + hi),
            half_width: 0.5 * (hi - lo),
        });
        floor = lo;
    }
    Ok(out)
}

/// One level solved on a grid pair with Richardson extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedEigenvalue {
    /// Eigenvalue on the coarse grid of `n1` points.
    pub coarse: f64,
    /// Eigenvalue on the doubled grid of `2 n1` points.
    pub fine: f64,
    /// `(4 fine - coarse) / 3`, cancelling the leading `h^2` error.
    pub refined: f64,
    /// Larger of the two bracket half-widths.
    pub half_width: f64,
}

/// Solve for the `k` lowest levels on grids of `n1` and `2 n1` points and
/// Richardson-extrapolate the pair.
pub fn refined_eigenvalues(v: f64, k: usize, n1: usize) -> Result<Vec<RefinedEigenvalue>> {
    let coarse_grid = GridSpec::new(n1)?;
    let fine_grid = GridSpec::new(2 * n1)?;
    let coarse = lowest_eigenvalues(&assemble(&coarse_grid, v)?, k)?;
    let fine = lowest_eigenvalues(&assemble(&fine_grid, v)?, k)?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| RefinedEigenvalue {
            coarse: c.value,
            fine: f.value,
            refined: (4.0 * f.value - c.value) / 3.0,
            half_width: c.half_width.max(f.half_width),
        })
        .collect())
}
