//! Canonical thermodynamics of one particle in the well.
//!
//! Temperature is measured in energy units (k_B = 1). All sums run over the
//! exact spectrum `E_n = W n^2 + h_omega (n + 1/2)` and are evaluated in
//! shifted form, factoring out the ground state:
//!
//! ```text
//! Z = e^(-beta E_0) sum_n e^(-beta Delta_n),   Delta_n = W n (n + 2 lambda),
//! ```
//!
//! so `ln Z` stays finite even when `beta E_0` alone would underflow `Z`.
//! The sum terminates on a geometric tail bound: past index n the term ratio
//! never exceeds `q_n = exp(-beta W (2n + 1 + 2 lambda))`, so the remainder
//! is below `t_{n+1} / (1 - q_n)`.

use crate::error::{Error, Result};
use crate::params::{dlambda_dl, reduce, PhysicalParams};

/// Hard cap on the number of spectral terms; reaching it means the requested
/// temperature is too hot for the well's level spacing to sum in reasonable
/// time and the caller gets a numerics error instead of a stall.
pub const MAX_TERMS: usize = 20_000_000;

/// Beyond this `beta E_0` the plain partition function underflows f64; the
/// log form is still exact and results carry a `shifted` marker.
pub const SHIFT_THRESHOLD: f64 = 700.0;

/// Partition function in plain and log form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partition {
    /// `ln Z`, always finite.
    pub log_z: f64,
    /// `exp(log_z)`; 0.0 when the exponent underflows (see `shifted`).
    pub z: f64,
    /// True when `beta E_0 > 700`, i.e. `z` itself is not representable and
    /// only `log_z` carries information.
    pub shifted: bool,
    /// Number of spectral terms summed.
    pub terms: usize,
}

/// Full set of canonical observables at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    pub t: f64,
    pub z: f64,
    pub log_z: f64,
    /// Helmholtz free energy `-T ln Z`.
    pub f: f64,
    /// Mean energy `E_0 + <Delta>`.
    pub u: f64,
    /// Heat capacity `beta^2 Var(E)`.
    pub c_v: f64,
    /// Confinement pressure `<-dE_n/dL>`, the force conjugate to the width.
    pub pressure: f64,
    pub shifted: bool,
    pub terms: usize,
}

struct Sums {
    s0: f64,
    s1: f64,
    s2: f64,
    sp: f64,
    terms: usize,
}

fn validate_t_tol(t: f64, tol: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::invalid(format!(
            "temperature must be finite and positive, got {t}"
        )));
    }
    if !tol.is_finite() || tol <= 0.0 || tol > 1e-3 {
        return Err(Error::invalid(format!(
            "relative truncation tolerance must lie in (0, 1e-3], got {tol}"
        )));
    }
    Ok(())
}

/// Accumulate the shifted spectral sums at inverse temperature `beta`.
///
/// `s0..s2` are the plain, energy- and energy-squared-weighted sums over
/// `Delta_n`; `sp` weights by `-dE_n/dL`. Truncation stops once the
/// geometric tail bound, inflated by the `(beta Delta)^2` weight of the
/// heaviest accumulator, drops below `tol` relative to `s0`.
fn thermal_sums(beta: f64, p: &PhysicalParams, tol: f64) -> Result<Sums> {
    let d = reduce(p)?;
    let dldl = dlambda_dl(p)?;
    let two_w_over_l = 2.0 * d.w / p.length;
    let mut s = Sums {
        s0: 0.0,
        s1: 0.0,
        s2: 0.0,
        sp: 0.0,
        terms: 0,
    };
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let delta = d.w * nf * (nf + 2.0 * d.lambda);
        let g = nf * nf + 2.0 * d.lambda * nf + d.lambda;
        let minus_dedl = two_w_over_l * g - d.w * (2.0 * nf + 1.0) * dldl;
        let w = (-beta * delta).exp();
        s.s0 += w;
        s.s1 += delta * w;
        s.s2 += delta * delta * w;
        s.sp += minus_dedl * w;
        s.terms = n + 1;
        // Ratio of consecutive terms never exceeds q from here on.
        let q = (-beta * d.w * (2.0 * nf + 1.0 + 2.0 * d.lambda)).exp();
        if q < 1.0 {
            let next = w * q;
            if next == 0.0 {
                // The next term underflows f64 entirely; nothing left to add.
                return Ok(s);
            }
            let bd = beta * d.w * (nf + 1.0) * (nf + 1.0 + 2.0 * d.lambda);
            let weight = 1.0 + bd * (1.0 + bd);
            if next * weight <= tol * s.s0 * (1.0 - q) {
                return Ok(s);
            }
        }
        n += 1;
        if n >= MAX_TERMS {
            return Err(Error::numerics(format!(
                "thermal sum did not converge within {MAX_TERMS} terms (beta W = {:.3e}); \
                 the spacing is too fine for this temperature",
                beta * d.w
            )));
        }
    }
}

/// Canonical partition function at temperature `t` (k_B = 1), truncated at
/// relative tolerance `tol` in `(0, 1e-3]`.
pub fn partition_function(t: f64, p: &PhysicalParams, tol: f64) -> Result<Partition> {
    validate_t_tol(t, tol)?;
    let beta = 1.0 / t;
    let d = reduce(p)?;
    let e0 = d.w * d.lambda;
    if !(beta * e0).is_finite() {
        return Err(Error::numerics(format!(
            "beta E_0 = {} is not representable",
            beta * e0
        )));
    }
    let s = thermal_sums(beta, p, tol)?;
    let log_z = -beta * e0 + s.s0.ln();
    Ok(Partition {
        log_z,
        z: log_z.exp(),
        shifted: beta * e0 > SHIFT_THRESHOLD,
        terms: s.terms,
    })
}

/// All canonical observables at temperature `t`.
pub fn observables(t: f64, p: &PhysicalParams, tol: f64) -> Result<ThermoState> {
    validate_t_tol(t, tol)?;
    let beta = 1.0 / t;
    let d = reduce(p)?;
    let e0 = d.w * d.lambda;
    if !(beta * e0).is_finite() {
        return Err(Error::numerics(format!(
            "beta E_0 = {} is not representable",
            beta * e0
        )));
    }
    let s = thermal_sums(beta, p, tol)?;
    let mean = s.s1 / s.s0;
    let var = s.s2 / s.s0 - mean * mean;
    let log_z = -beta * e0 + s.s0.ln();
    Ok(ThermoState {
        t,
        z: log_z.exp(),
        log_z,
        f: -t * log_z,
        u: e0 + mean,
        c_v: beta * beta * var.max(0.0),
        pressure: s.sp / s.s0,
        shifted: beta * e0 > SHIFT_THRESHOLD,
        terms: s.terms,
    })
}

/// Confinement pressure `<-dE/dL>` alone.
pub fn pressure(t: f64, p: &PhysicalParams, tol: f64) -> Result<f64> {
    Ok(observables(t, p, tol)?.pressure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{de_dl, energy_level};
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    /// W = 1 configurations: m = 1/2, hbar = 1, L = pi.
    fn unit_w(v0: f64) -> PhysicalParams {
        PhysicalParams::new(0.5, 1.0, v0, PI).unwrap()
    }

    #[test]
    fn box_partition_anchor_at_unit_beta() {
        // v = 0, W = 1, T = 1: Z = sum exp(-(n+1)^2) = 0.3863186024133261,
        // checked against a direct high-precision sum.
        let z = partition_function(1.0, &unit_w(0.0), TOL).unwrap();
        assert!((z.z - 0.3863186024133261).abs() < 5e-15, "{}", z.z);
        assert!(!z.shifted);
        assert!(z.terms < 20);
    }

    #[test]
    fn box_partition_matches_integral_asymptote() {
        // At beta W = 1e-4 the sum is dense enough for the Euler-Maclaurin
        // value sqrt(pi/(4 beta)) - 1/2 to hold to ~1e-9; the frozen value
        // below is the direct sum itself.
        let z = partition_function(1e4, &unit_w(0.0), TOL).unwrap();
        assert!(rel_err(z.z, 88.12269254527578) < 1e-13, "{}", z.z);
        let em = (PI / (4.0 * 1e-4)).sqrt() - 0.5;
        assert!(rel_err(z.z, em) < 1e-8);
    }

    #[test]
    fn rejects_bad_temperature_and_tolerance() {
        let p = unit_w(1.0);
        for t in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                partition_function(t, &p, TOL),
                Err(Error::InvalidInput(_))
            ));
        }
        for tol in [0.0, -1e-9, 2e-3, f64::NAN] {
            assert!(matches!(
                partition_function(1.0, &p, tol),
                Err(Error::InvalidInput(_))
            ));
            assert!(matches!(
                observables(1.0, &p, tol),
                Err(Error::InvalidInput(_))
            ));
        }
    }

    #[test]
    fn two_level_regime_matches_closed_form() {
        // v = 2 (lambda = 2): Delta_1 = 5, Delta_2 = 12. At beta = 3 the
        // third level contributes ~e^-36, so the two-level formulas hold to
        // ~2e-9 relative.
        let p = unit_w(2.0);
        let t = 1.0 / 3.0;
        let st = observables(t, &p, TOL).unwrap();
        let beta = 3.0;
        let x = (-beta * 5.0f64).exp();
        let u2 = 2.0 + 5.0 * x / (1.0 + x);
        let c2 = beta * beta * 25.0 * x / ((1.0 + x) * (1.0 + x));
        assert!(rel_err(st.u, u2) < 1e-8, "U {} vs {u2}", st.u);
        assert!(rel_err(st.c_v, c2) < 1e-8, "C_V {} vs {c2}", st.c_v);
    }

    #[test]
    fn ground_state_limit_at_low_temperature() {
        let p = unit_w(2.0);
        let e0 = energy_level(0, &p).unwrap().e;
        let st = observables(0.01, &p, TOL).unwrap();
        assert!(rel_err(st.u, e0) < 1e-15, "U {} vs {e0}", st.u);
        assert!(st.c_v.abs() < 1e-100);
        // Pressure collapses onto the ground-state force.
        assert!(rel_err(st.pressure, -de_dl(0, &p).unwrap()) < 1e-13);
        assert!(!st.shifted);
    }

    #[test]
    fn shifted_regime_keeps_log_quantities_exact() {
        // beta E_0 = 2000: z underflows, log_z and F do not.
        let p = unit_w(2.0); // E_0 = 2
        let st = observables(1e-3, &p, TOL).unwrap();
        assert!(st.shifted);
        assert_eq!(st.z, 0.0);
        assert!((st.log_z + 2000.0).abs() < 1e-9);
        assert!(rel_err(st.f, 2.0) < 1e-12); // F -> E_0
        assert!(rel_err(st.u, 2.0) < 1e-15);
        let z = partition_function(1e-3, &p, TOL).unwrap();
        assert!(z.shifted);
        assert_eq!(z.log_z, st.log_z);
    }

    #[test]
    fn heat_capacity_matches_energy_derivative() {
        let p = unit_w(2.0);
        for t in [0.8, 2.0, 5.0] {
            let h = 1e-4 * t;
            let up = observables(t + h, &p, TOL).unwrap().u;
            let um = observables(t - h, &p, TOL).unwrap().u;
            let fd = (up - um) / (2.0 * h);
            let cv = observables(t, &p, TOL).unwrap().c_v;
            assert!(rel_err(cv, fd) < 1e-4, "T={t}: C_V {cv} vs dU/dT {fd}");
        }
    }

    #[test]
    fn mean_energy_matches_log_z_derivative() {
        // U = -d ln Z / d beta, checked by central difference in beta.
        let p = unit_w(2.0);
        let t = 1.5;
        let beta = 1.0 / t;
        let h = 1e-5 * beta;
        let lp = partition_function(1.0 / (beta + h), &p, TOL).unwrap().log_z;
        let lm = partition_function(1.0 / (beta - h), &p, TOL).unwrap().log_z;
        let fd = -(lp - lm) / (2.0 * h);
        let u = observables(t, &p, TOL).unwrap().u;
        assert!(rel_err(u, fd) < 1e-5, "U {u} vs -d lnZ/d beta {fd}");
    }

    #[test]
    fn pressure_matches_free_energy_derivative() {
        // P = -dF/dL by central difference over the width.
        let base = PhysicalParams::new(1.0, 1.0, 3.0, 2.0).unwrap();
        for t in [0.5, 3.0, 20.0] {
            let h = 1e-5;
            let fp = observables(
                t,
                &PhysicalParams::new(1.0, 1.0, 3.0, 2.0 + h).unwrap(),
                TOL,
            )
            .unwrap()
            .f;
            let fm = observables(
                t,
                &PhysicalParams::new(1.0, 1.0, 3.0, 2.0 - h).unwrap(),
                TOL,
            )
            .unwrap()
            .f;
            let fd = -(fp - fm) / (2.0 * h);
            let pr = pressure(t, &base, TOL).unwrap();
            assert!(rel_err(pr, fd) < 1e-6, "T={t}: P {pr} vs -dF/dL {fd}");
            assert!(pr > 0.0);
        }
    }

    #[test]
    fn free_well_approaches_classical_gas() {
        // V0 = 0, beta W ~ 5e-5: P L / T -> 1, U -> T/2, C_V -> 1/2.
        let p = PhysicalParams::natural(0.0, 1.0).unwrap();
        let t = 1e5;
        let st = observables(t, &p, TOL).unwrap();
        assert!(
            (st.pressure * p.length / t - 1.0).abs() < 0.01,
            "PL/T = {}",
            st.pressure * p.length / t
        );
        assert!((st.u / (0.5 * t) - 1.0).abs() < 0.01, "U = {}", st.u);
        assert!((st.c_v - 0.5).abs() < 0.01, "C_V = {}", st.c_v);
    }

    #[test]
    fn widening_the_free_well_grows_z() {
        let t = 10.0;
        let mut prev = 0.0;
        for l in [0.5, 1.0, 2.0, 4.0] {
            let p = PhysicalParams::natural(0.0, l).unwrap();
            let z = partition_function(t, &p, TOL).unwrap().z;
            assert!(z > prev, "L={l}: {z} <= {prev}");
            prev = z;
        }
    }

    #[test]
    fn pressure_sum_uses_level_derivatives() {
        // The inlined per-term derivative must agree with the spectrum module.
        let p = unit_w(2.0);
        let d = reduce(&p).unwrap();
        let dldl = dlambda_dl(&p).unwrap();
        for n in 0..12u32 {
            let nf = n as f64;
            let g = nf * nf + 2.0 * d.lambda * nf + d.lambda;
            let inline = 2.0 * d.w / p.length * g - d.w * (2.0 * nf + 1.0) * dldl;
            let reference = -de_dl(n, &p).unwrap();
            assert!(rel_err(inline, reference) < 1e-14, "n={n}");
        }
    }

    #[test]
    fn hot_dense_sum_hits_term_cap() {
        // beta W ~ 5e-17 would need ~1e9 terms; the cap turns it into an error.
        let p = PhysicalParams::natural(0.0, 1.0).unwrap();
        let err = partition_function(1e17, &p, TOL).unwrap_err();
        assert!(matches!(err, Error::Numerics(_)), "{err:?}");
    }
}
