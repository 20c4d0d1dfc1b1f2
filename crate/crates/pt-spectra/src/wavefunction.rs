//! Bound-state eigenfunctions in reduced coordinates.
//!
//! On `xi = alpha x` in `(-pi/2, pi/2)` the n-th eigenfunction is
//!
//! ```text
//! psi_n(xi) = C_n (cos xi)^lambda G_n(sin xi),
//! ```
//!
//! where `G_n` is the ultraspherical (Gegenbauer) polynomial with parameter
//! `lambda`, evaluated by its three-term recurrence, and `C_n` normalizes
//! `integral psi^2 dxi = 1`. At `lambda = 1` the product collapses to the
//! hard-wall sine ladder; growing `lambda` squeezes the envelope into a
//! Gaussian-like core.

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use std::f64::consts::FRAC_PI_2;

/// Ultraspherical polynomial `G_n^(lambda)(t)` by the three-term recurrence
/// `n G_n = 2 (n + lambda - 1) t G_{n-1} - (n + 2 lambda - 2) G_{n-2}` with
/// `G_0 = 1`, `G_1 = 2 lambda t`. Requires `lambda > 0` and `|t| <= 1`.
pub fn gegenbauer(n: u32, lambda: f64, t: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::domain(format!(
            "Gegenbauer parameter must be positive and finite, got {lambda}"
        )));
    }
    if !t.is_finite() || t.abs() > 1.0 {
        return Err(Error::domain(format!(
            "Gegenbauer argument must lie in [-1, 1], got {t}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0; // G_0
    let mut cur = 2.0 * lambda * t; // G_1
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda - 1.0) * t * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    if !cur.is_finite() {
        return Err(Error::numerics(format!(
            "Gegenbauer recurrence overflowed at n = {n}, lambda = {lambda}, t = {t}"
        )));
    }
    Ok(cur)
}

/// Unnormalized eigenfunction `(cos xi)^lambda G_n(sin xi)`.
///
/// The envelope is evaluated as `exp(lambda ln cos xi)` for interior points
/// and pinned to exactly 0 at `|xi| = pi/2`, where every bound state
/// vanishes. Outside the closed interval the state is undefined.
pub fn psi_raw(n: u32, lambda: f64, xi: f64) -> Result<f64> {
    if !xi.is_finite() || xi.abs() > FRAC_PI_2 {
        return Err(Error::domain(format!(
            "xi = {xi} lies outside the well [-pi/2, pi/2]"
        )));
    }
    if xi.abs() == FRAC_PI_2 {
        // Still validate the parameters so the domain contract is uniform.
        gegenbauer(n, lambda, 1.0)?;
        return Ok(0.0);
    }
    let envelope = (lambda * xi.cos().ln()).exp();
    Ok(envelope * gegenbauer(n, lambda, xi.sin())?)
}

fn norm_integral(n: u32, lambda: f64, order: usize) -> Result<f64> {
    let rule = GaussLegendre::new(order)?;
    let mut failed = false;
    let val = rule.integrate(-FRAC_PI_2, FRAC_PI_2, |xi| match psi_raw(n, lambda, xi) {
        Ok(p) => p * p,
        Err(_) => {
            failed = true;
            f64::NAN
        }
    });
    if failed || !val.is_finite() || val <= 0.0 {
        return Err(Error::numerics(format!(
            "norm integral failed for n = {n}, lambda = {lambda} at quadrature order {order}"
        )));
    }
    Ok(val)
}

/// Normalization constant `C_n` such that `integral (C_n psi_raw)^2 dxi = 1`.
///
/// The square norm is integrated by Gauss-Legendre quadrature at order 128,
/// escalating to 256 and 512 until two consecutive orders agree to 1e-10
/// relative; if even 256 vs 512 disagree by more than 1e-8 the state is
/// declared numerically unresolvable.
pub fn normalization_constant(n: u32, lambda: f64) -> Result<f64> {
    let mut prev = norm_integral(n, lambda, 128)?;
    for order in [256usize, 512] {
        let cur = norm_integral(n, lambda, order)?;
        let rel = (cur - prev).abs() / cur.abs();
        if rel <= 1e-10 {
            return Ok(1.0 / cur.sqrt());
        }
        if order == 512 {
            if rel <= 1e-8 {
                return Ok(1.0 / cur.sqrt());
            }
            return Err(Error::numerics(format!(
                "norm quadrature for n = {n}, lambda = {lambda} still moving at order 512 (rel change {rel:.3e})"
            )));
        }
        prev = cur;
    }
    unreachable!("escalation loop always returns at order 512");
}

/// Count the interior sign changes of `psi_raw(n, lambda, .)`.
///
/// Counted on a uniform interior grid of 4096 points, re-counted on grids 4x
/// and 16x finer; the count is accepted once two consecutive grids agree.
/// A bound state of quantum number `n` has exactly `n` nodes.
pub fn count_nodes(n: u32, lambda: f64) -> Result<u32> {
    let count_on = |m: usize| -> Result<u32> {
        let step = std::f64::consts::PI / (m as f64 + 1.0);
        let mut sign = 0i8;
        let mut flips = 0u32;
        for i in 1..=m {
            let xi = -FRAC_PI_2 + step * i as f64;
            let val = psi_raw(n, lambda, xi)?;
            if val == 0.0 {
                continue;
            }
            let s = if val > 0.0 { 1 } else { -1 };
            if sign != 0 && s != sign {
                flips += 1;
            }
            sign = s;
        }
        Ok(flips)
    };
    let mut m = 4096usize;
    let mut prev = count_on(m)?;
    for _ in 0..2 {
        m *= 4;
        let cur = count_on(m)?;
        if cur == prev {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::numerics(format!(
        "node count for n = {n}, lambda = {lambda} did not stabilize by a {m}-point grid"
    )))
}

/// A normalized eigenfunction in reduced coordinates.
#[derive(Debug, Clone, Copy)]
pub struct Eigenfunction {
    pub n: u32,
    pub lambda: f64,
    /// Normalization constant multiplying the raw product form.
    pub norm: f64,
}

impl Eigenfunction {
    pub fn new(n: u32, lambda: f64) -> Result<Self> {
        let norm = normalization_constant(n, lambda)?;
        Ok(Self { n, lambda, norm })
    }

    /// Normalized value at reduced coordinate `xi`.
    pub fn eval(&self, xi: f64) -> Result<f64> {
        Ok(self.norm * psi_raw(self.n, self.lambda, xi)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn gegenbauer_low_orders_match_closed_forms() {
        for &(lambda, t) in &[(1.0, 0.3), (2.0, -0.7), (3.7, 0.95), (0.5, 0.0)] {
            let g0 = gegenbauer(0, lambda, t).unwrap();
            let g1 = gegenbauer(1, lambda, t).unwrap();
            let g2 = gegenbauer(2, lambda, t).unwrap();
            let g3 = gegenbauer(3, lambda, t).unwrap();
            assert_eq!(g0, 1.0);
            assert_eq!(g1, 2.0 * lambda * t);
            let want2 = 2.0 * lambda * (lambda + 1.0) * t * t - lambda;
            assert!(
                (g2 - want2).abs() < 1e-13 * (1.0 + want2.abs()),
                "{lambda} {t}"
            );
            let want3 = (4.0 / 3.0) * lambda * (lambda + 1.0) * (lambda + 2.0) * t.powi(3)
                - 2.0 * lambda * (lambda + 1.0) * t;
            assert!(
                (g3 - want3).abs() < 1e-13 * (1.0 + want3.abs()),
                "{lambda} {t}"
            );
        }
    }

    #[test]
    fn gegenbauer_rejects_bad_parameters() {
        assert!(matches!(gegenbauer(2, 0.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(gegenbauer(2, -1.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(gegenbauer(2, 1.0, 1.5), Err(Error::Domain(_))));
        assert!(matches!(
            gegenbauer(2, 1.0, f64::NAN),
            Err(Error::Domain(_))
        ));
        assert!(gegenbauer(2, 1.0, 1.0).is_ok());
        assert!(gegenbauer(2, 1.0, -1.0).is_ok());
    }

    #[test]
    fn lambda_one_collapses_to_box_sines() {
        // At lambda = 1, psi_raw(n, xi) = sin((n+1)(pi/2 - xi)) exactly.
        for n in 0..9u32 {
            for i in 0..40 {
                let xi = -1.5 + 3.0 * i as f64 / 39.0;
                let got = psi_raw(n, 1.0, xi).unwrap();
                let want = ((n as f64 + 1.0) * (FRAC_PI_2 - xi)).sin();
                assert!((got - want).abs() < 1e-12, "n={n} xi={xi}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn psi_vanishes_at_walls_and_rejects_outside() {
        assert_eq!(psi_raw(3, 2.0, FRAC_PI_2).unwrap(), 0.0);
        assert_eq!(psi_raw(3, 2.0, -FRAC_PI_2).unwrap(), 0.0);
        assert!(matches!(psi_raw(3, 2.0, 1.6), Err(Error::Domain(_))));
        assert!(matches!(psi_raw(3, 2.0, f64::NAN), Err(Error::Domain(_))));
        // Wall evaluation still validates lambda.
        assert!(matches!(psi_raw(3, -2.0, FRAC_PI_2), Err(Error::Domain(_))));
    }

    #[test]
    fn parity_alternates_with_n() {
        for lambda in [1.0, 2.0, 3.7] {
            for n in 0..8u32 {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                for i in 1..25 {
                    let xi = 1.5 * i as f64 / 25.0;
                    let plus = psi_raw(n, lambda, xi).unwrap();
                    let minus = psi_raw(n, lambda, -xi).unwrap();
                    assert!(
                        (minus - sign * plus).abs() <= 1e-12 * plus.abs().max(1.0),
                        "n={n} lambda={lambda} xi={xi}"
                    );
                }
            }
        }
    }

    #[test]
    fn normalization_against_closed_forms() {
        // lambda = 1: every C_n is sqrt(2/pi) (sine ladder).
        let c = (2.0 / PI).sqrt();
        for n in 0..6u32 {
            let got = normalization_constant(n, 1.0).unwrap();
            assert!((got - c).abs() < 1e-12, "n={n}: {got}");
        }
        // lambda = 2: square norm is (pi/8)(n+1)(n+3), so
        // C_n = sqrt(8 / (pi (n+1)(n+3))).
        for n in 0..6u32 {
            let nf = n as f64;
            let want = (8.0 / (PI * (nf + 1.0) * (nf + 3.0))).sqrt();
            let got = normalization_constant(n, 2.0).unwrap();
            assert!((got - want).abs() < 1e-12 * want, "n={n}: {got} vs {want}");
        }
        // Spot anchors.
        assert!((normalization_constant(0, 1.0).unwrap() - 0.7978845608028654).abs() < 1e-13);
        assert!((normalization_constant(0, 2.0).unwrap() - 0.9213177319235614).abs() < 1e-13);
    }

    #[test]
    fn orthonormality_by_quadrature() {
        let rule = GaussLegendre::new(512).unwrap();
        for lambda in [1.0, 2.0, 3.7] {
            let states: Vec<Eigenfunction> = (0..=8u32)
                .map(|n| Eigenfunction::new(n, lambda).unwrap())
                .collect();
            for (i, a) in states.iter().enumerate() {
                for b in &states[i..] {
                    let overlap = rule.integrate(-FRAC_PI_2, FRAC_PI_2, |xi| {
                        a.eval(xi).unwrap() * b.eval(xi).unwrap()
                    });
                    let want = if a.n == b.n { 1.0 } else { 0.0 };
                    assert!(
                        (overlap - want).abs() < 1e-8,
                        "lambda={lambda} <{},{}> = {overlap}",
                        a.n,
                        b.n
                    );
                }
            }
        }
    }

    #[test]
    fn node_counts_match_quantum_number() {
        for lambda in [1.0, 1.5, 2.0, 3.7, 12.0] {
            for n in 0..10u32 {
                assert_eq!(count_nodes(n, lambda).unwrap(), n, "lambda={lambda}");
            }
        }
    }

    #[test]
    fn schrodinger_residual_is_small() {
        // -psi'' + lambda(lambda-1)/cos^2 xi psi = (n+lambda)^2 psi, checked
        // with a second central difference at h = 5e-5 over |xi| <= 1.4.
        let h = 5e-5;
        for lambda in [1.0, 2.0, 3.0] {
            let v = lambda * (lambda - 1.0);
            for n in [0u32, 1, 4, 8] {
                let ef = Eigenfunction::new(n, lambda).unwrap();
                let eps = (n as f64 + lambda).powi(2);
                let mut max_res = 0.0f64;
                let mut max_psi = 0.0f64;
                for i in 0..=112 {
                    let xi = -1.4 + 2.8 * i as f64 / 112.0;
                    let pm = ef.eval(xi - h).unwrap();
                    let p0 = ef.eval(xi).unwrap();
                    let pp = ef.eval(xi + h).unwrap();
                    let second = (pp - 2.0 * p0 + pm) / (h * h);
                    let res = -second + (v / xi.cos().powi(2) - eps) * p0;
                    max_res = max_res.max(res.abs());
                    max_psi = max_psi.max(p0.abs());
                }
                assert!(
                    max_res / (eps * max_psi) < 1e-4,
                    "n={n} lambda={lambda}: {}",
                    max_res / (eps * max_psi)
                );
            }
        }
    }

    #[test]
    fn eigenfunction_eval_scales_raw() {
        let ef = Eigenfunction::new(2, 2.0).unwrap();
        let xi = 0.37;
        let want = ef.norm * psi_raw(2, 2.0, xi).unwrap();
        assert_eq!(ef.eval(xi).unwrap(), want);
    }

    proptest! {
        // Recurrence consistency: the three-term relation holds at random points.
        #[test]
        fn recurrence_holds(n in 2u32..40, lambda in 0.2f64..20.0, t in -1.0f64..1.0) {
            let gn = gegenbauer(n, lambda, t).unwrap();
            let g1 = gegenbauer(n - 1, lambda, t).unwrap();
            let g2 = gegenbauer(n - 2, lambda, t).unwrap();
            let nf = n as f64;
            let rhs = (2.0 * (nf + lambda - 1.0) * t * g1 - (nf + 2.0 * lambda - 2.0) * g2) / nf;
            let scale = gn.abs().max(g1.abs()).max(g2.abs()).max(1.0);
            prop_assert!((gn - rhs).abs() <= 1e-11 * scale);
        }

        // Even about the center for even n in the raw form.
        #[test]
        fn raw_parity(n in 0u32..12, lambda_idx in 0usize..3, xi in 0.0f64..1.5) {
            let lambda = [1.0, 2.5, 7.0][lambda_idx];
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let plus = psi_raw(n, lambda, xi).unwrap();
            let minus = psi_raw(n, lambda, -xi).unwrap();
            prop_assert!((minus - sign * plus).abs() <= 1e-12 * plus.abs().max(1.0));
        }
    }
}
