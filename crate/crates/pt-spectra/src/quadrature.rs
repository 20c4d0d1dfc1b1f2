//! Gauss-Legendre quadrature with nodes and weights computed on demand.
//!
//! Nodes are the roots of the Legendre polynomial `P_n`, found by Newton
//! iteration from the Chebyshev-like initial guess; weights follow from the
//! derivative. An order-`n` rule integrates polynomials of degree `2n - 1`
//! exactly, and converges spectrally for the smooth integrands used here.

use crate::error::{Error, Result};

/// A Gauss-Legendre rule on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Evaluate `P_n(x)` and `P_{n-1}(x)` by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0; // P_0
    let mut p = x; // P_1
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

impl GaussLegendre {
    /// Build the order-`n` rule. `n` must be at least 1; orders beyond a few
    /// thousand are rejected as a misuse guard.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 100_000 {
            return Err(Error::invalid(format!(
                "quadrature order must be in 1..=100000, got {n}"
            )));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        // Roots come in +/- pairs; compute the non-negative half and mirror.
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            let mut converged = false;
            for _ in 0..100 {
                let (p, p_prev) = legendre_pair(n, x);
                dp = nf * (x * p - p_prev) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                    // One final polish step keeps the root at full precision.
                    let (p, p_prev) = legendre_pair(n, x);
                    dp = nf * (x * p - p_prev) / (x * x - 1.0);
                    x -= p / dp;
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::numerics(format!(
                    "Legendre root {i} of order {n} did not converge"
                )));
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // cos() of the initial guess decreases with i: store descending
            // from the right end so nodes end up ascending.
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
            nodes[i] = -x;
            weights[i] = w;
        }
        if n % 2 == 1 {
            // The middle node of an odd rule is exactly 0.
            nodes[n / 2] = 0.0;
        }
        Ok(Self { nodes, weights })
    }

    /// Integrate `f` over `[a, b]` by affine transform of the rule.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        half * acc
    }
}
