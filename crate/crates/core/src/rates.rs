//! Convergence-rate predictions for the finite-p dynamics.

use crate::error::{Error, Result};
use serde::Serialize;

/// Consensus-time exponent: max(2p/(p-1), 3). The two branches cross at p = 3.
pub fn beta_p(p: f64) -> f64 {
    (2.0 * p / (p - 1.0)).max(3.0)
}

/// Edge-density speedup exponent: 1/(p-1) for p <= 2, max((3-p)/(p-1), 0)
/// for p >= 2; the branches agree at p = 2.
pub fn theta_p(p: f64) -> f64 {
    if p <= 2.0 {
        1.0 / (p - 1.0)
    } else {
        ((3.0 - p) / (p - 1.0)).max(0.0)
    }
}

/// The per-step expected relative energy-drop scale
/// F(n, p, D) = n^{-beta_p} (D/n)^{-theta_p}.
pub fn rate_function(n: usize, p: f64, d_avg: f64) -> f64 {
    let n = n as f64;
    n.powf(-beta_p(p)) * (d_avg / n).powf(-theta_p(p))
}

/// The constant in front of F: p 2^{-2/(p-1)} for p <= 2, p/(80(p-1)) for
/// p > 2 (which stays >= 1/80).
pub fn energy_drop_constant(p: f64) -> f64 {
    if p <= 2.0 {
        p * 2f64.powf(-2.0 / (p - 1.0))
    } else {
        p / (80.0 * (p - 1.0))
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RatePrediction {
    pub beta: f64,
    pub theta: f64,
    /// F(n, p, D).
    pub f: f64,
    /// c_p.
    pub c: f64,
}

/// Rate prediction for finite p > 1. The p = infinity dynamics are governed
/// by diameter bounds instead; see [`infinity_consensus_bound`].
pub fn predict(n: usize, p: f64, d_avg: f64) -> Result<RatePrediction> {
    if !p.is_finite() || !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if n < 2 || !(d_avg > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "prediction needs n >= 2 and D > 0, got n={n} D={d_avg}"
        )));
    }
    Ok(RatePrediction {
        beta: beta_p(p),
        theta: theta_p(p),
        f: rate_function(n, p, d_avg),
        c: energy_drop_constant(p),
    })
}

/// Expected-consensus-time ceiling for the midrange dynamics under uniform
/// random updates: n (log n + 1) (diam + 1)^2 log(2/eps).
pub fn infinity_consensus_bound(n: usize, diam: usize, eps: f64) -> f64 {
    let n = n as f64;
    let d = diam as f64;
    n * (n.ln() + 1.0) * (d + 1.0) * (d + 1.0) * (2.0 / eps).ln()
}

/// The sharper round-robin ceiling: n (diam + 1)^2 log(2/eps).
pub fn infinity_consensus_bound_round_robin(n: usize, diam: usize, eps: f64) -> f64 {
    let n = n as f64;
    let d = diam as f64;
    n * (d + 1.0) * (d + 1.0) * (2.0 / eps).ln()
}
