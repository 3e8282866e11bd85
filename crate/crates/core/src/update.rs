//! Single-vertex update kernels.
//!
//! For finite p the selected vertex moves to the unique minimizer of
//! `sum_{w ~ v} |y - f(w)|^p`; for p = infinity it moves to the midrange
//! `(max + min)/2` of the neighbouring values. The finite-p minimizer is
//! located by bisection on the strictly increasing derivative, which is safe
//! for every p > 1 (including 1 < p < 2, where the second derivative blows
//! up at the neighbour values and Newton steps are not).

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::Profile;
use serde::Serialize;

/// The exponent of the dynamics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum PValue {
    Finite(f64),
    Infinity,
}

/// Strict convexity needs p bounded away from 1.
const MIN_EXPONENT: f64 = 1.0 + 1e-6;

impl PValue {
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p < MIN_EXPONENT {
            return Err(Error::InvalidExponent(p));
        }
        Ok(PValue::Finite(p))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PValue::Infinity)
    }

    /// Parses `inf` or a finite exponent.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(PValue::Infinity),
            t => PValue::finite(t.parse().map_err(|_| {
                Error::InvalidParameter(format!("cannot parse exponent `{t}`"))
            })?),
        }
    }
}

impl std::fmt::Display for PValue {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PValue::Finite(p) => write!(fm, "{p}"),
            PValue::Infinity => write!(fm, "inf"),
        }
    }
}

/// Root-finder settings. The tolerance is absolute on the value axis,
/// relative to the neighbour value range.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolverConfig {
    pub range_tol: f64,
    pub tol_floor: f64,
    pub max_iter: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            range_tol: 1e-13,
            tol_floor: 1e-15,
            max_iter: 200,
        }
    }
}

/// |x|^e computed as exp(e·ln|x|), with 0 mapped to 0.
fn pow_abs(x: f64, e: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (e * x.abs().ln()).exp()
    }
}

/// Derivative of the local energy `y -> sum |y - f(w)|^p` at `y`, including
/// the factor p. Strictly increasing in `y`.
pub fn psi_derivative(g: &Graph, f: &Profile, v: usize, y: f64, p: f64) -> f64 {
    p * g
        .neighbors(v)
        .iter()
        .map(|&w| {
            let d = y - f[w];
            pow_abs(d, p - 1.0) * if d > 0.0 { 1.0 } else if d < 0.0 { -1.0 } else { 0.0 }
        })
        .sum::<f64>()
}

/// A profile is p-superharmonic at `v` when an update there would not raise
/// the value, i.e. the local energy derivative at f(v) is non-negative.
pub fn is_p_superharmonic_at(g: &Graph, f: &Profile, v: usize, p: f64, tol: f64) -> bool {
    psi_derivative(g, f, v, f[v], p) >= -tol
}

pub fn is_p_subharmonic_at(g: &Graph, f: &Profile, v: usize, p: f64, tol: f64) -> bool {
    psi_derivative(g, f, v, f[v], p) <= tol
}

/// The midrange defect `f(v+) + f(v-) - 2 f(v)` over the neighbours of `v`.
pub fn infinity_laplacian(g: &Graph, f: &Profile, v: usize) -> Result<f64> {
    let nbrs = g.neighbors(v);
    if nbrs.is_empty() {
        return Err(Error::IsolatedVertex(v));
    }
    let (lo, hi) = neighbor_range(f, nbrs);
    Ok(hi + lo - 2.0 * f[v])
}

/// Sum of |midrange defect| over interior vertices.
pub fn infinity_laplacian_l1(g: &Graph, f: &Profile) -> f64 {
    g.interior()
        .iter()
        .map(|&v| infinity_laplacian(g, f, v).map(f64::abs).unwrap_or(0.0))
        .sum()
}

fn neighbor_range(f: &Profile, nbrs: &[usize]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &w in nbrs {
        let x = f[w];
        if x < lo {
            lo = x;
        }
        if x > hi {
            hi = x;
        }
    }
    (lo, hi)
}

/// The value the dynamics assign to `v`, leaving the profile untouched.
///
/// Exact shortcuts: all neighbours equal returns that value; degree <= 2
/// returns the midpoint of the extreme neighbour values for every p
/// (including infinity), which makes trajectories on cycles and segments
/// bit-identical across exponents; p = 2 returns the arithmetic mean. The
/// result is always clamped into the neighbour value range.
pub fn update_value(
    g: &Graph,
    f: &Profile,
    v: usize,
    p: PValue,
    cfg: &SolverConfig,
) -> Result<f64> {
    let nbrs = g.neighbors(v);
    if nbrs.is_empty() {
        return Err(Error::IsolatedVertex(v));
    }
    for &w in nbrs {
        if !f[w].is_finite() {
            return Err(Error::NonFinite(format!("neighbour value at vertex {w}")));
        }
    }
    let (lo, hi) = neighbor_range(f, nbrs);
    if lo == hi {
        return Ok(lo);
    }
    if nbrs.len() <= 2 || p.is_infinite() {
        return Ok(0.5 * (lo + hi));
    }
    let p = match p {
        PValue::Finite(p) => p,
        PValue::Infinity => unreachable!(),
    };
    if p == 2.0 {
        let mean = nbrs.iter().map(|&w| f[w]).sum::<f64>() / nbrs.len() as f64;
        return Ok(mean.clamp(lo, hi));
    }

    // Bisection on the sign of the energy derivative over [lo, hi].
    let tol = (cfg.range_tol * (hi - lo)).max(cfg.tol_floor);
    let slope = |y: f64| -> f64 {
        nbrs.iter()
            .map(|&w| {
                let d = y - f[w];
                pow_abs(d, p - 1.0) * if d > 0.0 { 1.0 } else if d < 0.0 { -1.0 } else { 0.0 }
            })
            .sum()
    };
    let (mut a, mut b) = (lo, hi);
    for _ in 0..cfg.max_iter {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let s = slope(mid);
        if s > 0.0 {
            b = mid;
        } else if s < 0.0 {
            a = mid;
        } else {
            return Ok(mid);
        }
    }
    Ok((0.5 * (a + b)).clamp(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(values: &[f64]) -> (Graph, Profile) {
        let n = values.len() + 1;
        let edges: Vec<_> = (1..n).map(|w| (0, w)).collect();
        let g = Graph::new(n, &edges).unwrap();
        let mut vals = vec![0.0];
        vals.extend_from_slice(values);
        (g, Profile::new(vals).unwrap())
    }

    fn upd(values: &[f64], p: PValue) -> f64 {
        let (g, f) = star(values);
        update_value(&g, &f, 0, p, &SolverConfig::default()).unwrap()
    }

    #[test]
    fn p2_is_neighbor_mean() {
        assert!((upd(&[0.0, 1.0, 1.0], PValue::Finite(2.0)) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn two_neighbors_give_midpoint_for_every_p() {
        for p in [PValue::Finite(1.5), PValue::Finite(2.0), PValue::Finite(3.7), PValue::Infinity] {
            assert_eq!(upd(&[0.2, 0.8], p), 0.5);
        }
    }

    #[test]
    fn p4_closed_form() {
        // 2 y^3 = (1 - y)^3 at the minimizer of 2y^4 + (1-y)^4
        let expected = 1.0 / (1.0 + 2f64.powf(1.0 / 3.0));
        let got = upd(&[0.0, 0.0, 1.0], PValue::Finite(4.0));
        assert!((got - expected).abs() < 1e-12, "got {got}, want {expected}");
    }

    #[test]
    fn infinity_is_midrange() {
        assert_eq!(upd(&[0.0, 0.3, 1.0], PValue::Infinity), 0.5);
        assert_eq!(upd(&[0.4, 0.4, 0.4], PValue::Infinity), 0.4);
    }

    #[test]
    fn isolated_vertex_and_nan_rejected() {
        let g = Graph::with_boundary(1, &[], &[0]).unwrap();
        let f = Profile::constant(1, 0.5);
        assert!(matches!(
            update_value(&g, &f, 0, PValue::Infinity, &SolverConfig::default()),
            Err(Error::IsolatedVertex(0))
        ));

        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let mut f = Profile::new(vec![0.0, 1.0]).unwrap();
        f.set(1, f64::NAN);
        assert!(matches!(
            update_value(&g, &f, 0, PValue::Infinity, &SolverConfig::default()),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn exponent_validation() {
        assert!(PValue::finite(1.0).is_err());
        assert!(PValue::finite(1.0000001).is_err());
        assert!(PValue::finite(f64::INFINITY).is_err());
        assert!(PValue::finite(1.5).is_ok());
        assert!(matches!(PValue::parse("inf"), Ok(PValue::Infinity)));
        assert!(matches!(PValue::parse("2.5"), Ok(PValue::Finite(_))));
    }

    #[test]
    fn psi_derivative_examples() {
        let (g, f) = star(&[0.3, 0.6, 0.9]);
        for p in [1.5, 2.0, 4.0] {
            assert!(psi_derivative(&g, &f, 0, 0.1, p) < 0.0);
            assert!(psi_derivative(&g, &f, 0, 0.95, p) > 0.0);
        }
        let (g, f) = star(&[0.0, 1.0]);
        for p in [1.3, 2.0, 3.0, 5.5] {
            assert_eq!(psi_derivative(&g, &f, 0, 0.5, p), 0.0);
        }
    }

    #[test]
    fn root_residual_small() {
        let (g, f) = star(&[0.1, 0.2, 0.65, 0.9]);
        for p in [1.5, 2.5, 4.0] {
            let y = update_value(&g, &f, 0, PValue::Finite(p), &SolverConfig::default()).unwrap();
            let range: f64 = 0.8;
            let resid = psi_derivative(&g, &f, 0, y, p).abs();
            assert!(resid <= p * range.powf(p - 1.0) * 1e-10, "p={p} resid={resid}");
        }
    }

    #[test]
    fn superharmonicity_checks() {
        let g = crate::generators::cycle(5).unwrap();
        let f = Profile::constant(5, 0.4);
        for v in 0..5 {
            assert!(is_p_superharmonic_at(&g, &f, v, 2.5, 1e-12));
            assert!(is_p_subharmonic_at(&g, &f, v, 2.5, 1e-12));
        }
        // a local maximum is superharmonic
        let f = Profile::new(vec![0.1, 0.9, 0.1, 0.2, 0.3]).unwrap();
        assert!(is_p_superharmonic_at(&g, &f, 1, 3.0, 1e-12));
    }

    #[test]
    fn post_update_is_p_harmonic() {
        let (g, mut f) = star(&[0.15, 0.4, 0.7, 0.95, 0.2]);
        for p in [1.5, 2.0, 3.0] {
            let y = update_value(&g, &f, 0, PValue::Finite(p), &SolverConfig::default()).unwrap();
            f.set(0, y);
            assert!(is_p_superharmonic_at(&g, &f, 0, p, 1e-9));
            assert!(is_p_subharmonic_at(&g, &f, 0, p, 1e-9));
        }
    }

    #[test]
    fn infinity_laplacian_examples() {
        let g = crate::generators::cycle(4).unwrap();
        let f = Profile::constant(4, 0.8);
        assert_eq!(infinity_laplacian(&g, &f, 2).unwrap(), 0.0);

        let (g, f) = star(&[0.0, 1.0]);
        let mut f2 = f.clone();
        f2.set(0, 0.5);
        assert_eq!(infinity_laplacian(&g, &f2, 0).unwrap(), 0.0);

        // upper envelope on a boundary segment: the deficit sits next to the
        // boundary vertices
        let g = crate::generators::segment(4, true).unwrap();
        let mut f = Profile::constant(9, 1.0);
        f.set(0, 0.0);
        f.set(8, 0.0);
        assert_eq!(infinity_laplacian(&g, &f, 1).unwrap(), -1.0);
        assert_eq!(infinity_laplacian_l1(&g, &f), 2.0);

        let g = crate::generators::cycle(6).unwrap();
        assert_eq!(infinity_laplacian_l1(&g, &Profile::constant(6, 0.2)), 0.0);
    }

    #[test]
    fn update_stays_in_neighbor_range() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for seed in 0..10 {
            let g = crate::generators::random_connected(12, 0.3, seed).unwrap();
            let f = Profile::new((0..12).map(|_| rng.random::<f64>()).collect()).unwrap();
            for p in [PValue::Finite(1.5), PValue::Finite(2.0), PValue::Finite(4.0), PValue::Infinity] {
                for v in 0..12 {
                    let y = update_value(&g, &f, v, p, &SolverConfig::default()).unwrap();
                    let (lo, hi) = super::neighbor_range(&f, g.neighbors(v));
                    assert!(y >= lo && y <= hi);
                }
            }
        }
    }

    #[test]
    fn energy_never_increases_at_update() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for seed in 0..10 {
            let g = crate::generators::random_connected(10, 0.35, seed).unwrap();
            let f = Profile::new((0..10).map(|_| rng.random::<f64>()).collect()).unwrap();
            for p in [1.5, 2.0, 2.5, 4.0] {
                for v in 0..10 {
                    let y =
                        update_value(&g, &f, v, PValue::Finite(p), &SolverConfig::default())
                            .unwrap();
                    assert!(crate::profile::energy_delta_at(&g, &f, v, y, p) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn two_arithmetic_progressions_midpoint() {
        // neighbours forming two equally long progressions with the same gap:
        // the minimizer is (first of one + last of the other)/2 for every p
        let (u1, w1, a, d) = (0.12, 0.4, 0.07, 5usize);
        let mut vals = Vec::new();
        for i in 0..d {
            vals.push(u1 + i as f64 * a);
            vals.push(w1 + i as f64 * a);
        }
        let expected = 0.5 * (u1 + (w1 + (d - 1) as f64 * a));
        for p in [PValue::Finite(1.5), PValue::Finite(2.0), PValue::Finite(2.5), PValue::Finite(4.0), PValue::Infinity] {
            let got = upd(&vals, p);
            assert!((got - expected).abs() < 1e-10, "p={p:?} got={got} want={expected}");
        }
    }
}
