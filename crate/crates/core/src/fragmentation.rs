//! The fragmentation dual of the averaging dynamics.
//!
//! Splitting the mass at a degree-2 vertex equally between its neighbours,
//! with the update sequence reversed, reproduces the primal value exactly:
//! f_t(w) = sum_v mu_t(v) f_0(v). On degree-2 interiors the p-update is the
//! midpoint for every p, so the identity serves as an exact cross-check for
//! the whole engine. Mass is never renormalized; conservation drift is part
//! of what the tests measure.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::Profile;
use std::collections::BTreeMap;

/// Nonnegative mass per vertex of a graph.
#[derive(Clone, Debug)]
pub struct MassMeasure {
    mass: Vec<f64>,
}

impl MassMeasure {
    /// The point mass at `w`.
    pub fn dirac(n: usize, w: usize) -> Self {
        let mut mass = vec![0.0; n];
        mass[w] = 1.0;
        MassMeasure { mass }
    }

    pub fn mass(&self, v: usize) -> f64 {
        self.mass[v]
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Inner product with a profile: sum_v mu(v) f(v).
    pub fn integrate(&self, f: &Profile) -> f64 {
        self.mass.iter().zip(f.values()).map(|(m, x)| m * x).sum()
    }
}

/// Moves the mass at `w` in equal halves to its two neighbours. Splitting a
/// zero mass is a no-op with the same effect.
pub fn fragment_step(g: &Graph, mu: &mut MassMeasure, w: usize) -> Result<()> {
    let nbrs = g.neighbors(w);
    if nbrs.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "fragmentation needs degree 2 at the split vertex, vertex {w} has degree {}",
            nbrs.len()
        )));
    }
    let h = mu.mass[w];
    let (a, b) = (nbrs[0], nbrs[1]);
    mu.mass[w] = 0.0;
    mu.mass[a] += 0.5 * h;
    mu.mass[b] += 0.5 * h;
    Ok(())
}

/// Runs the primal dynamics forward along `schedule` (midpoint updates, valid
/// because every scheduled vertex has degree 2) and the fragmentation process
/// backward from a point mass at `w`; returns |f_t(w) - sum mu_t f_0|.
pub fn duality_check(g: &Graph, f0: &Profile, schedule: &[usize], w: usize) -> Result<f64> {
    f0.check_dimension(g)?;
    if w >= g.n() {
        return Err(Error::VertexOutOfRange { v: w, n: g.n() });
    }
    for &v in schedule {
        if g.degree(v) != 2 {
            return Err(Error::InvalidParameter(format!(
                "schedule visits vertex {v} of degree {} (need 2)",
                g.degree(v)
            )));
        }
    }
    let mut f = f0.clone();
    for &v in schedule {
        let nbrs = g.neighbors(v);
        f.set(v, 0.5 * (f[nbrs[0]] + f[nbrs[1]]));
    }
    let mut mu = MassMeasure::dirac(g.n(), w);
    for &v in schedule.iter().rev() {
        fragment_step(g, &mut mu, v)?;
    }
    Ok((f[w] - mu.integrate(f0)).abs())
}

/// Mass on the integer line, for the quadratic and interaction functionals.
#[derive(Clone, Debug, Default)]
pub struct LineMass {
    mass: BTreeMap<i64, f64>,
}

impl LineMass {
    pub fn dirac(i: i64) -> Self {
        LineMass {
            mass: BTreeMap::from([(i, 1.0)]),
        }
    }

    pub fn mass(&self, i: i64) -> f64 {
        self.mass.get(&i).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.mass.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.mass.iter().map(|(&i, &m)| (i, m))
    }

    /// Splits the mass at `i` equally onto `i - 1` and `i + 1`; returns the
    /// mass that moved.
    pub fn split(&mut self, i: i64) -> f64 {
        let h = self.mass.remove(&i).unwrap_or(0.0);
        if h != 0.0 {
            *self.mass.entry(i - 1).or_insert(0.0) += 0.5 * h;
            *self.mass.entry(i + 1).or_insert(0.0) += 0.5 * h;
        }
        h
    }

    /// Q(mu) = sum_i i^2 mu(i). Each split at `i` with mass h increases Q by
    /// exactly h.
    pub fn q_functional(&self) -> f64 {
        self.support().map(|(i, m)| (i * i) as f64 * m).sum()
    }

    /// E(mu) = sum_{i,j} |i - j| mu(i) mu(j). Each split with mass h
    /// increases E by exactly h^2.
    pub fn e_functional(&self) -> f64 {
        let pts: Vec<(i64, f64)> = self.support().collect();
        let mut sum = 0.0;
        for (a, &(i, mi)) in pts.iter().enumerate() {
            for &(j, mj) in &pts[a + 1..] {
                sum += (i - j).abs() as f64 * mi * mj;
            }
        }
        2.0 * sum
    }

    /// Mass outside the open ball of radius `r` around 0.
    pub fn mass_outside(&self, r: i64) -> f64 {
        self.support()
            .filter(|&(i, _)| i.abs() >= r)
            .map(|(_, m)| m)
            .sum()
    }
}

/// Analytic floor on the number of splits needed to push mass theta out of a
/// radius-r ball: theta^2 r^3 / 2.
pub fn mass_escape_bound(theta: f64, r: f64) -> f64 {
    theta * theta * r * r * r / 2.0
}
