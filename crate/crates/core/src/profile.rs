//! Opinion profiles and their scalar diagnostics.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::Serialize;

/// A real value per vertex, indexed like the graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Profile {
    values: Vec<f64>,
}

impl Profile {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(x) = values.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("profile value {x}")));
        }
        Ok(Profile { values })
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Profile { values: vec![c; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, x: f64) {
        self.values[v] = x;
    }

    pub fn check_dimension(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::DimensionMismatch {
                got: self.len(),
                expected: g.n(),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Profile {
    type Output = f64;
    fn index(&self, v: usize) -> &f64 {
        &self.values[v]
    }
}

/// max f − min f over all vertices.
pub fn oscillation(f: &Profile) -> f64 {
    let lo = f.values().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = f.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if f.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// The lp energy: sum over undirected edges of |f(u) − f(v)|^p, each edge
/// counted once. Only finite exponents p > 1 are meaningful.
pub fn energy(g: &Graph, f: &Profile, p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    Ok(g.edges()
        .map(|(u, v)| gap_power(f[u] - f[v], p))
        .sum())
}

fn gap_power(d: f64, p: f64) -> f64 {
    if p == 2.0 {
        d * d
    } else {
        d.abs().powf(p)
    }
}

/// Energy change caused by moving `v` to `new_value`, computed from the
/// edges at `v` only.
pub fn energy_delta_at(g: &Graph, f: &Profile, v: usize, new_value: f64, p: f64) -> f64 {
    let old = f[v];
    g.neighbors(v)
        .iter()
        .map(|&w| gap_power(new_value - f[w], p) - gap_power(old - f[w], p))
        .sum()
}

/// Lexicographic potential: absolute edge gradients sorted in non-increasing
/// order, weighted by 3^{-i}. A diagnostic for the midrange dynamics only;
/// the weights underflow beyond a few hundred edges, so it is intended for
/// small graphs.
pub fn lex_potential(g: &Graph, f: &Profile) -> f64 {
    let mut grads: Vec<f64> = g.edges().map(|(u, v)| (f[u] - f[v]).abs()).collect();
    lex_potential_of_gradients(&mut grads)
}

/// The same weighted sum over an explicit gradient multiset; the edge
/// enumeration order is irrelevant.
pub fn lex_potential_of_gradients(grads: &mut [f64]) -> f64 {
    grads.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut weight = 1.0;
    let mut sum = 0.0;
    for g in grads.iter() {
        weight /= 3.0;
        sum += g * weight;
    }
    sum
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    One,
    Infinity,
}

/// ℓ1 or sup distance between two profiles over all vertices.
pub fn lp_distance(f: &Profile, h: &Profile, norm: Norm) -> Result<f64> {
    if f.len() != h.len() {
        return Err(Error::DimensionMismatch {
            got: f.len(),
            expected: h.len(),
        });
    }
    let diffs = f.values().iter().zip(h.values()).map(|(a, b)| (a - b).abs());
    Ok(match norm {
        Norm::One => diffs.sum(),
        Norm::Infinity => diffs.fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn oscillation_examples() {
        assert_eq!(oscillation(&Profile::constant(5, 0.3)), 0.0);
        let f = Profile::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(oscillation(&f), 1.0);
    }

    #[test]
    fn energy_examples() {
        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        let f = Profile::new(vec![0.0, 1.0]).unwrap();
        for p in [1.5, 2.0, 3.0, 4.5] {
            assert_eq!(energy(&edge, &f, p).unwrap(), 1.0);
        }

        let f = Profile::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert!((energy(&path3(), &f, 2.0).unwrap() - 0.5).abs() < 1e-15);

        let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let f = Profile::new(vec![0.0, 0.0, 1.0]).unwrap();
        assert!((energy(&tri, &f, 3.0).unwrap() - 2.0).abs() < 1e-15);

        assert!(energy(&tri, &f, 1.0).is_err());
        assert!(energy(&tri, &f, 0.5).is_err());
    }

    #[test]
    fn energy_delta_matches_full_recompute() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for seed in 0..20 {
            let g = crate::generators::random_connected(10, 0.35, seed).unwrap();
            let f = Profile::new((0..10).map(|_| rng.random::<f64>()).collect()).unwrap();
            for p in [1.5, 2.0, 2.5, 4.0] {
                let v = rng.random_range(0..10);
                let y = rng.random::<f64>();
                let delta = energy_delta_at(&g, &f, v, y, p);
                let mut f2 = f.clone();
                f2.set(v, y);
                let full = energy(&g, &f2, p).unwrap() - energy(&g, &f, p).unwrap();
                let scale = energy(&g, &f, p).unwrap().max(1.0);
                assert!(
                    (delta - full).abs() <= 1e-12 * scale,
                    "p={p} delta={delta} full={full}"
                );
            }
        }
    }

    #[test]
    fn energy_delta_zero_when_value_unchanged() {
        let g = path3();
        let f = Profile::new(vec![0.1, 0.9, 0.4]).unwrap();
        assert_eq!(energy_delta_at(&g, &f, 1, 0.9, 2.0), 0.0);
    }

    #[test]
    fn star_center_to_mean_decreases_energy() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let f = Profile::new(vec![0.9, 0.1, 0.2, 0.6]).unwrap();
        let mean = (0.1 + 0.2 + 0.6) / 3.0;
        assert!(energy_delta_at(&g, &f, 0, mean, 2.0) <= 0.0);
    }

    #[test]
    fn lex_potential_examples() {
        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(lex_potential(&edge, &Profile::constant(2, 0.7)), 0.0);
        let f = Profile::new(vec![0.0, 1.0]).unwrap();
        assert!((lex_potential(&edge, &f) - 1.0 / 3.0).abs() < 1e-15);

        let mut grads = [0.5, 1.0];
        let got = lex_potential_of_gradients(&mut grads);
        assert!((got - (1.0 / 3.0 + 0.5 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn lp_distance_examples() {
        let f = Profile::new(vec![1.0, 0.0, 0.5]).unwrap();
        assert_eq!(lp_distance(&f, &f, Norm::One).unwrap(), 0.0);
        let h = Profile::new(vec![0.0, 1.0, 0.5]).unwrap();
        assert_eq!(lp_distance(&f, &h, Norm::One).unwrap(), 2.0);
        assert_eq!(lp_distance(&f, &h, Norm::Infinity).unwrap(), 1.0);
        let short = Profile::new(vec![0.0]).unwrap();
        assert!(lp_distance(&f, &short, Norm::One).is_err());
    }

    proptest! {
        // E_p(af + b) = a^p E_p(f); E_p >= 0 with equality iff f constant.
        #[test]
        fn energy_affine_covariance(
            vals in proptest::collection::vec(0.0f64..1.0, 6),
            a in 0.1f64..4.0,
            b in -2.0f64..2.0,
            p in 1.2f64..4.5,
        ) {
            let g = cycle6();
            let f = Profile::new(vals.clone()).unwrap();
            let scaled = Profile::new(vals.iter().map(|x| a * x + b).collect()).unwrap();
            let e = energy(&g, &f, p).unwrap();
            let es = energy(&g, &scaled, p).unwrap();
            prop_assert!((es - a.powf(p) * e).abs() <= 1e-9 * a.powf(p) * e.max(1e-30));
            prop_assert!(e >= 0.0);
            if oscillation(&f) == 0.0 {
                prop_assert_eq!(e, 0.0);
            } else {
                prop_assert!(e > 0.0);
            }
        }

        // sorted-gradient potential ignores enumeration order
        #[test]
        fn lex_potential_permutation_invariant(
            mut grads in proptest::collection::vec(0.0f64..2.0, 1..12),
            rot in 0usize..12,
        ) {
            let base = lex_potential_of_gradients(&mut grads.clone());
            let r = rot % grads.len();
            grads.rotate_left(r);
            prop_assert_eq!(lex_potential_of_gradients(&mut grads), base);
        }
    }

    fn cycle6() -> Graph {
        crate::generators::cycle(6).unwrap()
    }
}
