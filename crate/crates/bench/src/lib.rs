//! Shared fixtures for the criterion benchmarks.

use lpdyn::generators;
use lpdyn::graph::Graph;
use lpdyn::profile::Profile;

pub fn star_instance(degree: usize) -> (Graph, Profile) {
    let n = degree + 1;
    let edges: Vec<_> = (1..n).map(|w| (0, w)).collect();
    let g = Graph::new(n, &edges).unwrap();
    let values: Vec<f64> = (0..n).map(|v| (v as f64 * 0.37).fract()).collect();
    (g, Profile::new(values).unwrap())
}

pub fn cycle_instance(n: usize) -> (Graph, Profile) {
    let g = generators::cycle(n).unwrap();
    let values: Vec<f64> = (0..n).map(|v| if 2 * v >= n { 1.0 } else { 0.0 }).collect();
    (g, Profile::new(values).unwrap())
}
