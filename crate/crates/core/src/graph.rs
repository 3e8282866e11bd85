//! Simple connected undirected graphs with an optional boundary set.
//!
//! Vertices are dense integers `0..n`. The boundary `B` is a (possibly empty)
//! subset of vertices whose opinions are never updated by the dynamics; the
//! interior is its complement. Construction validates all structural
//! invariants: no self-loops or duplicate edges, connectivity of the whole
//! vertex set, no edge between two boundary vertices, and no isolated
//! interior vertex.

use crate::error::{Error, Result};
use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    boundary: Vec<bool>,
    interior: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph with an empty boundary.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_boundary(n, edges, &[])
    }

    /// Builds a graph with the given boundary vertex set.
    pub fn with_boundary(n: usize, edges: &[(usize, usize)], boundary: &[usize]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut is_boundary = vec![false; n];
        for &b in boundary {
            if b >= n {
                return Err(Error::VertexOutOfRange { v: b, n });
            }
            is_boundary[b] = true;
        }
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if is_boundary[u] && is_boundary[v] {
                return Err(Error::BoundaryEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                let dup = nbrs.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(Error::DuplicateEdge(v.min(dup), v.max(dup)));
            }
        }

        let g = Graph {
            adj,
            boundary: is_boundary,
            interior: (0..n).filter(|&v| !boundary.contains(&v)).collect(),
            edge_count: edges.len(),
        };
        if n > 0 {
            if let Some(unreached) = g.first_unreached(0) {
                return Err(Error::Disconnected { unreached });
            }
        }
        for &v in &g.interior {
            if g.adj[v].is_empty() {
                return Err(Error::IsolatedVertex(v));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending order. The order is part of the
    /// determinism contract for schedules and tie-breaking.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Iterates over undirected edges as pairs `(u, v)` with `u < v`,
    /// each edge exactly once.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    pub fn has_boundary(&self) -> bool {
        self.interior.len() != self.n()
    }

    /// Interior vertices in ascending order.
    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.boundary[v]).collect()
    }

    /// Average degree `2|E|/n`.
    pub fn average_degree(&self) -> f64 {
        2.0 * self.edge_count as f64 / self.n() as f64
    }

    /// Graph distances from `src`; `u32::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Exact diameter via all-source BFS.
    pub fn diameter(&self) -> usize {
        (0..self.n())
            .flat_map(|v| self.bfs_distances(v))
            .filter(|&d| d != u32::MAX)
            .max()
            .unwrap_or(0) as usize
    }

    fn first_unreached(&self, src: usize) -> Option<usize> {
        let dist = self.bfs_distances(src);
        dist.iter().position(|&d| d == u32::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_basics() {
        let g = triangle();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.diameter(), 1);
        assert_eq!(g.average_degree(), 2.0);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            Graph::new(2, &[(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
    }

    #[test]
    fn duplicate_edge_rejected() {
        assert!(matches!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
    }

    #[test]
    fn disconnected_rejected() {
        assert!(matches!(
            Graph::new(4, &[(0, 1), (2, 3)]),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn boundary_edge_rejected() {
        assert!(matches!(
            Graph::with_boundary(2, &[(0, 1)], &[0, 1]),
            Err(Error::BoundaryEdge(0, 1))
        ));
    }

    #[test]
    fn boundary_and_interior_split() {
        let g = Graph::with_boundary(3, &[(0, 1), (1, 2)], &[0, 2]).unwrap();
        assert!(g.is_boundary(0) && g.is_boundary(2) && !g.is_boundary(1));
        assert_eq!(g.interior(), &[1]);
        assert_eq!(g.boundary_vertices(), vec![0, 2]);
    }

    #[test]
    fn complete_graph_diameter_one() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let g = Graph::new(5, &edges).unwrap();
        assert_eq!(g.diameter(), 1);
        assert_eq!(g.average_degree(), 4.0);
    }
}
