//! Deterministic generators for the graph families used by the experiments.
//!
//! Each family documents its index layout so that preset profiles can address
//! the construction's coordinates. Identical parameters always produce
//! identical adjacency lists; the random family is deterministic in its seed.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::Profile;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Cycle on `n >= 3` vertices; vertex `i` is adjacent to `i ± 1 (mod n)`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    Graph::new(n, &edges)
}

/// Path with vertices `0..=2n`; coordinate `c in [-n, n]` maps to index `c + n`.
/// With `with_boundary`, the endpoints `0` and `2n` form the boundary.
pub fn segment(half: usize, with_boundary: bool) -> Result<Graph> {
    if half < 1 {
        return Err(Error::InvalidParameter("segment needs n >= 1".into()));
    }
    let n = 2 * half + 1;
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    if with_boundary {
        Graph::with_boundary(n, &edges, &[0, n - 1])
    } else {
        Graph::new(n, &edges)
    }
}

/// Barbell: a path of `2ñ + 1` vertices whose endpoints each belong to an
/// ñ-clique, `4ñ - 1` vertices in total.
///
/// Layout: path coordinate `c in [-ñ, ñ]` maps to `c + ñ`; the extra clique
/// vertices are `2ñ+1 ..= 3ñ-1` (left) and `3ñ ..= 4ñ-2` (right).
pub fn barbell(clique: usize) -> Result<Graph> {
    if clique < 2 {
        return Err(Error::InvalidParameter("barbell needs clique size >= 2".into()));
    }
    let nt = clique;
    let n = 4 * nt - 1;
    let mut edges: Vec<_> = (0..2 * nt).map(|i| (i, i + 1)).collect();
    let left: Vec<usize> = std::iter::once(0).chain(2 * nt + 1..=3 * nt - 1).collect();
    let right: Vec<usize> = std::iter::once(2 * nt).chain(3 * nt..=4 * nt - 2).collect();
    for set in [left, right] {
        for i in 0..set.len() {
            for j in (i + 1)..set.len() {
                edges.push((set[i].min(set[j]), set[i].max(set[j])));
            }
        }
    }
    Graph::new(n, &edges)
}

/// `k >= 2` parallel paths of length `len >= 2` joining two hub vertices,
/// `k(len-1) + 2` vertices in total.
///
/// Layout: hub `a = 0`, hub `z = 1`; path `j` position `i in 1..len` maps to
/// `2 + j(len-1) + (i-1)`.
pub fn parallel_paths(k: usize, len: usize) -> Result<Graph> {
    if k < 2 || len < 2 {
        return Err(Error::InvalidParameter(format!(
            "parallel paths need k >= 2 and L >= 2, got k={k} L={len}"
        )));
    }
    let n = k * (len - 1) + 2;
    let mut edges = Vec::new();
    for j in 0..k {
        let base = 2 + j * (len - 1);
        edges.push((0, base));
        for i in 0..len - 2 {
            edges.push((base + i, base + i + 1));
        }
        edges.push((1, base + len - 2));
    }
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    Graph::new(n, &edges)
}

/// Tree on `6n + 1` vertices: a segment of length `2n` with `2n` leaves
/// attached to each endpoint.
///
/// Layout: segment coordinate `c in [-n, n]` maps to `c + n`; the leaves at
/// coordinate `-n` are `2n+1 ..= 4n`, the leaves at `+n` are `4n+1 ..= 6n`.
pub fn tree_tn(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("tree needs n >= 1".into()));
    }
    let total = 6 * n + 1;
    let mut edges: Vec<_> = (0..2 * n).map(|i| (i, i + 1)).collect();
    for leaf in 2 * n + 1..=4 * n {
        edges.push((0, leaf));
    }
    for leaf in 4 * n + 1..=6 * n {
        edges.push((2 * n, leaf));
    }
    Graph::new(total, &edges)
}

/// Segment of length `2n` with `m = n/d` cliques of size `d` fanned onto each
/// endpoint, `4n + 1` vertices in total. Every clique vertex is adjacent to
/// the nearer endpoint.
///
/// Layout: segment coordinate `c in [-n, n]` maps to `c + n`; left clique `i`
/// (1-based) occupies `2n + (i-1)d + 1 ..= 2n + i·d`, right cliques follow at
/// `3n + 1 ..= 4n`.
pub fn hdn(d: usize, n: usize) -> Result<Graph> {
    if d < 2 {
        return Err(Error::InvalidParameter("clique size d must be >= 2".into()));
    }
    if n == 0 || n % d != 0 {
        return Err(Error::InvalidParameter(format!(
            "n must be a positive multiple of d, got d={d} n={n}"
        )));
    }
    let m = n / d;
    let total = 4 * n + 1;
    let mut edges: Vec<_> = (0..2 * n).map(|i| (i, i + 1)).collect();
    for (endpoint, base) in [(0, 2 * n), (2 * n, 3 * n)] {
        for i in 0..m {
            let clique: Vec<usize> = (1..=d).map(|j| base + i * d + j).collect();
            for &v in &clique {
                edges.push((endpoint.min(v), endpoint.max(v)));
            }
            for a in 0..d {
                for b in (a + 1)..d {
                    edges.push((clique[a], clique[b]));
                }
            }
        }
    }
    Graph::new(total, &edges)
}

/// Index layout for the accordion graph; shared with its preset profile.
#[derive(Clone, Copy, Debug)]
pub struct AccordionLayout {
    pub d: usize,
    pub n: usize,
    pub m: usize,
}

impl AccordionLayout {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter("anti-clique size d must be >= 2".into()));
        }
        if n == 0 || n % d != 0 {
            return Err(Error::InvalidParameter(format!(
                "n must be a positive multiple of d, got d={d} n={n}"
            )));
        }
        Ok(AccordionLayout { d, n, m: n / d })
    }

    fn half_block(&self) -> usize {
        (2 * self.m + 1) * self.d
    }

    pub fn total(&self) -> usize {
        2 * self.half_block() + 2 * (2 * self.n - 1)
    }

    /// Vertex `j` of anti-clique `k in [-m, m]` in the top copy (initial value 1).
    pub fn top(&self, k: i64, j: usize) -> usize {
        ((k + self.m as i64) as usize) * self.d + j
    }

    /// Vertex `j` of anti-clique `k` in the bottom copy (initial value 0).
    pub fn bot(&self, k: i64, j: usize) -> usize {
        self.half_block() + ((k + self.m as i64) as usize) * self.d + j
    }

    /// Left path vertex at coordinate `c in [-n, n]`. The endpoints coincide
    /// with the anchor vertices: `w_{-n} = top(-m, 0)` and `w_n = bot(-m, 0)`.
    pub fn left_path(&self, c: i64) -> usize {
        let n = self.n as i64;
        if c == -n {
            self.top(-(self.m as i64), 0)
        } else if c == n {
            self.bot(-(self.m as i64), 0)
        } else {
            2 * self.half_block() + (c + n - 1) as usize
        }
    }

    /// Right path vertex at coordinate `c in [-n, n]`; endpoints are
    /// `u_{-n} = top(m, 0)` and `u_n = bot(m, 0)`.
    pub fn right_path(&self, c: i64) -> usize {
        let n = self.n as i64;
        if c == -n {
            self.top(self.m as i64, 0)
        } else if c == n {
            self.bot(self.m as i64, 0)
        } else {
            2 * self.half_block() + (2 * self.n - 1) + (c + n - 1) as usize
        }
    }
}

/// Accordion: two chains of `2m + 1` anti-cliques of size `d` (consecutive
/// anti-cliques completely bipartitely linked), connected by two paths of
/// length `2n`. Each path endpoint is the first vertex of the corresponding
/// extreme anti-clique, so it carries one path edge plus the `d` edges into
/// the adjacent anti-clique.
pub fn accordion(d: usize, n: usize) -> Result<Graph> {
    let lay = AccordionLayout::new(d, n)?;
    let m = lay.m as i64;
    let mut edges = Vec::new();
    for half in [AccordionLayout::top as fn(&AccordionLayout, i64, usize) -> usize, AccordionLayout::bot] {
        for k in -m..m {
            for j in 0..d {
                for j2 in 0..d {
                    let (u, v) = (half(&lay, k, j), half(&lay, k + 1, j2));
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
    }
    for path in [AccordionLayout::left_path as fn(&AccordionLayout, i64) -> usize, AccordionLayout::right_path] {
        for c in -(n as i64)..n as i64 {
            let (u, v) = (path(&lay, c), path(&lay, c + 1));
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::new(lay.total(), &edges)
}

/// Erdős–Rényi-style connected graph: each pair is an edge with probability
/// `q`, resampled until connected. Deterministic in `seed`.
pub fn random_connected(n: usize, q: f64, seed: u64) -> Result<Graph> {
    if n < 2 || !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "random graph needs n >= 2 and q in [0, 1], got n={n} q={q}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random::<f64>() < q {
                    edges.push((u, v));
                }
            }
        }
        match Graph::new(n, &edges) {
            Ok(g) => return Ok(g),
            Err(Error::Disconnected { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidParameter(format!(
        "no connected sample in 10000 attempts (n={n}, q={q})"
    )))
}

/// Picks `k` vertices forming an independent set (so the boundary invariant
/// "no edge joins two boundary vertices" holds). Returns `None` when the
/// shuffled greedy search fails repeatedly.
pub fn random_independent_boundary<R: Rng>(g: &Graph, k: usize, rng: &mut R) -> Option<Vec<usize>> {
    let n = g.n();
    if k >= n {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..200 {
        order.shuffle(rng);
        let mut chosen = vec![false; n];
        let mut picked = Vec::new();
        for &v in &order {
            if g.neighbors(v).iter().all(|&w| !chosen[w]) {
                chosen[v] = true;
                picked.push(v);
                if picked.len() == k {
                    picked.sort_unstable();
                    return Some(picked);
                }
            }
        }
    }
    None
}

/// A graph family together with its size parameters, as addressed from the
/// command line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum GraphFamilySpec {
    Cycle { n: usize },
    Segment { half: usize, boundary: bool },
    Barbell { clique: usize },
    ParallelPaths { k: usize, len: usize },
    TreeTn { arm: usize },
    Hdn { d: usize, n: usize },
    Accordion { d: usize, n: usize },
    RandomConnected { n: usize, q: f64, seed: u64 },
    EdgeListFile { path: String, boundary: Option<String> },
}

impl GraphFamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            GraphFamilySpec::Cycle { .. } => "cycle",
            GraphFamilySpec::Segment { .. } => "segment",
            GraphFamilySpec::Barbell { .. } => "barbell",
            GraphFamilySpec::ParallelPaths { .. } => "parallel",
            GraphFamilySpec::TreeTn { .. } => "tn",
            GraphFamilySpec::Hdn { .. } => "hdn",
            GraphFamilySpec::Accordion { .. } => "accordion",
            GraphFamilySpec::RandomConnected { .. } => "random",
            GraphFamilySpec::EdgeListFile { .. } => "file",
        }
    }

    /// Builds the graph; for the file family with a boundary file, also
    /// returns the boundary values.
    pub fn build(&self) -> Result<(Graph, Option<Profile>)> {
        match self {
            GraphFamilySpec::Cycle { n } => Ok((cycle(*n)?, None)),
            GraphFamilySpec::Segment { half, boundary } => Ok((segment(*half, *boundary)?, None)),
            GraphFamilySpec::Barbell { clique } => Ok((barbell(*clique)?, None)),
            GraphFamilySpec::ParallelPaths { k, len } => Ok((parallel_paths(*k, *len)?, None)),
            GraphFamilySpec::TreeTn { arm } => Ok((tree_tn(*arm)?, None)),
            GraphFamilySpec::Hdn { d, n } => Ok((hdn(*d, *n)?, None)),
            GraphFamilySpec::Accordion { d, n } => Ok((accordion(*d, *n)?, None)),
            GraphFamilySpec::RandomConnected { n, q, seed } => {
                Ok((random_connected(*n, *q, *seed)?, None))
            }
            GraphFamilySpec::EdgeListFile { path, boundary } => crate::io::load_graph(
                std::path::Path::new(path),
                boundary.as_ref().map(std::path::Path::new),
            ),
        }
    }

    /// Parses specs like `cycle:16`, `segment:8:boundary`, `parallel:3,4`,
    /// `hdn:6,12`, `random:n=20,q=0.2,seed=1`, `file:PATH[:boundary=PATH]`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("graph spec `{s}`: {msg}"));
        let (tag, rest) = s.split_once(':').unwrap_or((s, ""));
        let ints = |rest: &str, want: usize| -> Result<Vec<usize>> {
            let parts: Vec<usize> = rest
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("expected comma-separated integers"))?;
            if parts.len() != want {
                return Err(bad(&format!("expected {want} parameter(s)")));
            }
            Ok(parts)
        };
        match tag {
            "cycle" => Ok(GraphFamilySpec::Cycle { n: ints(rest, 1)?[0] }),
            "segment" => {
                let (num, boundary) = match rest.split_once(':') {
                    Some((num, "boundary")) => (num, true),
                    Some(_) => return Err(bad("trailing option must be `boundary`")),
                    None => (rest, false),
                };
                Ok(GraphFamilySpec::Segment { half: ints(num, 1)?[0], boundary })
            }
            "barbell" => Ok(GraphFamilySpec::Barbell { clique: ints(rest, 1)?[0] }),
            "parallel" => {
                let p = ints(rest, 2)?;
                Ok(GraphFamilySpec::ParallelPaths { k: p[0], len: p[1] })
            }
            "tn" => Ok(GraphFamilySpec::TreeTn { arm: ints(rest, 1)?[0] }),
            "hdn" => {
                let p = ints(rest, 2)?;
                Ok(GraphFamilySpec::Hdn { d: p[0], n: p[1] })
            }
            "accordion" => {
                let p = ints(rest, 2)?;
                Ok(GraphFamilySpec::Accordion { d: p[0], n: p[1] })
            }
            "random" => {
                let (mut n, mut q, mut seed) = (None, None, 0u64);
                for kv in rest.split(',') {
                    match kv.split_once('=') {
                        Some(("n", v)) => n = v.parse().ok(),
                        Some(("q", v)) => q = v.parse().ok(),
                        Some(("seed", v)) => {
                            seed = v.parse().map_err(|_| bad("bad seed"))?;
                        }
                        _ => return Err(bad("expected n=..,q=..[,seed=..]")),
                    }
                }
                match (n, q) {
                    (Some(n), Some(q)) => Ok(GraphFamilySpec::RandomConnected { n, q, seed }),
                    _ => Err(bad("expected n=..,q=..[,seed=..]")),
                }
            }
            "file" => {
                if rest.is_empty() {
                    return Err(bad("expected file:PATH"));
                }
                let (path, boundary) = match rest.split_once(":boundary=") {
                    Some((p, b)) => (p.to_string(), Some(b.to_string())),
                    None => (rest.to_string(), None),
                };
                Ok(GraphFamilySpec::EdgeListFile { path, boundary })
            }
            _ => Err(bad("unknown family")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Floyd–Warshall diameter, an oracle independent of the BFS implementation.
    fn fw_diameter(g: &Graph) -> usize {
        let n = g.n();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for v in 0..n {
            d[v][v] = 0;
            for &w in g.neighbors(v) {
                d[v][w] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        (0..n).flat_map(|i| d[i].iter().copied()).max().unwrap()
    }

    #[test]
    fn cycle_degrees_and_diameter() {
        let g = cycle(3).unwrap();
        assert!((0..3).all(|v| g.degree(v) == 2));
        let g = cycle(16).unwrap();
        assert_eq!(g.diameter(), 8);
        assert_eq!(fw_diameter(&g), 8);
        assert_eq!(g.average_degree(), 2.0);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn segment_layout() {
        let g = segment(1, false).unwrap();
        assert_eq!(g.n(), 3);
        let g = segment(4, true).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.interior().len(), 7);
        assert_eq!(g.diameter(), 8);
    }

    #[test]
    fn barbell_counts() {
        // ñ = 2: 7 vertices; hand enumeration gives 4 path edges plus one
        // internal edge per 2-clique (the endpoint is already on the path).
        let g = barbell(2).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 6);

        let g = barbell(3).unwrap();
        assert_eq!(g.n(), 11);
        assert_eq!(g.edge_count(), 3 * 4); // ñ(ñ+1)
        assert!(g.average_degree() < 4.0); // < ñ + 1

        for nt in 2..8 {
            let g = barbell(nt).unwrap();
            assert_eq!(g.n(), 4 * nt - 1);
            assert_eq!(g.edge_count(), nt * (nt + 1));
            assert!(g.average_degree() < (nt + 1) as f64);
        }
    }

    #[test]
    fn parallel_paths_counts_and_diameter() {
        let g = parallel_paths(2, 2).unwrap();
        assert_eq!(g.n(), 4); // two length-2 paths form C4
        assert!((0..4).all(|v| g.degree(v) == 2));

        let g = parallel_paths(3, 4).unwrap();
        assert_eq!(g.n(), 11);

        let g = parallel_paths(2, 8).unwrap();
        assert_eq!(g.diameter(), 8);

        for k in 2..=6 {
            for len in 2..=16 {
                let g = parallel_paths(k, len).unwrap();
                assert_eq!(g.n(), k * (len - 1) + 2);
                assert_eq!(g.diameter(), len, "k={k} L={len}");
            }
        }
    }

    #[test]
    fn tree_tn_is_tree() {
        let g = tree_tn(1).unwrap();
        assert_eq!(g.n(), 7);
        // endpoints ±1 carry 2 leaves + 1 path edge each
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(2), 3);

        let g = tree_tn(2).unwrap();
        assert_eq!(g.n(), 13);

        for n in 1..=20 {
            let g = tree_tn(n).unwrap();
            assert_eq!(g.n(), 6 * n + 1);
            assert_eq!(g.edge_count(), 6 * n); // connected + n-1 edges = tree
        }
    }

    #[test]
    fn hdn_counts() {
        let g = hdn(2, 2).unwrap();
        assert_eq!(g.n(), 9);

        let g = hdn(6, 12).unwrap();
        assert_eq!(g.n(), 49);
        assert_eq!(g.degree(0), 1 + 12); // endpoint: one path edge + n clique vertices
        let brute = g.edges().count();
        assert_eq!(g.edge_count(), brute);
        assert!((g.average_degree() - 2.0 * brute as f64 / 49.0).abs() < 1e-12);

        assert!(hdn(5, 12).is_err()); // d does not divide n
    }

    #[test]
    fn accordion_counts_and_degrees() {
        let (d, n) = (2, 6); // m = 3
        let lay = AccordionLayout::new(d, n).unwrap();
        let g = accordion(d, n).unwrap();
        let m = lay.m;
        assert_eq!(g.n(), 2 * (2 * m + 1) * d + 2 * (2 * n + 1) - 4);
        // brute edge count: two chains of 2m complete bipartite blocks + two paths
        assert_eq!(g.edge_count(), 2 * (2 * m) * d * d + 2 * (2 * n));

        // interior anti-clique vertices touch both neighbouring anti-cliques
        assert_eq!(g.degree(lay.top(0, 1)), 2 * d);
        // anchors carry d anti-clique edges plus one path edge
        for a in [
            lay.left_path(-(n as i64)),
            lay.left_path(n as i64),
            lay.right_path(-(n as i64)),
            lay.right_path(n as i64),
        ] {
            assert_eq!(g.degree(a), d + 1);
        }
        assert!(accordion(2, 7).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_connected(20, 0.2, 7).unwrap();
        let b = random_connected(20, 0.2, 7).unwrap();
        for v in 0..20 {
            assert_eq!(a.neighbors(v), b.neighbors(v));
        }
        let c = hdn(4, 8).unwrap();
        let d = hdn(4, 8).unwrap();
        for v in 0..c.n() {
            assert_eq!(c.neighbors(v), d.neighbors(v));
        }
    }

    #[test]
    fn independent_boundary_has_no_internal_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..20 {
            let g = random_connected(18, 0.2, seed).unwrap();
            if let Some(b) = random_independent_boundary(&g, 4, &mut rng) {
                for &u in &b {
                    for &v in &b {
                        assert!(u == v || !g.neighbors(u).contains(&v));
                    }
                }
                let edges: Vec<_> = g.edges().collect();
                assert!(Graph::with_boundary(g.n(), &edges, &b).is_ok());
            }
        }
    }

    #[test]
    fn spec_parsing_round_trip() {
        assert_eq!(
            GraphFamilySpec::parse("cycle:16").unwrap(),
            GraphFamilySpec::Cycle { n: 16 }
        );
        assert_eq!(
            GraphFamilySpec::parse("segment:8:boundary").unwrap(),
            GraphFamilySpec::Segment { half: 8, boundary: true }
        );
        assert_eq!(
            GraphFamilySpec::parse("parallel:3,4").unwrap(),
            GraphFamilySpec::ParallelPaths { k: 3, len: 4 }
        );
        assert_eq!(
            GraphFamilySpec::parse("random:n=20,q=0.2,seed=5").unwrap(),
            GraphFamilySpec::RandomConnected { n: 20, q: 0.2, seed: 5 }
        );
        assert!(GraphFamilySpec::parse("moebius:7").is_err());
    }
}
