//! Exact infinity-harmonic extension of boundary values.
//!
//! The constructive algorithm: while interior vertices remain, take a
//! connected component W of the unresolved interior. If W touches a single
//! resolved vertex, the extension is constant there. Otherwise find a
//! maximal-slope bridge through W (a simple path between resolved vertices
//! with all inner vertices in W), set the values along it by linear
//! interpolation, and promote its inner vertices to the resolved set. The
//! extension is unique, so tie-breaking affects only the audit trail.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::Profile;
use crate::schedule::Schedule;
use crate::update::infinity_laplacian;
use serde::Serialize;
use std::collections::VecDeque;

/// A maximal-slope bridge: endpoints resolved, inner vertices interior.
#[derive(Clone, Debug, Serialize)]
pub struct Bridge {
    pub path: Vec<usize>,
    pub slope: f64,
}

#[derive(Clone, Debug, Serialize)]
pub enum AuditEntry {
    BridgeFixed { path: Vec<usize>, slope: f64 },
    ConstantComponent { vertices: Vec<usize>, anchor: usize, value: f64 },
}

#[derive(Clone, Debug)]
pub struct ExtensionResult {
    /// The extension; equals the input exactly on the boundary.
    pub h: Profile,
    /// max over interior vertices of the midrange defect |Δ∞ h|.
    pub residual: f64,
    pub audit: Vec<AuditEntry>,
}

/// Deterministic tie-breaking order; both orders must produce the same
/// extension (up to floating-point noise) since the extension is unique.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    Primary,
    Alternate,
}

/// Two slopes within this relative distance are treated as tied.
const SLOPE_TIE_REL: f64 = 1e-14;

pub fn extend(g: &Graph, boundary_values: &Profile) -> Result<ExtensionResult> {
    extend_with(g, boundary_values, TieBreak::Primary)
}

pub fn extend_with(
    g: &Graph,
    boundary_values: &Profile,
    tie: TieBreak,
) -> Result<ExtensionResult> {
    boundary_values.check_dimension(g)?;
    if !g.has_boundary() {
        return Err(Error::InvalidParameter(
            "extension needs a nonempty boundary".into(),
        ));
    }
    let n = g.n();
    let mut resolved = vec![false; n];
    let mut values = vec![0.0f64; n];
    for v in 0..n {
        if g.is_boundary(v) {
            resolved[v] = true;
            values[v] = boundary_values[v];
        }
    }

    let mut audit = Vec::new();
    loop {
        let comps = unresolved_components(g, &resolved, tie);
        let Some(w) = comps.first() else { break };

        let mut anchors: Vec<usize> = Vec::new();
        for &v in w {
            for &b in g.neighbors(v) {
                if resolved[b] && !anchors.contains(&b) {
                    anchors.push(b);
                }
            }
        }
        anchors.sort_unstable();

        if anchors.len() == 1 {
            let b = anchors[0];
            for &v in w {
                values[v] = values[b];
                resolved[v] = true;
            }
            audit.push(AuditEntry::ConstantComponent {
                vertices: w.clone(),
                anchor: b,
                value: values[b],
            });
            continue;
        }

        let bridge = max_slope_bridge_impl(g, &resolved, &values, w, &anchors, tie)?;
        let base = values[bridge.path[0]];
        for (k, &v) in bridge.path.iter().enumerate().skip(1) {
            if k < bridge.path.len() - 1 {
                values[v] = base + k as f64 * bridge.slope;
                resolved[v] = true;
            }
        }
        audit.push(AuditEntry::BridgeFixed {
            path: bridge.path,
            slope: bridge.slope,
        });
    }

    let h = Profile::new(values)?;
    let residual = verify_extension(g, &h);
    Ok(ExtensionResult { h, residual, audit })
}

/// Connected components of the unresolved vertices, ordered by their smallest
/// vertex (reversed for the alternate tie-break order).
fn unresolved_components(g: &Graph, resolved: &[bool], tie: TieBreak) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if resolved[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !resolved[v] && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    if tie == TieBreak::Alternate {
        comps.reverse();
    }
    comps
}

/// Over all ordered anchor pairs (b, b') reachable through the component `w`,
/// the bridge maximizing (value(b') − value(b)) / dist, where dist counts a
/// shortest path from b to b' whose inner vertices all lie in `w`. A
/// non-negative maximal slope always exists (swap the endpoints).
pub fn max_slope_bridge(
    g: &Graph,
    resolved: &[bool],
    values: &Profile,
    component: &[usize],
    tie: TieBreak,
) -> Result<Bridge> {
    let mut anchors: Vec<usize> = Vec::new();
    for &v in component {
        for &b in g.neighbors(v) {
            if resolved[b] && !anchors.contains(&b) {
                anchors.push(b);
            }
        }
    }
    anchors.sort_unstable();
    max_slope_bridge_impl(g, resolved, values.values(), component, &anchors, tie)
}

fn max_slope_bridge_impl(
    g: &Graph,
    _resolved: &[bool],
    values: &[f64],
    component: &[usize],
    anchors: &[usize],
    tie: TieBreak,
) -> Result<Bridge> {
    if anchors.len() < 2 {
        return Err(Error::InvalidParameter(
            "component touches fewer than two resolved vertices".into(),
        ));
    }
    let n = g.n();
    let mut in_comp = vec![false; n];
    for &v in component {
        in_comp[v] = true;
    }

    // dists[i][v]: length of a shortest b_i -> v walk whose inner vertices
    // stay in the component; parents give a canonical such path.
    let mut best: Option<(f64, usize, (usize, usize))> = None; // slope, dist, (b, b')
    let mut dist_maps = Vec::with_capacity(anchors.len());
    for &b in anchors {
        dist_maps.push(bfs_through_component(g, b, &in_comp, tie));
    }

    let ordered: Box<dyn Iterator<Item = (usize, usize)>> = match tie {
        TieBreak::Primary => Box::new(
            (0..anchors.len()).flat_map(|i| (0..anchors.len()).map(move |j| (i, j))),
        ),
        TieBreak::Alternate => Box::new(
            (0..anchors.len())
                .rev()
                .flat_map(|i| (0..anchors.len()).rev().map(move |j| (i, j))),
        ),
    };
    for (i, j) in ordered {
        if i == j {
            continue;
        }
        let (b, bp) = (anchors[i], anchors[j]);
        let Some(d) = dist_maps[i].0[bp] else { continue };
        let slope = (values[bp] - values[b]) / d as f64;
        let better = match best {
            None => true,
            Some((bs, bd, _)) => {
                let scale = bs.abs().max(slope.abs()).max(1.0);
                if (slope - bs).abs() <= SLOPE_TIE_REL * scale {
                    match tie {
                        TieBreak::Primary => d < bd,
                        TieBreak::Alternate => d > bd,
                    }
                } else {
                    slope > bs
                }
            }
        };
        if better {
            best = Some((slope, d, (i, j)));
        }
    }

    let (slope, d, (i, j)) = best.ok_or_else(|| {
        Error::InvalidParameter("no bridge exists through the component".into())
    })?;
    let (b, bp) = (anchors[i], anchors[j]);
    let mut path = vec![bp];
    let mut cur = bp;
    let mut remaining = d;
    while cur != b {
        cur = dist_maps[i].1[cur].expect("parent chain broken");
        path.push(cur);
        remaining -= 1;
    }
    debug_assert_eq!(remaining, 0);
    path.reverse();
    Ok(Bridge { path, slope })
}

/// BFS from `src` where the first hop must enter the component and all later
/// hops stay inside it, except that any resolved vertex adjacent to the
/// component is a valid terminal. Returns (distances, parents).
fn bfs_through_component(
    g: &Graph,
    src: usize,
    in_comp: &[bool],
    tie: TieBreak,
) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let n = g.n();
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::new();
    let push_nbrs = |u: usize,
                         du: usize,
                         dist: &mut Vec<Option<usize>>,
                         parent: &mut Vec<Option<usize>>,
                         queue: &mut VecDeque<usize>| {
        let nbrs = g.neighbors(u);
        let iter: Box<dyn Iterator<Item = &usize>> = match tie {
            TieBreak::Primary => Box::new(nbrs.iter()),
            TieBreak::Alternate => Box::new(nbrs.iter().rev()),
        };
        for &v in iter {
            if dist[v].is_none() && v != src {
                dist[v] = Some(du + 1);
                parent[v] = Some(u);
                // only component vertices may be expanded further
                if in_comp[v] {
                    queue.push_back(v);
                }
            }
        }
    };
    // first hop: only into the component
    {
        let nbrs = g.neighbors(src);
        let iter: Box<dyn Iterator<Item = &usize>> = match tie {
            TieBreak::Primary => Box::new(nbrs.iter()),
            TieBreak::Alternate => Box::new(nbrs.iter().rev()),
        };
        for &v in iter {
            if in_comp[v] && dist[v].is_none() {
                dist[v] = Some(1);
                parent[v] = Some(src);
                queue.push_back(v);
            }
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        push_nbrs(u, du, &mut dist, &mut parent, &mut queue);
    }
    (dist, parent)
}

/// max over interior vertices of |Δ∞ h|; 0 means infinity harmonic.
pub fn verify_extension(g: &Graph, h: &Profile) -> f64 {
    g.interior()
        .iter()
        .map(|&v| infinity_laplacian(g, h, v).map(f64::abs).unwrap_or(0.0))
        .fold(0.0, f64::max)
}

/// Cross-module consistency oracle: runs the midrange dynamics from `f0`
/// under a round-robin schedule and reports whether it approached the
/// extension of `f0`'s boundary values within `tol` by `horizon` steps.
pub fn lipschitz_fixed_point_check(
    g: &Graph,
    f0: &Profile,
    horizon: u64,
    tol: f64,
) -> Result<bool> {
    let ext = extend(g, f0)?;
    let cfg = crate::dynamics::RunConfig {
        p: crate::update::PValue::Infinity,
        epsilon: tol,
        max_steps: horizon.max(1),
        stop_mode: crate::dynamics::StopMode::BoundaryApprox,
        record_every: 0,
        solver: crate::update::SolverConfig::default(),
    };
    let rec = crate::dynamics::run(g, f0, &Schedule::round_robin(), &cfg)?;
    let gap = crate::profile::lp_distance(
        &rec.final_profile,
        &ext.h,
        crate::profile::Norm::Infinity,
    )?;
    Ok(gap <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn segment_boundary(half: usize, left: f64, right: f64) -> (Graph, Profile) {
        let g = generators::segment(half, true).unwrap();
        let mut bv = Profile::constant(g.n(), 0.0);
        bv.set(0, left);
        bv.set(2 * half, right);
        (g, bv)
    }

    #[test]
    fn segment_extension_is_linear() {
        let (g, bv) = segment_boundary(4, 0.0, 1.0);
        let ext = extend(&g, &bv).unwrap();
        for i in 0..=8 {
            assert!((ext.h[i] - i as f64 / 8.0).abs() < 1e-12, "h({i}) = {}", ext.h[i]);
        }
        assert!(ext.residual <= 1e-12);
        // the single bridge is the whole segment with slope 1/(2n)
        assert!(matches!(
            ext.audit.as_slice(),
            [AuditEntry::BridgeFixed { path, slope }]
                if path.len() == 9 && (slope - 0.125).abs() < 1e-15
        ));
    }

    #[test]
    fn star_center_is_midrange_of_extremes() {
        // boundary leaves 0, 0.3, 1 around one interior center
        let g = Graph::with_boundary(4, &[(0, 1), (0, 2), (0, 3)], &[1, 2, 3]).unwrap();
        let bv = Profile::new(vec![0.0, 0.0, 0.3, 1.0]).unwrap();
        let ext = extend(&g, &bv).unwrap();
        assert!((ext.h[0] - 0.5).abs() < 1e-15);
        assert!(ext.residual <= 1e-15);
    }

    #[test]
    fn single_anchor_component_is_constant() {
        // path: b - v1 - v2 with only b on the boundary
        let g = Graph::with_boundary(3, &[(0, 1), (1, 2)], &[0]).unwrap();
        let bv = Profile::new(vec![0.7, 0.0, 0.0]).unwrap();
        let ext = extend(&g, &bv).unwrap();
        assert_eq!(ext.h.values(), &[0.7, 0.7, 0.7]);
        assert!(matches!(ext.audit.as_slice(), [AuditEntry::ConstantComponent { .. }]));
    }

    #[test]
    fn equal_boundary_values_give_constant_extension() {
        let (g, bv) = segment_boundary(3, 0.4, 0.4);
        let ext = extend(&g, &bv).unwrap();
        assert!(ext.h.values().iter().all(|&x| (x - 0.4).abs() < 1e-15));
    }

    #[test]
    fn perturbed_extension_has_residual() {
        let (g, bv) = segment_boundary(4, 0.0, 1.0);
        let mut h = extend(&g, &bv).unwrap().h;
        h.set(3, h[3] + 0.1);
        assert!(verify_extension(&g, &h) >= 0.1 - 1e-12);
    }

    #[test]
    fn boundary_values_agree_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for seed in 0..25 {
            let g = generators::random_connected(14, 0.25, seed).unwrap();
            let Some(b) = generators::random_independent_boundary(&g, 3, &mut rng) else {
                continue;
            };
            let edges: Vec<_> = g.edges().collect();
            let g = Graph::with_boundary(g.n(), &edges, &b).unwrap();
            let mut bv = Profile::constant(g.n(), 0.0);
            for &v in &b {
                bv.set(v, rng.random::<f64>());
            }
            let ext = extend(&g, &bv).unwrap();
            for &v in &b {
                assert_eq!(ext.h[v], bv[v], "boundary value must be copied bitwise");
            }
            let range = b.iter().map(|&v| bv[v]).fold(f64::NEG_INFINITY, f64::max)
                - b.iter().map(|&v| bv[v]).fold(f64::INFINITY, f64::min);
            assert!(ext.residual <= 1e-10 * range.max(1e-30));
        }
    }

    #[test]
    fn extension_monotone_and_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for seed in 0..15 {
            let g0 = generators::random_connected(12, 0.3, seed).unwrap();
            let Some(b) = generators::random_independent_boundary(&g0, 3, &mut rng) else {
                continue;
            };
            let edges: Vec<_> = g0.edges().collect();
            let g = Graph::with_boundary(g0.n(), &edges, &b).unwrap();

            let mut lo = Profile::constant(g.n(), 0.0);
            let mut hi = Profile::constant(g.n(), 0.0);
            for &v in &b {
                let x: f64 = rng.random();
                lo.set(v, x);
                hi.set(v, (x + rng.random::<f64>() * 0.5).min(1.0));
            }
            let ext_lo = extend(&g, &lo).unwrap().h;
            let ext_hi = extend(&g, &hi).unwrap().h;
            for v in 0..g.n() {
                assert!(ext_lo[v] <= ext_hi[v] + 1e-10, "monotonicity at {v}");
            }

            let (a, c) = (1.7, 0.3);
            let scaled = Profile::new(lo.values().iter().map(|x| a * x + c).collect()).unwrap();
            let ext_scaled = extend(&g, &scaled).unwrap().h;
            for v in 0..g.n() {
                assert!((ext_scaled[v] - (a * ext_lo[v] + c)).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn bridge_gradients_match_slope() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for seed in 30..40 {
            let g0 = generators::random_connected(16, 0.25, seed).unwrap();
            let Some(b) = generators::random_independent_boundary(&g0, 4, &mut rng) else {
                continue;
            };
            let edges: Vec<_> = g0.edges().collect();
            let g = Graph::with_boundary(g0.n(), &edges, &b).unwrap();
            let mut bv = Profile::constant(g.n(), 0.0);
            for &v in &b {
                bv.set(v, rng.random::<f64>());
            }
            let ext = extend(&g, &bv).unwrap();
            for entry in &ext.audit {
                if let AuditEntry::BridgeFixed { path, slope } = entry {
                    for w in path.windows(2) {
                        let grad = ext.h[w[1]] - ext.h[w[0]];
                        assert!((grad - slope).abs() <= 1e-12, "gradient {grad} vs slope {slope}");
                    }
                }
            }
        }
    }

    #[test]
    fn tie_break_orders_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 100..130 {
            let g0 = generators::random_connected(15, 0.3, seed).unwrap();
            let Some(b) = generators::random_independent_boundary(&g0, 4, &mut rng) else {
                continue;
            };
            let edges: Vec<_> = g0.edges().collect();
            let g = Graph::with_boundary(g0.n(), &edges, &b).unwrap();
            let mut bv = Profile::constant(g.n(), 0.0);
            for &v in &b {
                bv.set(v, rng.random::<f64>());
            }
            let a = extend_with(&g, &bv, TieBreak::Primary).unwrap().h;
            let c = extend_with(&g, &bv, TieBreak::Alternate).unwrap().h;
            for v in 0..g.n() {
                assert!((a[v] - c[v]).abs() <= 1e-9, "tie-break mismatch at {v}");
            }
        }
    }

    #[test]
    fn greedy_bridge_exists_for_every_rising_edge() {
        // For the computed extension and any edge with h(w) > h(v), a bridge
        // through that edge exists whose gradients all reach h(w) − h(v):
        // ascend through max-neighbours from w, descend through min-neighbours
        // from v.
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for seed in 50..65 {
            let g0 = generators::random_connected(14, 0.3, seed).unwrap();
            let Some(b) = generators::random_independent_boundary(&g0, 3, &mut rng) else {
                continue;
            };
            let edges: Vec<_> = g0.edges().collect();
            let g = Graph::with_boundary(g0.n(), &edges, &b).unwrap();
            let mut bv = Profile::constant(g.n(), 0.0);
            for &v in &b {
                bv.set(v, rng.random::<f64>());
            }
            let h = extend(&g, &bv).unwrap().h;
            for (v, w) in g.edges() {
                let (v, w) = if h[w] > h[v] { (v, w) } else { (w, v) };
                let gap = h[w] - h[v];
                if gap <= 1e-9 {
                    continue;
                }
                let mut grads = vec![gap];
                // ascend from w to the boundary; values rise by >= gap each
                // hop, so the walk visits distinct vertices
                let mut cur = w;
                let mut hops = 0;
                while !g.is_boundary(cur) {
                    let up = *g
                        .neighbors(cur)
                        .iter()
                        .max_by(|&&a, &&c| h[a].partial_cmp(&h[c]).unwrap())
                        .unwrap();
                    grads.push(h[up] - h[cur]);
                    cur = up;
                    hops += 1;
                    assert!(hops <= g.n(), "greedy ascent failed to reach the boundary");
                }
                // descend from v to the boundary
                let mut cur = v;
                let mut hops = 0;
                while !g.is_boundary(cur) {
                    let down = *g
                        .neighbors(cur)
                        .iter()
                        .min_by(|&&a, &&c| h[a].partial_cmp(&h[c]).unwrap())
                        .unwrap();
                    grads.push(h[cur] - h[down]);
                    cur = down;
                    hops += 1;
                    assert!(hops <= g.n(), "greedy descent failed to reach the boundary");
                }
                for grad in grads {
                    assert!(grad >= gap - 1e-9, "gradient {grad} below edge gap {gap}");
                }
            }
        }
    }

    #[test]
    fn fixed_point_check_on_segment() {
        let (g, bv) = segment_boundary(4, 0.0, 1.0);
        let mut f0 = bv.clone();
        for v in 1..8 {
            f0.set(v, 0.0);
        }
        assert!(lipschitz_fixed_point_check(&g, &f0, 10_000, 1e-6).unwrap());

        // starting at the extension itself stays there
        let h = extend(&g, &bv).unwrap().h;
        assert!(lipschitz_fixed_point_check(&g, &h, 1, 1e-12).unwrap());
    }

    #[test]
    fn upper_envelope_distances_to_extension() {
        // segment half 4, boundary 0/1: h(i) = i/8; the all-ones interior
        // envelope sits at l1 distance 7 - 28/8 = 3.5 and sup distance 7/8
        let (g, bv) = segment_boundary(4, 0.0, 1.0);
        let h = extend(&g, &bv).unwrap().h;
        let f = crate::presets::upper_envelope(&g, &bv).unwrap();
        let l1 = crate::profile::lp_distance(&f, &h, crate::profile::Norm::One).unwrap();
        let sup = crate::profile::lp_distance(&f, &h, crate::profile::Norm::Infinity).unwrap();
        assert!((l1 - 3.5).abs() < 1e-12);
        assert!((sup - 0.875).abs() < 1e-12);
    }

    #[test]
    fn max_slope_bridge_matches_brute_force() {
        // oracle: enumerate all anchor pairs, take BFS distances through the
        // interior, and maximize the slope directly
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for seed in 300..320 {
            let g0 = generators::random_connected(15, 0.3, seed).unwrap();
            let Some(b) = generators::random_independent_boundary(&g0, 4, &mut rng) else {
                continue;
            };
            let edges: Vec<_> = g0.edges().collect();
            let g = Graph::with_boundary(15, &edges, &b).unwrap();
            let mut bv = Profile::constant(15, 0.0);
            for &v in &b {
                bv.set(v, rng.random());
            }
            let component: Vec<usize> = g.interior().to_vec();
            if component.is_empty() {
                continue;
            }
            let resolved: Vec<bool> = (0..15).map(|v| g.is_boundary(v)).collect();

            let mut best = f64::NEG_INFINITY;
            for &src in &b {
                // BFS allowed only through interior vertices
                let mut dist = [usize::MAX; 15];
                let mut queue = std::collections::VecDeque::new();
                for &w in g.neighbors(src) {
                    if !g.is_boundary(w) {
                        dist[w] = 1;
                        queue.push_back(w);
                    }
                }
                while let Some(u) = queue.pop_front() {
                    for &w in g.neighbors(u) {
                        if !g.is_boundary(w) && dist[w] == usize::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                for &dst in &b {
                    if dst == src {
                        continue;
                    }
                    let through: Option<usize> = g
                        .neighbors(dst)
                        .iter()
                        .filter(|&&w| !g.is_boundary(w) && dist[w] != usize::MAX)
                        .map(|&w| dist[w] + 1)
                        .min();
                    if let Some(d) = through {
                        best = best.max((bv[dst] - bv[src]) / d as f64);
                    }
                }
            }
            if best == f64::NEG_INFINITY {
                continue; // no bridge through the single interior component
            }
            let bridge =
                max_slope_bridge(&g, &resolved, &bv, &component, TieBreak::Primary).unwrap();
            assert!(
                (bridge.slope - best).abs() <= 1e-12,
                "seed {seed}: algorithm slope {} vs brute force {best}",
                bridge.slope
            );
            // endpoints in the boundary, inner vertices interior, consistent span
            assert!(g.is_boundary(bridge.path[0]));
            assert!(g.is_boundary(*bridge.path.last().unwrap()));
            assert!(bridge.path.len() >= 3);
            for &v in &bridge.path[1..bridge.path.len() - 1] {
                assert!(!g.is_boundary(v));
            }
        }
    }

    #[test]
    fn fixed_point_check_on_random_graph_from_upper_envelope() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut done = 0;
        let mut seed = 200;
        while done < 3 {
            seed += 1;
            let g0 = generators::random_connected(20, 0.2, seed).unwrap();
            let Some(b) = generators::random_independent_boundary(&g0, 4, &mut rng) else {
                continue;
            };
            let edges: Vec<_> = g0.edges().collect();
            let g = Graph::with_boundary(20, &edges, &b).unwrap();
            let mut bv = Profile::constant(20, 0.0);
            for &v in &b {
                bv.set(v, rng.random());
            }
            let f0 = crate::presets::upper_envelope(&g, &bv).unwrap();
            assert!(lipschitz_fixed_point_check(&g, &f0, 200_000, 1e-6).unwrap());
            done += 1;
        }
    }
}
