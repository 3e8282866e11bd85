//! File formats for graphs, boundary data, and opinion profiles.
//!
//! Edge-list file: first non-comment line is `n m`, followed by `m` lines
//! `u v` with `0 <= u < v < n`, whitespace separated, 0-indexed decimal.
//! Boundary and profile files contain `v value` lines. Lines starting with
//! `#` and blank lines are ignored everywhere.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::Profile;
use std::path::Path;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the edge-list format into `(n, edges)`.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let (lno, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty edge-list file"))?;
    let mut it = header.split_ascii_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(lno, "expected header `n m`"))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(lno, "expected header `n m`"))?;
    if it.next().is_some() {
        return Err(parse_err(lno, "trailing tokens after header"));
    }

    let mut edges = Vec::with_capacity(m);
    for (lno, line) in lines {
        let mut it = line.split_ascii_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lno, "expected edge `u v`"))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lno, "expected edge `u v`"))?;
        if it.next().is_some() {
            return Err(parse_err(lno, "trailing tokens after edge"));
        }
        if u >= v {
            return Err(parse_err(lno, format!("edges must satisfy u < v, got {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    Ok((n, edges))
}

/// Parses `v value` lines, checking for duplicates.
pub fn parse_vertex_values(text: &str) -> Result<Vec<(usize, f64)>> {
    let mut out: Vec<(usize, f64)> = Vec::new();
    for (lno, line) in content_lines(text) {
        let mut it = line.split_ascii_whitespace();
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lno, "expected `v value`"))?;
        let x: f64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lno, "expected `v value`"))?;
        if it.next().is_some() {
            return Err(parse_err(lno, "trailing tokens"));
        }
        if !x.is_finite() {
            return Err(parse_err(lno, "value must be finite"));
        }
        if out.iter().any(|&(u, _)| u == v) {
            return Err(parse_err(lno, format!("duplicate entry for vertex {v}")));
        }
        out.push((v, x));
    }
    Ok(out)
}

/// Parses a boundary file; values are checked to lie in `[0, 1]`.
pub fn parse_boundary(text: &str) -> Result<Vec<(usize, f64)>> {
    let pairs = parse_vertex_values(text)?;
    for &(v, x) in &pairs {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidParameter(format!(
                "boundary value {x} at vertex {v} outside [0, 1]"
            )));
        }
    }
    Ok(pairs)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Loads and validates a graph from an edge-list file. When a boundary file
/// is given, its vertices become the boundary set and the returned profile
/// carries the boundary values (zero elsewhere).
pub fn load_graph(path: &Path, boundary_path: Option<&Path>) -> Result<(Graph, Option<Profile>)> {
    let (n, edges) = parse_edge_list(&read(path)?)?;
    match boundary_path {
        None => Ok((Graph::new(n, &edges)?, None)),
        Some(bp) => {
            let pairs = parse_boundary(&read(bp)?)?;
            let bset: Vec<usize> = pairs.iter().map(|&(v, _)| v).collect();
            let graph = Graph::with_boundary(n, &edges, &bset)?;
            let mut values = vec![0.0; n];
            for (v, x) in pairs {
                if v >= n {
                    return Err(Error::VertexOutOfRange { v, n });
                }
                values[v] = x;
            }
            Ok((graph, Some(Profile::new(values)?)))
        }
    }
}

/// Loads a full opinion profile for a graph on `n` vertices. Vertices missing
/// from the file default to 0.
pub fn load_profile(path: &Path, n: usize) -> Result<Profile> {
    let mut values = vec![0.0; n];
    for (v, x) in parse_vertex_values(&read(path)?)? {
        if v >= n {
            return Err(Error::VertexOutOfRange { v, n });
        }
        values[v] = x;
    }
    Profile::new(values)
}
