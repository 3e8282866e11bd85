//! Initial opinion profiles for the generated graph families.
//!
//! Each preset reproduces the initial condition its construction is analysed
//! with, addressed through the family's documented index layout. All preset
//! values lie in [0, 1].

use crate::error::{Error, Result};
use crate::generators::{AccordionLayout, GraphFamilySpec};
use crate::graph::Graph;
use crate::profile::Profile;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Preset {
    /// 0 on the first half of the cycle, 1 on `v >= n/2`.
    CycleStep,
    /// On the cycle of size 4q: 1/2 at the two vertices at distance q from 0,
    /// 1 beyond them, 0 in between.
    SecondCycle,
    /// 0 left of the path center, 1 right of it, 1/2 at the center.
    BarbellStep,
    /// 0 on the half of each path nearer the left hub, 1 on the other half.
    ParallelHalves,
    /// Leaf values 0 / 1 and a linear ramp with end offsets n^{-p/(p-1)}.
    TnLinear { p: f64 },
    /// 0 on the left cliques and left half, 1/2 at the center, 1 on the right.
    HdnStep,
    /// 0 on the bottom chain and the lower path halves, 1 on the top, 1/2 at
    /// the path midpoints.
    AccordionStep,
    /// Boundary endpoints at 1, interior 0 (boundary segment construction).
    BoundaryOnes,
    /// Constant profile.
    Constant { value: f64 },
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::CycleStep => "cycle_step",
            Preset::SecondCycle => "second_cycle",
            Preset::BarbellStep => "barbell_step",
            Preset::ParallelHalves => "parallel_halves",
            Preset::TnLinear { .. } => "tn_linear",
            Preset::HdnStep => "hdn_step",
            Preset::AccordionStep => "accordion_step",
            Preset::BoundaryOnes => "boundary_ones",
            Preset::Constant { .. } => "const",
        }
    }

    /// Parses `cycle_step`, `tn_linear:p=1.5`, `const:0.5`, ...
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("preset `{s}`: {msg}"));
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        match name {
            "cycle_step" => Ok(Preset::CycleStep),
            "second_cycle" => Ok(Preset::SecondCycle),
            "barbell_step" => Ok(Preset::BarbellStep),
            "parallel_halves" => Ok(Preset::ParallelHalves),
            "tn_linear" => {
                let p = rest
                    .strip_prefix("p=")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("expected tn_linear:p=<finite exponent>"))?;
                if !(p > 1.0) || !f64::is_finite(p) {
                    return Err(bad("exponent must be finite and > 1"));
                }
                Ok(Preset::TnLinear { p })
            }
            "hdn_step" => Ok(Preset::HdnStep),
            "accordion_step" => Ok(Preset::AccordionStep),
            "boundary_ones" => Ok(Preset::BoundaryOnes),
            "const" => {
                let value: f64 = rest.parse().map_err(|_| bad("expected const:<value>"))?;
                if !(0.0..=1.0).contains(&value) {
                    return Err(bad("constant must lie in [0, 1]"));
                }
                Ok(Preset::Constant { value })
            }
            _ => Err(bad("unknown preset")),
        }
    }
}

fn mismatch(preset: &Preset, family: &GraphFamilySpec) -> Error {
    Error::PresetMismatch {
        preset: preset.name().into(),
        family: family.family_name().into(),
    }
}

/// Builds the preset profile for a graph produced by `family`.
pub fn preset_profile(family: &GraphFamilySpec, preset: &Preset) -> Result<Profile> {
    match (preset, family) {
        (Preset::Constant { value }, _) => {
            let (g, _) = family.build()?;
            Ok(Profile::constant(g.n(), *value))
        }
        (Preset::CycleStep, GraphFamilySpec::Cycle { n }) => Profile::new(
            (0..*n).map(|v| if 2 * v >= *n { 1.0 } else { 0.0 }).collect(),
        ),
        (Preset::SecondCycle, GraphFamilySpec::Cycle { n }) => {
            if n % 4 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "second_cycle needs 4 | n, got n={n}"
                )));
            }
            let q = (n / 4) as i64;
            Profile::new(
                (0..*n as i64)
                    .map(|i| {
                        let v = if i <= 2 * q { i } else { i - 4 * q };
                        if v.abs() == q {
                            0.5
                        } else if v.abs() > q {
                            1.0
                        } else {
                            0.0
                        }
                    })
                    .collect(),
            )
        }
        (Preset::BarbellStep, GraphFamilySpec::Barbell { clique }) => {
            let nt = *clique;
            let mut vals = vec![0.0; 4 * nt - 1];
            for (v, x) in vals.iter_mut().enumerate() {
                *x = if v < nt {
                    0.0
                } else if v == nt {
                    0.5
                } else if v <= 2 * nt {
                    1.0
                } else if v <= 3 * nt - 1 {
                    0.0 // extra vertices of the left clique
                } else {
                    1.0 // extra vertices of the right clique
                };
            }
            Profile::new(vals)
        }
        (Preset::ParallelHalves, GraphFamilySpec::ParallelPaths { k, len }) => {
            let mut vals = vec![0.0; k * (len - 1) + 2];
            vals[1] = 1.0;
            for j in 0..*k {
                for i in 1..*len {
                    // position i along the path; the midpoint joins the 0 side
                    vals[2 + j * (len - 1) + (i - 1)] = if 2 * i <= *len { 0.0 } else { 1.0 };
                }
            }
            Profile::new(vals)
        }
        (Preset::TnLinear { p }, GraphFamilySpec::TreeTn { arm }) => {
            let n = *arm;
            let q = (n as f64).powf(-p / (p - 1.0));
            let mut vals = vec![0.0; 6 * n + 1];
            for c in 0..=2 * n {
                vals[c] = q + c as f64 * (1.0 - 2.0 * q) / (2.0 * n as f64);
            }
            for leaf in 2 * n + 1..=4 * n {
                vals[leaf] = 0.0;
            }
            for leaf in 4 * n + 1..=6 * n {
                vals[leaf] = 1.0;
            }
            Profile::new(vals)
        }
        (Preset::HdnStep, GraphFamilySpec::Hdn { d, n }) => {
            crate::generators::hdn(*d, *n)?; // parameter validation
            let mut vals = vec![0.0; 4 * n + 1];
            for c in 0..=2 * n {
                vals[c] = if c < *n {
                    0.0
                } else if c == *n {
                    0.5
                } else {
                    1.0
                };
            }
            for w in 2 * n + 1..=3 * n {
                vals[w] = 0.0;
            }
            for u in 3 * n + 1..=4 * n {
                vals[u] = 1.0;
            }
            Profile::new(vals)
        }
        (Preset::AccordionStep, GraphFamilySpec::Accordion { d, n }) => {
            let lay = AccordionLayout::new(*d, *n)?;
            let mut vals = vec![0.0; lay.total()];
            let m = lay.m as i64;
            for k in -m..=m {
                for j in 0..*d {
                    vals[lay.top(k, j)] = 1.0;
                    vals[lay.bot(k, j)] = 0.0;
                }
            }
            for c in -(*n as i64)..=*n as i64 {
                let x = if c < 0 {
                    1.0
                } else if c == 0 {
                    0.5
                } else {
                    0.0
                };
                vals[lay.left_path(c)] = x;
                vals[lay.right_path(c)] = x;
            }
            Profile::new(vals)
        }
        (Preset::BoundaryOnes, GraphFamilySpec::Segment { half, boundary: true }) => {
            let mut vals = vec![0.0; 2 * half + 1];
            vals[0] = 1.0;
            vals[2 * half] = 1.0;
            Profile::new(vals)
        }
        _ => Err(mismatch(preset, family)),
    }
}

/// The upper envelope of boundary data: boundary values on B, 1 on the
/// interior. The standard worst-case start for boundary runs.
pub fn upper_envelope(g: &Graph, boundary_values: &Profile) -> Result<Profile> {
    boundary_values.check_dimension(g)?;
    Profile::new(
        (0..g.n())
            .map(|v| if g.is_boundary(v) { boundary_values[v] } else { 1.0 })
            .collect(),
    )
}
