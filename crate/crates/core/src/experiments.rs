//! Reproduction harness: Monte Carlo energy-decay estimates, scaling studies
//! with log-log exponent fits, and oscillation-floor certification for the
//! extremal constructions.

use crate::dynamics::{run_ensemble, RunConfig, StopMode, Stopping};
use crate::error::{Error, Result};
use crate::generators::GraphFamilySpec;
use crate::graph::Graph;
use crate::order_index::OrderedValueIndex;
use crate::presets::{preset_profile, Preset};
use crate::profile::{energy, energy_delta_at, oscillation, Profile};
use crate::rates::{energy_drop_constant, rate_function};
use crate::schedule::Schedule;
use crate::update::{update_value, PValue, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

// ---------------------------------------------------------------------------
// One-step energy decay versus the predicted rate

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SampleMode {
    /// Every sample updates a fresh copy of the initial profile.
    Fresh,
    /// Samples are taken along one evolving trajectory.
    AlongTrajectory,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnergyDecayReport {
    pub estimate: f64,
    pub std_error: f64,
    pub bound: f64,
    pub samples: u32,
    pub pass: bool,
}

/// Monte Carlo estimate of the expected one-step relative energy drop under
/// a uniformly random update vertex, compared against c_p F(n, p, D).
/// Passes when estimate + 3 SE >= bound.
pub fn energy_decay_test(
    g: &Graph,
    f0: &Profile,
    p: f64,
    samples: u32,
    seed: u64,
    mode: SampleMode,
) -> Result<EnergyDecayReport> {
    f0.check_dimension(g)?;
    if oscillation(f0) == 0.0 {
        return Err(Error::InvalidParameter(
            "energy decay needs a non-constant initial profile".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let pv = PValue::finite(p)?;
    let solver = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = f0.clone();
    let mut e = energy(g, &f, p)?;
    let mut drops = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        if e <= 1e-300 {
            break; // trajectory fully converged
        }
        let v = rng.random_range(0..g.n());
        let y = update_value(g, &f, v, pv, &solver)?;
        let delta = energy_delta_at(g, &f, v, y, p);
        drops.push((-delta / e).max(0.0));
        if mode == SampleMode::AlongTrajectory {
            f.set(v, y);
            e += delta;
        }
    }
    let n = drops.len() as f64;
    let mean = drops.iter().sum::<f64>() / n;
    let var = drops.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n - 1.0).max(1.0);
    let std_error = (var / n).sqrt();
    let bound = energy_drop_constant(p) * rate_function(g.n(), p, g.average_degree());
    Ok(EnergyDecayReport {
        estimate: mean,
        std_error,
        bound,
        samples: drops.len() as u32,
        pass: mean + 3.0 * std_error >= bound,
    })
}

// ---------------------------------------------------------------------------
// Scaling studies

/// Ordinary least squares of y on x.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn least_squares(xs: &[f64], ys: &[f64]) -> Fit {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    Fit {
        slope,
        intercept,
        r2: if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 },
    }
}

/// log-log slope of medians against sizes.
pub fn log_log_fit(sizes: &[f64], values: &[f64]) -> Fit {
    let xs: Vec<f64> = sizes.iter().map(|s| s.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    least_squares(&xs, &ys)
}

/// Which family is swept, with its size parameters.
#[derive(Clone, Debug, Serialize)]
pub enum SweepFamily {
    /// Cycle sizes n with the half-and-half step start.
    Cycle { sizes: Vec<usize> },
    /// Barbell clique sizes; vertex count is 4ñ - 1.
    Barbell { cliques: Vec<usize> },
    /// Boundary segments (half-lengths) with endpoint value 1, interior 0;
    /// stops on the sup distance to the extension (p = inf only).
    BoundarySegment { halves: Vec<usize> },
    /// Leaf-tree arm sizes, for monotone trend checks at small p.
    TreeTn { arms: Vec<usize> },
    /// Clique-fringed segments at fixed d, for monotone trend checks.
    Hdn { d: usize, ns: Vec<usize> },
}

impl SweepFamily {
    fn cells(&self, p: PValue) -> Result<Vec<(usize, Graph, Profile, StopMode)>> {
        let mut out = Vec::new();
        match self {
            SweepFamily::Cycle { sizes } => {
                for &n in sizes {
                    let fam = GraphFamilySpec::Cycle { n };
                    let (g, _) = fam.build()?;
                    let f0 = preset_profile(&fam, &Preset::CycleStep)?;
                    out.push((n, g, f0, StopMode::Consensus));
                }
            }
            SweepFamily::Barbell { cliques } => {
                for &c in cliques {
                    let fam = GraphFamilySpec::Barbell { clique: c };
                    let (g, _) = fam.build()?;
                    let f0 = preset_profile(&fam, &Preset::BarbellStep)?;
                    out.push((c, g, f0, StopMode::Consensus));
                }
            }
            SweepFamily::BoundarySegment { halves } => {
                for &h in halves {
                    let fam = GraphFamilySpec::Segment { half: h, boundary: true };
                    let (g, _) = fam.build()?;
                    let f0 = preset_profile(&fam, &Preset::BoundaryOnes)?;
                    out.push((h, g, f0, StopMode::BoundaryApprox));
                }
            }
            SweepFamily::TreeTn { arms } => {
                let p = match p {
                    PValue::Finite(p) => p,
                    PValue::Infinity => {
                        return Err(Error::InvalidParameter(
                            "tree sweep needs a finite exponent".into(),
                        ))
                    }
                };
                for &a in arms {
                    let fam = GraphFamilySpec::TreeTn { arm: a };
                    let (g, _) = fam.build()?;
                    let f0 = preset_profile(&fam, &Preset::TnLinear { p })?;
                    out.push((a, g, f0, StopMode::Consensus));
                }
            }
            SweepFamily::Hdn { d, ns } => {
                for &n in ns {
                    let fam = GraphFamilySpec::Hdn { d: *d, n };
                    let (g, _) = fam.build()?;
                    let f0 = preset_profile(&fam, &Preset::HdnStep)?;
                    out.push((n, g, f0, StopMode::Consensus));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingSpec {
    pub sweep: SweepFamily,
    pub p: PValue,
    pub eps: f64,
    pub reps: u64,
    pub seed_base: u64,
    pub max_steps: u64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScalingPoint {
    /// The family's size parameter for this cell.
    pub param: usize,
    /// Vertex count (the x-coordinate of the fit).
    pub size: usize,
    pub seed: u64,
    pub stopping: Stopping,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingResult {
    pub points: Vec<ScalingPoint>,
    /// (vertex count, median tau); censored runs sort above all finite times.
    pub medians: Vec<(usize, f64)>,
    pub censored: usize,
    /// Present when at least three sizes have uncensored medians.
    pub fit: Option<Fit>,
    /// Medians strictly increasing in size (the trend certificate used where
    /// the exponent is too steep to fit at desk scale).
    pub monotone_medians: bool,
}

pub fn scaling_study(spec: &ScalingSpec) -> Result<ScalingResult> {
    let cells = spec.sweep.cells(spec.p)?;
    if cells.len() < 3 {
        return Err(Error::InvalidParameter("scaling study needs >= 3 sizes".into()));
    }
    let mut points = Vec::new();
    let mut medians = Vec::new();
    let mut censored_total = 0usize;
    for (cell_idx, (param, g, f0, stop_mode)) in cells.iter().enumerate() {
        let cfg = RunConfig {
            p: spec.p,
            epsilon: spec.eps,
            max_steps: spec.max_steps,
            stop_mode: *stop_mode,
            record_every: 0,
            solver: SolverConfig::default(),
        };
        let seeds: Vec<u64> = (0..spec.reps)
            .map(|i| spec.seed_base.wrapping_add(10_000 * cell_idx as u64 + i))
            .collect();
        let summary = run_ensemble(g, f0, &cfg, &seeds)?;
        censored_total += summary.censored;
        for (seed, stopping) in &summary.outcomes {
            points.push(ScalingPoint {
                param: *param,
                size: g.n(),
                seed: *seed,
                stopping: *stopping,
            });
        }
        // median with censored runs pushed past the finite values
        let mut taus: Vec<Option<u64>> = summary
            .outcomes
            .iter()
            .map(|(_, s)| s.tau())
            .collect();
        taus.sort_by_key(|t| t.map_or(u64::MAX, |x| x));
        let mid = &taus[(taus.len() - 1) / 2..=taus.len() / 2];
        let median = match (mid.first().copied().flatten(), mid.last().copied().flatten()) {
            (Some(a), Some(b)) => Some((a as f64 + b as f64) / 2.0),
            _ => None,
        };
        if let Some(m) = median {
            medians.push((g.n(), m));
        }
    }

    let fit = if medians.len() == cells.len() && medians.len() >= 3 {
        let xs: Vec<f64> = medians.iter().map(|&(s, _)| s as f64).collect();
        let ys: Vec<f64> = medians.iter().map(|&(_, m)| m.max(1.0)).collect();
        Some(log_log_fit(&xs, &ys))
    } else {
        None
    };
    let monotone_medians = medians.windows(2).all(|w| w[1].1 > w[0].1);
    Ok(ScalingResult {
        points,
        medians,
        censored: censored_total,
        fit,
        monotone_medians,
    })
}

// ---------------------------------------------------------------------------
// Oscillation floors

/// The extremal constructions with proven oscillation floors. Each carries
/// its hypotheses and certified horizon.
#[derive(Clone, Debug, Serialize)]
pub enum FloorConstruction {
    /// Cycle C_n (4 | n) with the step start: osc >= 1/2 up to n^3/2048.
    Cycle1 { n: usize },
    /// Cycle of size 4q with the plateau start (1/2 at distance q from the
    /// zero arc): osc >= 1/2 strictly before q^3/68.
    SecondCycle { quarter: usize },
    /// k parallel paths of length L (4 | L), halves start, midrange updates:
    /// osc >= 1/2 strictly before N L^2 / 2048 where N = k(L-1)+2.
    ParallelPaths { k: usize, len: usize },
    /// Leaf tree with the near-linear ramp: osc >= 1/2 strictly before
    /// n^{(2p-1)/(p-1)} / 4.
    TreeTn { arm: usize, p: f64 },
    /// Clique-fringed segment: osc >= 1/2 strictly before
    /// (1/25e) 2^{-p/(p-1)} n^{(2p-1)/(p-1)} d^{1/(p-1)}.
    Hdn { d: usize, n: usize, p: f64 },
    /// Accordion (2 <= p <= 3, n/d >= 12): osc >= 1/2 up to
    /// n^3 d^{(3-p)/(p-1)} / 6400.
    Accordion { d: usize, n: usize, p: f64 },
}

/// Largest integer strictly below `x` (for "every t < x" horizons).
fn strict_floor(x: f64) -> u64 {
    let c = x.ceil();
    let t = if c == x { x - 1.0 } else { x.floor() };
    t.max(0.0) as u64
}

impl FloorConstruction {
    pub fn name(&self) -> String {
        match self {
            FloorConstruction::Cycle1 { n } => format!("cycle1(n={n})"),
            FloorConstruction::SecondCycle { quarter } => format!("second_cycle(q={quarter})"),
            FloorConstruction::ParallelPaths { k, len } => format!("parallel(k={k},L={len})"),
            FloorConstruction::TreeTn { arm, p } => format!("tn(n={arm},p={p})"),
            FloorConstruction::Hdn { d, n, p } => format!("hdn(d={d},n={n},p={p})"),
            FloorConstruction::Accordion { d, n, p } => format!("accordion(d={d},n={n},p={p})"),
        }
    }

    /// Checks the construction hypotheses, naming the violated constraint.
    pub fn check_hypotheses(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            FloorConstruction::Cycle1 { n } => {
                if n % 4 != 0 || n == 0 {
                    return fail(format!("cycle1 requires 4 | n, got n={n}"));
                }
            }
            FloorConstruction::SecondCycle { quarter } => {
                if quarter < 1 {
                    return fail("second_cycle requires q >= 1".into());
                }
            }
            FloorConstruction::ParallelPaths { k, len } => {
                if len % 4 != 0 {
                    return fail(format!("parallel paths floor requires 4 | L, got L={len}"));
                }
                if k < 2 {
                    return fail(format!("parallel paths floor requires k >= 2, got k={k}"));
                }
            }
            FloorConstruction::TreeTn { arm, p } => {
                if arm < 1 {
                    return fail("tree floor requires n >= 1".into());
                }
                PValue::finite(p)?;
            }
            FloorConstruction::Hdn { d, n, p } => {
                if d < 2 || n == 0 || n % d != 0 {
                    return fail(format!("hdn floor requires d >= 2 and d | n, got d={d} n={n}"));
                }
                PValue::finite(p)?;
            }
            FloorConstruction::Accordion { d, n, p } => {
                if d < 2 || n == 0 || n % d != 0 {
                    return fail(format!(
                        "accordion floor requires d >= 2 and d | n, got d={d} n={n}"
                    ));
                }
                if n / d < 12 {
                    return fail(format!(
                        "accordion floor requires n/d >= 12, got n/d={}",
                        n / d
                    ));
                }
                if !(2.0..=3.0).contains(&p) {
                    return fail(format!("accordion floor requires 2 <= p <= 3, got p={p}"));
                }
            }
        }
        Ok(())
    }

    /// The certified step horizon: the oscillation stays >= 1/2 for every t up to and
    /// including this value, for every update sequence.
    pub fn horizon(&self) -> u64 {
        match *self {
            FloorConstruction::Cycle1 { n } => (n as u64).pow(3) / 2048,
            FloorConstruction::SecondCycle { quarter } => {
                ((quarter as u64).pow(3).saturating_sub(1)) / 68
            }
            FloorConstruction::ParallelPaths { k, len } => {
                let n = (k * (len - 1) + 2) as u64;
                (n * (len as u64) * (len as u64)).saturating_sub(1) / 2048
            }
            FloorConstruction::TreeTn { arm, p } => {
                strict_floor((arm as f64).powf((2.0 * p - 1.0) / (p - 1.0)) / 4.0)
            }
            FloorConstruction::Hdn { d, n, p } => strict_floor(
                (1.0 / (25.0 * std::f64::consts::E))
                    * 2f64.powf(-p / (p - 1.0))
                    * (n as f64).powf((2.0 * p - 1.0) / (p - 1.0))
                    * (d as f64).powf(1.0 / (p - 1.0)),
            ),
            FloorConstruction::Accordion { d, n, p } => {
                ((n as f64).powi(3) * (d as f64).powf((3.0 - p) / (p - 1.0)) / 6400.0).floor()
                    as u64
            }
        }
    }

    pub fn build(&self) -> Result<(Graph, Profile, PValue)> {
        match *self {
            FloorConstruction::Cycle1 { n } => {
                let fam = GraphFamilySpec::Cycle { n };
                Ok((fam.build()?.0, preset_profile(&fam, &Preset::CycleStep)?, PValue::Infinity))
            }
            FloorConstruction::SecondCycle { quarter } => {
                let fam = GraphFamilySpec::Cycle { n: 4 * quarter };
                Ok((fam.build()?.0, preset_profile(&fam, &Preset::SecondCycle)?, PValue::Infinity))
            }
            FloorConstruction::ParallelPaths { k, len } => {
                let fam = GraphFamilySpec::ParallelPaths { k, len };
                Ok((
                    fam.build()?.0,
                    preset_profile(&fam, &Preset::ParallelHalves)?,
                    PValue::Infinity,
                ))
            }
            FloorConstruction::TreeTn { arm, p } => {
                let fam = GraphFamilySpec::TreeTn { arm };
                Ok((
                    fam.build()?.0,
                    preset_profile(&fam, &Preset::TnLinear { p })?,
                    PValue::finite(p)?,
                ))
            }
            FloorConstruction::Hdn { d, n, p } => {
                let fam = GraphFamilySpec::Hdn { d, n };
                Ok((fam.build()?.0, preset_profile(&fam, &Preset::HdnStep)?, PValue::finite(p)?))
            }
            FloorConstruction::Accordion { d, n, p } => {
                let fam = GraphFamilySpec::Accordion { d, n };
                Ok((
                    fam.build()?.0,
                    preset_profile(&fam, &Preset::AccordionStep)?,
                    PValue::finite(p)?,
                ))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FloorViolation {
    pub schedule: String,
    pub t: u64,
    pub osc: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FloorReport {
    pub construction: String,
    pub horizon: u64,
    pub schedules_run: usize,
    /// The first oscillation drop below 1/2 within the horizon, if any.
    /// A violation indicates an implementation bug: the floors hold for
    /// every update sequence.
    pub violation: Option<FloorViolation>,
}

#[derive(Clone, Debug)]
pub struct FloorSchedules {
    pub random_seeds: Vec<u64>,
    pub round_robin: bool,
    pub explicit: Vec<Vec<usize>>,
}

impl Default for FloorSchedules {
    fn default() -> Self {
        FloorSchedules {
            random_seeds: (0..20).collect(),
            round_robin: true,
            explicit: Vec::new(),
        }
    }
}

pub fn floor_certify(
    construction: &FloorConstruction,
    schedules: &FloorSchedules,
) -> Result<FloorReport> {
    construction.check_hypotheses()?;
    let (g, f0, p) = construction.build()?;
    let horizon = construction.horizon();
    let solver = SolverConfig::default();

    let mut named: Vec<(String, Schedule)> = Vec::new();
    for &s in &schedules.random_seeds {
        named.push((format!("random:{s}"), Schedule::uniform(s)));
    }
    if schedules.round_robin {
        named.push(("roundrobin".into(), Schedule::round_robin()));
    }
    for (i, seq) in schedules.explicit.iter().enumerate() {
        named.push((format!("explicit:{i}"), Schedule::Explicit { seq: seq.clone() }));
    }

    let mut violation = None;
    'outer: for (name, sched) in &named {
        let mut f = f0.clone();
        let mut idx = OrderedValueIndex::from_values(f.values().iter().copied());
        let mut stream = sched.stream(&g)?;
        for t in 1..=horizon {
            let Some(v) = stream.next() else { break };
            let old = f[v];
            let new = update_value(&g, &f, v, p, &solver)?;
            if new != old {
                f.set(v, new);
                idx.remove(old);
                idx.insert(new);
            }
            let osc = idx.oscillation();
            if osc < 0.5 {
                violation = Some(FloorViolation {
                    schedule: name.clone(),
                    t,
                    osc,
                });
                break 'outer;
            }
        }
    }
    Ok(FloorReport {
        construction: construction.name(),
        horizon,
        schedules_run: named.len(),
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_squares_recovers_power_law() {
        let sizes: Vec<f64> = vec![8.0, 16.0, 32.0, 64.0, 128.0];
        for gamma in [1.0, 2.5, 3.0, 4.0] {
            let values: Vec<f64> = sizes.iter().map(|s| s.powf(gamma)).collect();
            let fit = log_log_fit(&sizes, &values);
            assert!((fit.slope - gamma).abs() <= 1e-9, "slope {}", fit.slope);
            assert!(fit.r2 > 1.0 - 1e-12);
        }
    }

    #[test]
    fn energy_decay_on_single_edge_is_total() {
        // one update zeroes the energy, so the relative drop is 1
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let f0 = Profile::new(vec![0.0, 1.0]).unwrap();
        for p in [1.5, 2.0, 4.0] {
            let rep = energy_decay_test(&g, &f0, p, 200, 3, SampleMode::Fresh).unwrap();
            assert!((rep.estimate - 1.0).abs() < 1e-12);
            assert!(rep.pass);
        }
    }

    #[test]
    fn energy_decay_rejects_constant_profile() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(energy_decay_test(&g, &Profile::constant(2, 0.4), 2.0, 10, 0, SampleMode::Fresh)
            .is_err());
    }

    #[test]
    fn energy_decay_on_cycle_beats_rate_bound() {
        let fam = GraphFamilySpec::Cycle { n: 16 };
        let (g, _) = fam.build().unwrap();
        let f0 = preset_profile(&fam, &Preset::CycleStep).unwrap();
        for mode in [SampleMode::Fresh, SampleMode::AlongTrajectory] {
            let rep = energy_decay_test(&g, &f0, 2.0, 10_000, 5, mode).unwrap();
            // bound = c_2 F(16, 2, 2) = 0.5 · 16^-3 · 2^-1
            assert!((rep.bound - 0.5 / (4096.0 * 2.0)).abs() < 1e-18);
            assert!(rep.pass, "mode {mode:?}: estimate {} bound {}", rep.estimate, rep.bound);
        }
    }

    #[test]
    fn fully_censored_sizes_suppress_the_fit() {
        let spec = ScalingSpec {
            sweep: SweepFamily::Cycle { sizes: vec![8, 12, 16] },
            p: PValue::Infinity,
            eps: 0.01,
            reps: 3,
            seed_base: 2,
            max_steps: 2, // far below any consensus time
        };
        let res = scaling_study(&spec).unwrap();
        assert_eq!(res.censored, 9);
        assert!(res.fit.is_none());
        assert!(res.medians.is_empty());
    }

    #[test]
    fn floor_horizons() {
        assert_eq!(FloorConstruction::Cycle1 { n: 16 }.horizon(), 2);
        assert_eq!(FloorConstruction::Cycle1 { n: 32 }.horizon(), 16);
        assert_eq!(FloorConstruction::Cycle1 { n: 64 }.horizon(), 128);
        // strictly below q^3/68: q=16 gives 4096/68 = 60.2 -> 60
        assert_eq!(FloorConstruction::SecondCycle { quarter: 16 }.horizon(), 60);
        // strictly below n^4/4 at p = 1.5, arm 8: 1024 -> 1023
        assert_eq!(
            FloorConstruction::TreeTn { arm: 8, p: 1.5 }.horizon(),
            1023
        );
    }

    #[test]
    fn floor_hypotheses_named() {
        let err = FloorConstruction::Cycle1 { n: 10 }.check_hypotheses().unwrap_err();
        assert!(err.to_string().contains("4 | n"));
        let err = FloorConstruction::Accordion { d: 2, n: 10, p: 2.0 }
            .check_hypotheses()
            .unwrap_err();
        assert!(err.to_string().contains("n/d >= 12"));
        let err = FloorConstruction::Accordion { d: 2, n: 24, p: 3.5 }
            .check_hypotheses()
            .unwrap_err();
        assert!(err.to_string().contains("2 <= p <= 3"));
    }

    #[test]
    fn cycle1_small_floor_certifies() {
        let report = floor_certify(
            &FloorConstruction::Cycle1 { n: 16 },
            &FloorSchedules {
                random_seeds: (0..5).collect(),
                round_robin: true,
                explicit: vec![vec![0, 1, 2, 3]],
            },
        )
        .unwrap();
        assert_eq!(report.horizon, 2);
        assert!(report.violation.is_none());
    }

    #[test]
    fn scaling_study_shapes() {
        let spec = ScalingSpec {
            sweep: SweepFamily::Cycle { sizes: vec![8, 12, 16] },
            p: PValue::Infinity,
            eps: 0.5,
            reps: 4,
            seed_base: 1,
            max_steps: 200_000,
            };
        let res = scaling_study(&spec).unwrap();
        assert_eq!(res.points.len(), 12);
        assert_eq!(res.medians.len(), 3);
        assert_eq!(res.censored, 0);
        assert!(res.fit.is_some());
    }
}
