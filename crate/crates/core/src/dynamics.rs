//! The asynchronous update engine.
//!
//! A run replaces one scheduled vertex value per step and tracks oscillation
//! (and, with a boundary, the distance to the infinity-harmonic extension)
//! incrementally, so first-hitting stopping times are exact. Runs are fully
//! deterministic given the schedule and configuration.
//!
//! Discrete steps versus continuous time: with i.i.d. unit-rate clocks on the
//! vertices the expected stopping times of this engine divide by n, so no
//! separate continuous-time driver is provided.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::order_index::OrderedValueIndex;
use crate::profile::{lp_distance, Norm, Profile};
use crate::schedule::Schedule;
use crate::update::{update_value, PValue, SolverConfig};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StopMode {
    /// Stop when the oscillation drops to epsilon.
    Consensus,
    /// Stop when the sup distance to the infinity-harmonic extension drops to
    /// epsilon. Requires a boundary and p = infinity.
    BoundaryApprox,
    /// Run the full step budget.
    FixedHorizon,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RunConfig {
    pub p: PValue,
    pub epsilon: f64,
    pub max_steps: u64,
    pub stop_mode: StopMode,
    /// Diagnostic sampling stride; 0 records only the endpoints.
    pub record_every: u64,
    pub solver: SolverConfig,
}

impl RunConfig {
    pub fn consensus(p: PValue, epsilon: f64, max_steps: u64) -> Self {
        RunConfig {
            p,
            epsilon,
            max_steps,
            stop_mode: StopMode::Consensus,
            record_every: 0,
            solver: SolverConfig::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if let PValue::Finite(p) = self.p {
            PValue::finite(p)?;
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidParameter("max_steps must be >= 1".into()));
        }
        Ok(())
    }
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "t")]
pub enum Stopping {
    /// The stop criterion was first met at step `t`.
    Target(u64),
    /// The step budget (or an explicit schedule) ran out first.
    Exhausted,
    /// A fixed-horizon run completed.
    Horizon(u64),
}

impl Stopping {
    pub fn tau(&self) -> Option<u64> {
        match self {
            Stopping::Target(t) => Some(*t),
            _ => None,
        }
    }

    pub fn is_censored(&self) -> bool {
        matches!(self, Stopping::Exhausted)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Sample {
    pub t: u64,
    pub osc: f64,
    /// lp energy at finite p.
    pub energy: Option<f64>,
    /// Distances to the extension in boundary mode.
    pub dev_l1: Option<f64>,
    pub dev_linf: Option<f64>,
}

/// `k`-th completed cover of the interior, with the time and oscillation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoverMark {
    pub k: u64,
    pub t: u64,
    pub osc: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub stopping: Stopping,
    pub steps_run: u64,
    pub samples: Vec<Sample>,
    pub cover_marks: Vec<CoverMark>,
    pub final_profile: Profile,
    pub seed: Option<u64>,
}

/// The analytic oscillation certificate after `k` covers on a graph of the
/// given diameter: `2 exp(-k / (diam^2 + diam))`.
pub fn modulus_bound(diam: usize, k: u64) -> f64 {
    let l = diam as f64;
    2.0 * (-(k as f64) / (l * l + l)).exp()
}

/// Number of covers that push the certificate below epsilon.
pub fn cover_count_for(diam: usize, eps: f64) -> u64 {
    let l = diam as f64;
    ((l * l + l) * (2.0 / eps).ln()).ceil() as u64
}

pub fn run(g: &Graph, f0: &Profile, sched: &Schedule, cfg: &RunConfig) -> Result<RunRecord> {
    cfg.validate()?;
    f0.check_dimension(g)?;

    let extension = match cfg.stop_mode {
        StopMode::BoundaryApprox => {
            if !g.has_boundary() {
                return Err(Error::UnsupportedMode(
                    "approximation stopping needs a boundary".into(),
                ));
            }
            if !cfg.p.is_infinite() {
                return Err(Error::UnsupportedMode(
                    "approximation stopping toward the p-harmonic extension is only \
                     supported for p = inf; for finite p no stopping certificate is \
                     available (for 1 < p < 2 the approximation time is not even \
                     logarithmic in epsilon)"
                        .into(),
                ));
            }
            Some(crate::extension::extend(g, f0)?.h)
        }
        _ => None,
    };

    let mut f = f0.clone();
    let mut stream = sched.stream(g)?;
    let mut osc_index = OrderedValueIndex::from_values(f.values().iter().copied());
    let mut dev_index = extension.as_ref().map(|h| {
        OrderedValueIndex::from_values(g.interior().iter().map(|&v| (f[v] - h[v]).abs()))
    });

    // cover tracking
    let interior_len = g.interior().len();
    let mut seen = vec![false; g.n()];
    let mut uncovered = interior_len;
    let mut covers = 0u64;
    let mut cover_marks = Vec::new();

    let mut samples = Vec::new();
    let finite_p = match cfg.p {
        PValue::Finite(p) => Some(p),
        PValue::Infinity => None,
    };
    let record = |t: u64, f: &Profile, osc_index: &OrderedValueIndex, samples: &mut Vec<Sample>| {
        let (dev_l1, dev_linf) = match &extension {
            Some(h) => (
                Some(lp_distance(f, h, Norm::One).unwrap()),
                Some(lp_distance(f, h, Norm::Infinity).unwrap()),
            ),
            None => (None, None),
        };
        samples.push(Sample {
            t,
            osc: osc_index.oscillation(),
            energy: finite_p.map(|p| crate::profile::energy(g, f, p).unwrap()),
            dev_l1,
            dev_linf,
        });
    };

    let met = |osc_index: &OrderedValueIndex, dev_index: &Option<OrderedValueIndex>| -> bool {
        match cfg.stop_mode {
            StopMode::Consensus => osc_index.oscillation() <= cfg.epsilon,
            StopMode::BoundaryApprox => {
                dev_index.as_ref().unwrap().max().unwrap_or(0.0) <= cfg.epsilon
            }
            StopMode::FixedHorizon => false,
        }
    };

    record(0, &f, &osc_index, &mut samples);
    if met(&osc_index, &dev_index) {
        return Ok(RunRecord {
            stopping: Stopping::Target(0),
            steps_run: 0,
            samples,
            cover_marks,
            final_profile: f,
            seed: sched.seed(),
        });
    }

    let mut stopping = Stopping::Exhausted;
    let mut steps_run = 0u64;
    #[cfg(debug_assertions)]
    let (mut last_min, mut last_max) = (osc_index.min().unwrap(), osc_index.max().unwrap());

    for t in 1..=cfg.max_steps {
        let Some(v) = stream.next() else { break };
        let old = f[v];
        let new = update_value(g, &f, v, cfg.p, &cfg.solver)?;
        #[cfg(debug_assertions)]
        if let Some(p) = finite_p {
            let delta = crate::profile::energy_delta_at(g, &f, v, new, p);
            debug_assert!(delta <= 1e-12, "energy increased by {delta} at step {t}");
        }
        if new != old {
            f.set(v, new);
            osc_index.remove(old);
            osc_index.insert(new);
            if let (Some(di), Some(h)) = (&mut dev_index, &extension) {
                di.remove((old - h[v]).abs());
                di.insert((new - h[v]).abs());
            }
        }
        steps_run = t;

        if !seen[v] {
            seen[v] = true;
            uncovered -= 1;
            if uncovered == 0 {
                covers += 1;
                cover_marks.push(CoverMark {
                    k: covers,
                    t,
                    osc: osc_index.oscillation(),
                });
                seen.iter_mut().for_each(|s| *s = false);
                uncovered = interior_len;
            }
        }

        #[cfg(debug_assertions)]
        {
            let (mn, mx) = (osc_index.min().unwrap(), osc_index.max().unwrap());
            debug_assert!(mn >= last_min && mx <= last_max, "extreme values escaped");
            last_min = mn;
            last_max = mx;
        }

        if cfg.record_every > 0 && t % cfg.record_every == 0 {
            record(t, &f, &osc_index, &mut samples);
        }
        if met(&osc_index, &dev_index) {
            stopping = Stopping::Target(t);
            break;
        }
    }

    if cfg.stop_mode == StopMode::FixedHorizon {
        stopping = Stopping::Horizon(steps_run);
    }
    if samples.last().map(|s| s.t) != Some(steps_run) {
        record(steps_run, &f, &osc_index, &mut samples);
    }
    Ok(RunRecord {
        stopping,
        steps_run,
        samples,
        cover_marks,
        final_profile: f,
        seed: sched.seed(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EnsembleSummary {
    pub outcomes: Vec<(u64, Stopping)>,
    pub censored: usize,
    pub mean_tau: Option<f64>,
    pub median_tau: Option<f64>,
    pub q25_tau: Option<f64>,
    pub q75_tau: Option<f64>,
    /// Oscillation series averaged over seeds at common sample times.
    pub mean_osc_series: Vec<(u64, f64)>,
}

/// Runs one seed per entry of `seeds` under the uniform random schedule,
/// concurrently, and reduces the stopping times deterministically.
pub fn run_ensemble(
    g: &Graph,
    f0: &Profile,
    cfg: &RunConfig,
    seeds: &[u64],
) -> Result<EnsembleSummary> {
    if seeds.is_empty() {
        return Err(Error::InvalidParameter("ensemble needs at least one seed".into()));
    }
    let records: Vec<(u64, RunRecord)> = seeds
        .par_iter()
        .map(|&seed| run(g, f0, &Schedule::uniform(seed), cfg).map(|r| (seed, r)))
        .collect::<Result<_>>()?;

    let mut taus: Vec<u64> = records
        .iter()
        .filter_map(|(_, r)| r.stopping.tau())
        .collect();
    taus.sort_unstable();
    let censored = records.len() - taus.len();

    let quantile = |q: f64| -> Option<f64> {
        if taus.is_empty() || censored > 0 {
            return None;
        }
        let pos = q * (taus.len() - 1) as f64;
        let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
        Some(taus[lo] as f64 + (taus[hi] as f64 - taus[lo] as f64) * (pos - pos.floor()))
    };

    let min_len = records
        .iter()
        .map(|(_, r)| r.samples.len())
        .min()
        .unwrap_or(0);
    let mut mean_osc_series = Vec::with_capacity(min_len);
    for i in 0..min_len {
        let t = records[0].1.samples[i].t;
        if records.iter().any(|(_, r)| r.samples[i].t != t) {
            break;
        }
        let mean = records.iter().map(|(_, r)| r.samples[i].osc).sum::<f64>()
            / records.len() as f64;
        mean_osc_series.push((t, mean));
    }

    Ok(EnsembleSummary {
        censored,
        mean_tau: if censored == 0 && !taus.is_empty() {
            Some(taus.iter().sum::<u64>() as f64 / taus.len() as f64)
        } else {
            None
        },
        median_tau: quantile(0.5),
        q25_tau: quantile(0.25),
        q75_tau: quantile(0.75),
        mean_osc_series,
        outcomes: records.into_iter().map(|(s, r)| (s, r.stopping)).collect(),
    })
}
