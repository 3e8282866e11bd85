//! The cross-module invariant battery behind `verify --level quick|full`.
//!
//! Every check is a parameterized function returning a [`CheckResult`], so the
//! acceptance tests can run the same code at pinned sizes and tolerances.

use crate::dynamics::{cover_count_for, modulus_bound, run, RunConfig, StopMode};
use crate::error::Result;
use crate::extension::{extend, extend_with, TieBreak};
use crate::fragmentation::duality_check;
use crate::generators::{random_connected, random_independent_boundary, GraphFamilySpec};
use crate::graph::Graph;
use crate::presets::{preset_profile, upper_envelope, Preset};
use crate::profile::{lex_potential, lp_distance, Norm, Profile};
use crate::schedule::Schedule;
use crate::update::{
    infinity_laplacian, infinity_laplacian_l1, psi_derivative, update_value, PValue, SolverConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed: true, detail: detail.into() }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed: false, detail: detail.into() }
    }

    fn of(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed, detail: detail.into() }
    }
}

const TEST_EXPONENTS: [PValue; 5] = [
    PValue::Finite(1.5),
    PValue::Finite(2.0),
    PValue::Finite(2.5),
    PValue::Finite(4.0),
    PValue::Infinity,
];

fn random_boundary_instance(
    n: usize,
    b_count: usize,
    seed: u64,
    rng: &mut ChaCha8Rng,
) -> Option<(Graph, Profile)> {
    let g0 = random_connected(n, 0.3, seed).ok()?;
    let b = random_independent_boundary(&g0, b_count, rng)?;
    let edges: Vec<_> = g0.edges().collect();
    let g = Graph::with_boundary(n, &edges, &b).ok()?;
    let mut bv = Profile::constant(n, 0.0);
    for &v in &b {
        bv.set(v, rng.random());
    }
    Some((g, bv))
}

/// Order preservation of the update under an arbitrary update kernel; the
/// kernel parameter lets a fault-injection test confirm the check detects a
/// broken update.
pub fn check_monotonicity_with<F>(update: F, trials: u32, seed: u64, tol: f64) -> CheckResult
where
    F: Fn(&Graph, &Profile, usize, PValue, &SolverConfig) -> Result<f64>,
{
    let name = "update_monotonicity";
    let solver = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let g = match random_connected(10, 0.3, seed ^ (trial as u64)) {
            Ok(g) => g,
            Err(e) => return CheckResult::fail(name, e.to_string()),
        };
        let lo = Profile::new((0..10).map(|_| rng.random()).collect()).unwrap();
        let hi = Profile::new(
            lo.values().iter().map(|x| x + rng.random::<f64>() * 0.5).collect(),
        )
        .unwrap();
        let v = rng.random_range(0..10);
        for p in TEST_EXPONENTS {
            let a = update(&g, &lo, v, p, &solver);
            let b = update(&g, &hi, v, p, &solver);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    if a > b + tol {
                        return CheckResult::fail(
                            name,
                            format!("order broken at p={p}: {a} > {b} (trial {trial})"),
                        );
                    }
                }
                _ => return CheckResult::fail(name, "update kernel errored"),
            }
        }
    }
    CheckResult::pass(name, format!("{trials} ordered pairs across 5 exponents"))
}

pub fn check_monotonicity(trials: u32, seed: u64, tol: f64) -> CheckResult {
    check_monotonicity_with(update_value, trials, seed, tol)
}

/// update(a f + b) = a update(f) + b.
pub fn check_equivariance(trials: u32, seed: u64, tol: f64) -> CheckResult {
    let name = "update_equivariance";
    let solver = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let g = match random_connected(9, 0.35, seed.wrapping_add(trial as u64)) {
            Ok(g) => g,
            Err(e) => return CheckResult::fail(name, e.to_string()),
        };
        let f = Profile::new((0..9).map(|_| rng.random()).collect()).unwrap();
        let a: f64 = rng.random_range(0.1..5.0);
        let b: f64 = rng.random_range(-2.0..2.0);
        let scaled = Profile::new(f.values().iter().map(|x| a * x + b).collect()).unwrap();
        let v = rng.random_range(0..9);
        for p in TEST_EXPONENTS {
            let y = update_value(&g, &f, v, p, &solver).unwrap();
            let ys = update_value(&g, &scaled, v, p, &solver).unwrap();
            if (ys - (a * y + b)).abs() > tol.max(a * tol) {
                return CheckResult::fail(
                    name,
                    format!("p={p}: got {ys}, want {} (trial {trial})", a * y + b),
                );
            }
        }
    }
    CheckResult::pass(name, format!("{trials} affine maps across 5 exponents"))
}

/// |Psi'| at the returned minimizer stays below p range^{p-1} 1e-10.
pub fn check_root_residual(trials: u32, seed: u64) -> CheckResult {
    let name = "solver_root_residual";
    let solver = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let g = match random_connected(12, 0.3, seed.wrapping_add(trial as u64)) {
            Ok(g) => g,
            Err(e) => return CheckResult::fail(name, e.to_string()),
        };
        let f = Profile::new((0..12).map(|_| rng.random()).collect()).unwrap();
        let v = rng.random_range(0..12);
        let vals: Vec<f64> = g.neighbors(v).iter().map(|&w| f[w]).collect();
        let range = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - vals.iter().cloned().fold(f64::INFINITY, f64::min);
        if range == 0.0 {
            continue;
        }
        for p in [1.5, 2.0, 2.5, 4.0] {
            let y = update_value(&g, &f, v, PValue::Finite(p), &solver).unwrap();
            let resid = psi_derivative(&g, &f, v, y, p).abs();
            let cap = p * range.powf(p - 1.0) * 1e-10;
            if resid > cap {
                return CheckResult::fail(
                    name,
                    format!("p={p}: residual {resid} above {cap} (trial {trial})"),
                );
            }
        }
    }
    CheckResult::pass(name, format!("{trials} minimizers within residual cap"))
}

/// Strict decrease of the sorted-gradient potential at effective midrange
/// updates, up to 1e-12 of floating-point slack.
pub fn check_lex_decrease(trials: u32, seed: u64) -> CheckResult {
    let name = "lex_potential_decrease";
    let solver = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0u32;
    let mut graph_seed = seed;
    let mut decrease_sum = 0.0;
    while checked < trials {
        graph_seed = graph_seed.wrapping_add(1);
        let n = rng.random_range(5..16);
        let Ok(g) = random_connected(n, 0.35, graph_seed) else { continue };
        if g.edge_count() > 50 {
            continue;
        }
        let mut f = Profile::new((0..n).map(|_| rng.random()).collect()).unwrap();
        for _ in 0..8 {
            if checked >= trials {
                break;
            }
            let v = rng.random_range(0..n);
            let y = update_value(&g, &f, v, PValue::Infinity, &solver).unwrap();
            if (y - f[v]).abs() <= 1e-12 {
                continue;
            }
            let before = lex_potential(&g, &f);
            f.set(v, y);
            let after = lex_potential(&g, &f);
            if after - before > 1e-12 {
                return CheckResult::fail(
                    name,
                    format!("potential rose by {} at an effective update", after - before),
                );
            }
            decrease_sum += before - after;
            checked += 1;
        }
    }
    if decrease_sum <= 0.0 {
        return CheckResult::fail(name, "no net decrease observed");
    }
    CheckResult::pass(name, format!("{checked} effective updates, all decreasing"))
}

/// Fragmentation duality on the cycle and the boundary segment.
pub fn check_duality(
    schedules: u32,
    steps: usize,
    probes: u32,
    seed: u64,
    tol: f64,
) -> CheckResult {
    let name = "fragmentation_duality";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cycle = crate::generators::cycle(32).unwrap();
    let segment = crate::generators::segment(16, true).unwrap();
    for (g, label) in [(&cycle, "cycle"), (&segment, "segment")] {
        let interior = g.interior().to_vec();
        let f0 = Profile::new((0..g.n()).map(|_| rng.random()).collect()).unwrap();
        for s in 0..schedules {
            let schedule: Vec<usize> = (0..steps)
                .map(|_| interior[rng.random_range(0..interior.len())])
                .collect();
            for _ in 0..probes {
                let w = rng.random_range(0..g.n());
                match duality_check(g, &f0, &schedule, w) {
                    Ok(gap) if gap <= tol => {}
                    Ok(gap) => {
                        return CheckResult::fail(
                            name,
                            format!("{label} schedule {s} probe {w}: gap {gap}"),
                        )
                    }
                    Err(e) => return CheckResult::fail(name, e.to_string()),
                }
            }
        }
    }
    CheckResult::pass(
        name,
        format!("{schedules} schedules x {probes} probes on cycle and segment"),
    )
}

/// Extension residual, exact boundary agreement, and segment linearity.
pub fn check_extension_random(count: u32, max_n: usize, seed: u64, tol_factor: f64) -> CheckResult {
    let name = "extension_residual";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0u32;
    let mut gseed = seed;
    while done < count {
        gseed = gseed.wrapping_add(1);
        let n = rng.random_range(6..=max_n);
        let b_count = rng.random_range(2..=8usize.min(n / 3).max(2));
        let Some((g, bv)) = random_boundary_instance(n, b_count, gseed, &mut rng) else {
            continue;
        };
        let ext = match extend(&g, &bv) {
            Ok(e) => e,
            Err(e) => return CheckResult::fail(name, e.to_string()),
        };
        let bvals: Vec<f64> = g.boundary_vertices().iter().map(|&v| bv[v]).collect();
        let range = bvals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - bvals.iter().cloned().fold(f64::INFINITY, f64::min);
        if ext.residual > tol_factor * range.max(1e-30) {
            return CheckResult::fail(
                name,
                format!("residual {} above {}·range", ext.residual, tol_factor),
            );
        }
        for &v in &g.boundary_vertices() {
            if ext.h[v] != bv[v] {
                return CheckResult::fail(name, format!("boundary value moved at {v}"));
            }
        }
        done += 1;
    }
    CheckResult::pass(name, format!("{count} random boundary instances"))
}

pub fn check_extension_segment_exact(half: usize) -> CheckResult {
    let name = "extension_segment_linear";
    let g = crate::generators::segment(half, true).unwrap();
    let mut bv = Profile::constant(g.n(), 0.0);
    bv.set(2 * half, 1.0);
    let ext = extend(&g, &bv).unwrap();
    for i in 0..=2 * half {
        let want = i as f64 / (2 * half) as f64;
        if (ext.h[i] - want).abs() > 1e-12 {
            return CheckResult::fail(name, format!("h({i}) = {} != {want}", ext.h[i]));
        }
    }
    CheckResult::pass(name, format!("h(i) = i/{} exactly", 2 * half))
}

pub fn check_extension_tiebreak(count: u32, max_n: usize, seed: u64, tol: f64) -> CheckResult {
    let name = "extension_tiebreak_agreement";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0u32;
    let mut gseed = seed ^ 0xffff;
    while done < count {
        gseed = gseed.wrapping_add(1);
        let n = rng.random_range(6..=max_n);
        let Some((g, bv)) = random_boundary_instance(n, 3, gseed, &mut rng) else { continue };
        let a = extend_with(&g, &bv, TieBreak::Primary).unwrap().h;
        let b = extend_with(&g, &bv, TieBreak::Alternate).unwrap().h;
        for v in 0..g.n() {
            if (a[v] - b[v]).abs() > tol {
                return CheckResult::fail(
                    name,
                    format!("orders disagree by {} at vertex {v}", (a[v] - b[v]).abs()),
                );
            }
        }
        done += 1;
    }
    CheckResult::pass(name, format!("{count} instances, both orders agree"))
}

/// Along boundary runs from the upper envelope: superharmonicity of every
/// state, the sup/l1 bounds against n·|defect|_1, and the exact per-update
/// l1 drop |defect(v)|/2.
pub fn check_boundary_run_inequalities(
    graphs: u32,
    max_n: usize,
    steps_per_graph: u64,
    seed: u64,
) -> CheckResult {
    let name = "boundary_run_inequalities";
    let solver = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0u32;
    let mut gseed = seed ^ 0xabcd;
    while done < graphs {
        gseed = gseed.wrapping_add(1);
        let n = rng.random_range(8..=max_n);
        let b_count = rng.random_range(2..=4);
        let Some((g, bv)) = random_boundary_instance(n, b_count, gseed, &mut rng) else {
            continue;
        };
        let h = extend(&g, &bv).unwrap().h;
        let mut f = upper_envelope(&g, &bv).unwrap();
        let interior = g.interior().to_vec();
        let nv = interior.len() as f64;
        let mut stream = Schedule::uniform(gseed).stream(&g).unwrap();
        for t in 0..steps_per_graph {
            // superharmonicity of the current state
            for &v in &interior {
                let lap = infinity_laplacian(&g, &f, v).unwrap();
                if lap > 1e-12 {
                    return CheckResult::fail(
                        name,
                        format!("superharmonicity lost: defect {lap} at vertex {v}, step {t}"),
                    );
                }
            }
            let l1_defect = infinity_laplacian_l1(&g, &f);
            let sup = lp_distance(&f, &h, Norm::Infinity).unwrap();
            let l1 = lp_distance(&f, &h, Norm::One).unwrap();
            if sup > nv * l1_defect + 1e-9 {
                return CheckResult::fail(
                    name,
                    format!("sup gap {sup} above n·defect {}", nv * l1_defect),
                );
            }
            if l1 > nv * nv * l1_defect + 1e-9 {
                return CheckResult::fail(
                    name,
                    format!("l1 gap {l1} above n^2·defect {}", nv * nv * l1_defect),
                );
            }
            let v = stream.next().unwrap();
            let expected_drop = infinity_laplacian(&g, &f, v).unwrap().abs() / 2.0;
            let y = update_value(&g, &f, v, PValue::Infinity, &solver).unwrap();
            let before = lp_distance(&f, &h, Norm::One).unwrap();
            f.set(v, y);
            let after = lp_distance(&f, &h, Norm::One).unwrap();
            if ((before - after) - expected_drop).abs() > 1e-12 {
                return CheckResult::fail(
                    name,
                    format!(
                        "l1 drop {} != |defect|/2 = {expected_drop} at step {t}",
                        before - after
                    ),
                );
            }
        }
        done += 1;
    }
    CheckResult::pass(
        name,
        format!("{graphs} upper-envelope runs of {steps_per_graph} steps"),
    )
}

/// Round-robin contraction on the boundary segment: after k sweeps,
/// |f - h|_1 <= n exp(-k / (2 n^2)) with n the interior size.
pub fn check_round_robin_contraction(half: usize, sweeps: u64) -> CheckResult {
    let name = "round_robin_contraction";
    let g = crate::generators::segment(half, true).unwrap();
    let mut bv = Profile::constant(g.n(), 0.0);
    bv.set(2 * half, 1.0);
    let h = extend(&g, &bv).unwrap().h;
    let mut f = upper_envelope(&g, &bv).unwrap();
    let nv = g.interior().len() as f64;
    let solver = SolverConfig::default();
    let mut stream = Schedule::round_robin().stream(&g).unwrap();
    for k in 1..=sweeps {
        for _ in 0..g.interior().len() {
            let v = stream.next().unwrap();
            let y = update_value(&g, &f, v, PValue::Infinity, &solver).unwrap();
            f.set(v, y);
        }
        let l1 = lp_distance(&f, &h, Norm::One).unwrap();
        let cap = nv * (-(k as f64) / (2.0 * nv * nv)).exp() + 1e-9;
        if l1 > cap {
            return CheckResult::fail(name, format!("sweep {k}: |f-h|_1 = {l1} above {cap}"));
        }
    }
    CheckResult::pass(name, format!("{sweeps} sweeps within the analytic envelope"))
}

/// Oscillation certificate at round-robin cover marks on random graphs.
pub fn check_modulus_certificates(graphs: u32, max_n: usize, seed: u64) -> CheckResult {
    let name = "modulus_certificate";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..graphs {
        let n = rng.random_range(6..=max_n);
        let g = match random_connected(n, 0.25, seed.wrapping_add(i as u64)) {
            Ok(g) => g,
            Err(e) => return CheckResult::fail(name, e.to_string()),
        };
        let diam = g.diameter();
        let k_max = cover_count_for(diam, 0.01);
        let f0 = Profile::new((0..n).map(|_| rng.random()).collect()).unwrap();
        let cfg = RunConfig {
            p: PValue::Infinity,
            epsilon: 0.009,
            max_steps: k_max * n as u64,
            stop_mode: StopMode::FixedHorizon,
            record_every: 0,
            solver: SolverConfig::default(),
        };
        let rec = run(&g, &f0, &Schedule::round_robin(), &cfg).unwrap();
        for mark in &rec.cover_marks {
            let cap = modulus_bound(diam, mark.k);
            if mark.osc > cap {
                return CheckResult::fail(
                    name,
                    format!("graph {i}: osc {} above bound {cap} after {} covers", mark.osc, mark.k),
                );
            }
        }
    }
    CheckResult::pass(name, format!("{graphs} round-robin runs inside the envelope"))
}

/// Bit-identical trajectories across exponents on a degree-2 graph.
pub fn check_degree2_p_independence(n: usize, steps: u64, seed: u64) -> CheckResult {
    let name = "degree2_p_independence";
    let fam = GraphFamilySpec::Cycle { n };
    let (g, _) = fam.build().unwrap();
    let f0 = preset_profile(&fam, &Preset::CycleStep).unwrap();
    let solver = SolverConfig::default();
    let ps = [PValue::Finite(1.5), PValue::Finite(2.0), PValue::Finite(3.0), PValue::Infinity];
    let mut profiles: Vec<Profile> = ps.iter().map(|_| f0.clone()).collect();
    let mut stream = Schedule::uniform(seed).stream(&g).unwrap();
    for t in 1..=steps {
        let v = stream.next().unwrap();
        let mut first: Option<f64> = None;
        for (f, &p) in profiles.iter_mut().zip(&ps) {
            let y = update_value(&g, f, v, p, &solver).unwrap();
            match first {
                None => first = Some(y),
                Some(y0) => {
                    if y.to_bits() != y0.to_bits() {
                        return CheckResult::fail(
                            name,
                            format!("step {t}: p={p} produced {y} != {y0}"),
                        );
                    }
                }
            }
            f.set(v, y);
        }
    }
    CheckResult::pass(name, format!("{steps} steps bit-identical across 4 exponents"))
}

/// Monte Carlo one-step energy drop against c_p F(n, p, D).
pub fn check_energy_decay_bound(n: usize, ps: &[f64], samples: u32, seed: u64) -> CheckResult {
    let name = "energy_decay_bound";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (i, &p) in ps.iter().enumerate() {
        let g = match random_connected(n, 0.2, seed.wrapping_add(i as u64)) {
            Ok(g) => g,
            Err(e) => return CheckResult::fail(name, e.to_string()),
        };
        let f0 = Profile::new((0..n).map(|_| rng.random()).collect()).unwrap();
        let rep = crate::experiments::energy_decay_test(
            &g,
            &f0,
            p,
            samples,
            seed.wrapping_add(100 + i as u64),
            crate::experiments::SampleMode::Fresh,
        )
        .unwrap();
        if !rep.pass {
            return CheckResult::fail(
                name,
                format!(
                    "p={p}: estimate {} + 3·{} below bound {}",
                    rep.estimate, rep.std_error, rep.bound
                ),
            );
        }
    }
    CheckResult::pass(name, format!("{} exponents at n={n}", ps.len()))
}

pub fn verify_suite(quick: bool) -> Vec<CheckResult> {
    let (trials, duals, exts, graphs) = if quick { (200, 10, 10, 5) } else { (1000, 100, 50, 20) };
    let mut out = vec![
        check_monotonicity(trials, 101, 1e-12),
        check_equivariance(trials, 102, 1e-11),
        check_root_residual(trials, 103),
        check_lex_decrease(trials, 104),
        check_duality(duals, if quick { 2_000 } else { 10_000 }, 10, 105, 1e-10),
        check_extension_random(exts, 40, 106, 1e-10),
        check_extension_segment_exact(8),
        check_extension_tiebreak(exts, 30, 107, 1e-9),
        check_boundary_run_inequalities(graphs, 25, if quick { 300 } else { 1500 }, 108),
        check_round_robin_contraction(16, if quick { 60 } else { 200 }),
        check_modulus_certificates(if quick { 3 } else { 10 }, 30, 109),
        check_degree2_p_independence(64, if quick { 20_000 } else { 100_000 }, 110),
        check_energy_decay_bound(30, &[1.5, 2.5, 4.0], if quick { 2_000 } else { 10_000 }, 111),
    ];
    let floors: Vec<crate::experiments::FloorConstruction> = if quick {
        vec![
            crate::experiments::FloorConstruction::Cycle1 { n: 16 },
            crate::experiments::FloorConstruction::SecondCycle { quarter: 8 },
        ]
    } else {
        vec![
            crate::experiments::FloorConstruction::Cycle1 { n: 64 },
            crate::experiments::FloorConstruction::SecondCycle { quarter: 16 },
            crate::experiments::FloorConstruction::ParallelPaths { k: 3, len: 16 },
            crate::experiments::FloorConstruction::TreeTn { arm: 8, p: 1.5 },
            crate::experiments::FloorConstruction::Hdn { d: 17, n: 34, p: 2.0 },
            crate::experiments::FloorConstruction::Accordion { d: 2, n: 24, p: 2.5 },
        ]
    };
    for c in floors {
        let schedules = crate::experiments::FloorSchedules {
            random_seeds: (0..if quick { 5 } else { 20 }).collect(),
            round_robin: true,
            explicit: Vec::new(),
        };
        let name = format!("floor_{}", c.name());
        match crate::experiments::floor_certify(&c, &schedules) {
            Ok(rep) => match rep.violation {
                None => out.push(CheckResult::pass(
                    &name,
                    format!("horizon {} clean over {} schedules", rep.horizon, rep.schedules_run),
                )),
                Some(v) => out.push(CheckResult::fail(
                    &name,
                    format!("osc {} < 1/2 at t={} under {}", v.osc, v.t, v.schedule),
                )),
            },
            Err(e) => out.push(CheckResult::fail(&name, e.to_string())),
        }
    }
    out.push({
        let fit = crate::experiments::log_log_fit(
            &[8.0, 16.0, 32.0, 64.0],
            &[8.0f64.powf(2.5), 16.0f64.powf(2.5), 32.0f64.powf(2.5), 64.0f64.powf(2.5)],
        );
        CheckResult::of(
            "slope_estimator_exact",
            (fit.slope - 2.5).abs() <= 1e-9,
            format!("synthetic exponent recovered as {}", fit.slope),
        )
    });
    out
}
