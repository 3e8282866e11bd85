//! Command-line driver: simulate runs, compute extensions, print rate
//! predictions, fit scaling exponents, certify oscillation floors, and run
//! the invariant suite.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use lpdyn::experiments::{
    floor_certify, scaling_study, FloorConstruction, FloorSchedules, ScalingSpec, SweepFamily,
};
use lpdyn::generators::GraphFamilySpec;
use lpdyn::graph::Graph;
use lpdyn::presets::{preset_profile, upper_envelope, Preset};
use lpdyn::profile::Profile;
use lpdyn::rates;
use lpdyn::schedule::Schedule;
use lpdyn::update::PValue;
use lpdyn::dynamics::{run, RunConfig, StopMode};
use lpdyn::verify::verify_suite;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lpdyn", version, about = "Asynchronous lp averaging and Lipschitz learning on graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the dynamics once and report (or dump) the trajectory record.
    Simulate {
        /// Graph spec: cycle:N | segment:N[:boundary] | barbell:N | parallel:K,L |
        /// tn:N | hdn:D,N | accordion:D,N | random:n=..,q=..[,seed=..] |
        /// file:PATH[:boundary=PATH]
        #[arg(long)]
        graph: String,
        /// Profile spec: preset:NAME[:...] | file:PATH | upper
        #[arg(long)]
        profile: String,
        /// Exponent: a finite value > 1, or `inf`
        #[arg(long)]
        p: String,
        /// random:seed=S | roundrobin | file:PATH
        #[arg(long, default_value = "random:seed=0")]
        schedule: String,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: u64,
        /// consensus | boundary | horizon
        #[arg(long, default_value = "consensus")]
        stop: String,
        #[arg(long, default_value_t = 0)]
        record_every: u64,
        /// Write the full run record as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the infinity-harmonic extension of boundary values.
    Extend {
        #[arg(long)]
        graph: String,
        /// Boundary file with `v value` lines.
        #[arg(long)]
        boundary: PathBuf,
        /// CSV output of `v h(v)` rows (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        verify_tol: f64,
    },
    /// Print the convergence-rate prediction for the given size/exponent.
    Predict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        /// Average degree.
        #[arg(long = "D", alias = "d", default_value_t = 2.0)]
        d: f64,
        /// Diameter (used for p = inf).
        #[arg(long)]
        diam: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Sweep a graph family, fit the log-log consensus-time exponent, and
    /// emit per-run CSV plus a JSON summary.
    Scaling {
        /// cycle | barbell | segment | tn | hdn:d=D
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: String,
        /// Comma-separated size parameters, e.g. 16,24,32.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 10)]
        reps: u64,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// JSON summary path; per-run rows are written alongside as PATH.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed_base: u64,
        #[arg(long, default_value_t = 100_000_000)]
        max_steps: u64,
    },
    /// Certify an oscillation floor over a set of schedules.
    Floor {
        /// cycle1 | second_cycle | parallel | tn | hdn | accordion
        #[arg(long)]
        construction: String,
        /// Comma-separated parameters, e.g. n=64 or d=2,n=24,p=2.5.
        #[arg(long)]
        params: String,
        /// e.g. random:20,roundrobin[,file:PATH]
        #[arg(long, default_value = "random:20,roundrobin")]
        schedules: String,
    },
    /// Run the invariant suite; exit code 0 iff every check passes.
    Verify {
        #[arg(long, default_value = "quick")]
        level: String,
    },
}

fn build_graph(spec: &str) -> Result<(GraphFamilySpec, Graph, Option<Profile>)> {
    let fam = GraphFamilySpec::parse(spec)?;
    let (g, bv) = fam.build()?;
    Ok((fam, g, bv))
}

fn build_profile(
    spec: &str,
    fam: &GraphFamilySpec,
    g: &Graph,
    boundary_values: &Option<Profile>,
) -> Result<Profile> {
    if let Some(rest) = spec.strip_prefix("preset:") {
        return Ok(preset_profile(fam, &Preset::parse(rest)?)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(lpdyn::io::load_profile(Path::new(path), g.n())?);
    }
    if spec == "upper" {
        let bv = boundary_values
            .as_ref()
            .ok_or_else(|| anyhow!("profile `upper` needs boundary values from the graph spec"))?;
        return Ok(upper_envelope(g, bv)?);
    }
    bail!("cannot parse profile spec `{spec}` (expected preset:..., file:..., or upper)")
}

fn build_schedule(spec: &str) -> Result<Schedule> {
    if let Some(rest) = spec.strip_prefix("random:") {
        let seed = rest
            .strip_prefix("seed=")
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| anyhow!("expected random:seed=<u64>"))?;
        return Ok(Schedule::uniform(seed));
    }
    match spec {
        "roundrobin" => Ok(Schedule::round_robin()),
        _ => {
            if let Some(path) = spec.strip_prefix("file:") {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading schedule file {path}"))?;
                let seq: Vec<usize> = text
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| anyhow!("bad vertex `{t}` in schedule")))
                    .collect::<Result<_>>()?;
                Ok(Schedule::Explicit { seq })
            } else {
                bail!("cannot parse schedule `{spec}`")
            }
        }
    }
}

fn parse_kv(params: &str) -> Result<Vec<(String, String)>> {
    params
        .split(',')
        .filter(|t| !t.is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| anyhow!("expected key=value, got `{kv}`"))
        })
        .collect()
}

fn kv_get<T: std::str::FromStr>(kvs: &[(String, String)], key: &str) -> Result<T> {
    let (_, v) = kvs
        .iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| anyhow!("missing parameter `{key}`"))?;
    v.parse().map_err(|_| anyhow!("cannot parse `{key}={v}`"))
}

fn parse_floor_schedules(spec: &str) -> Result<FloorSchedules> {
    let mut out = FloorSchedules {
        random_seeds: Vec::new(),
        round_robin: false,
        explicit: Vec::new(),
    };
    for part in spec.split(',').filter(|t| !t.is_empty()) {
        if let Some(k) = part.strip_prefix("random:") {
            let k: u64 = k.parse().map_err(|_| anyhow!("bad random schedule count"))?;
            out.random_seeds = (0..k).collect();
        } else if part == "roundrobin" {
            out.round_robin = true;
        } else if let Some(path) = part.strip_prefix("file:") {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading schedule file {path}"))?;
            let seq: Vec<usize> = text
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| anyhow!("bad vertex `{t}`")))
                .collect::<Result<_>>()?;
            out.explicit.push(seq);
        } else {
            bail!("cannot parse schedule entry `{part}`");
        }
    }
    if out.random_seeds.is_empty() && !out.round_robin && out.explicit.is_empty() {
        bail!("no schedules given");
    }
    Ok(out)
}

fn cmd_simulate(
    graph: &str,
    profile: &str,
    p: &str,
    schedule: &str,
    eps: f64,
    max_steps: u64,
    stop: &str,
    record_every: u64,
    out: Option<&Path>,
) -> Result<()> {
    let (fam, g, bv) = build_graph(graph)?;
    let f0 = build_profile(profile, &fam, &g, &bv)?;
    let sched = build_schedule(schedule)?;
    let stop_mode = match stop {
        "consensus" => StopMode::Consensus,
        "boundary" => StopMode::BoundaryApprox,
        "horizon" => StopMode::FixedHorizon,
        _ => bail!("unknown stop mode `{stop}`"),
    };
    let cfg = RunConfig {
        p: PValue::parse(p)?,
        epsilon: eps,
        max_steps,
        stop_mode,
        record_every,
        solver: Default::default(),
    };
    let rec = run(&g, &f0, &sched, &cfg)?;
    let summary = serde_json::json!({
        "graph": fam,
        "config": cfg,
        "stopping": rec.stopping,
        "steps_run": rec.steps_run,
        "samples": rec.samples,
        "cover_marks": rec.cover_marks,
        "final_profile": rec.final_profile,
        "seed": rec.seed,
    });
    match out {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(&summary)?)
                .with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => println!("{}", serde_json::to_string_pretty(&summary)?),
    }
    eprintln!(
        "stopping: {:?} after {} steps, final oscillation {:.6}",
        rec.stopping,
        rec.steps_run,
        lpdyn::profile::oscillation(&rec.final_profile)
    );
    Ok(())
}

fn cmd_extend(graph: &str, boundary: &Path, out: Option<&Path>, verify_tol: f64) -> Result<bool> {
    let fam = GraphFamilySpec::parse(graph)?;
    let (g, bv) = match fam {
        GraphFamilySpec::EdgeListFile { ref path, boundary: None } => {
            let (g, bv) = lpdyn::io::load_graph(Path::new(path), Some(boundary))?;
            (g, bv.expect("boundary file was given"))
        }
        _ => {
            let (g, _) = fam.build()?;
            if !g.has_boundary() {
                bail!("graph spec `{graph}` has no boundary; use segment:N:boundary or file:PATH");
            }
            let pairs = lpdyn::io::parse_boundary(&std::fs::read_to_string(boundary)?)?;
            let mut bvp = Profile::constant(g.n(), 0.0);
            let bset = g.boundary_vertices();
            for (v, x) in &pairs {
                if !bset.contains(v) {
                    bail!("vertex {v} in the boundary file is not a boundary vertex");
                }
                bvp.set(*v, *x);
            }
            (g, bvp)
        }
    };
    let ext = lpdyn::extension::extend(&g, &bv)?;
    let mut csv = String::from("v,h\n");
    for v in 0..g.n() {
        csv.push_str(&format!("{v},{}\n", ext.h[v]));
    }
    match out {
        Some(path) => {
            std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    eprintln!("max interior midrange defect: {:.3e}", ext.residual);
    Ok(ext.residual <= verify_tol)
}

fn cmd_predict(n: usize, p: &str, d: f64, diam: Option<usize>, eps: f64) -> Result<()> {
    match PValue::parse(p)? {
        PValue::Finite(p) => {
            let r = rates::predict(n, p, d)?;
            println!("beta_p      = {}", r.beta);
            println!("theta_p     = {}", r.theta);
            println!("F(n, p, D)  = {:e}", r.f);
            println!("c_p         = {}", r.c);
            println!("predicted expected consensus steps ~ log(n/eps) / (c_p F) = {:.3e}",
                (n as f64 / eps).ln() / (r.c * r.f));
        }
        PValue::Infinity => {
            let diam = diam.ok_or_else(|| anyhow!("p = inf prediction needs --diam"))?;
            println!(
                "uniform-updates ceiling  n(log n + 1)(diam + 1)^2 log(2/eps) = {:.3e}",
                rates::infinity_consensus_bound(n, diam, eps)
            );
            println!(
                "round-robin ceiling      n(diam + 1)^2 log(2/eps)          = {:.3e}",
                rates::infinity_consensus_bound_round_robin(n, diam, eps)
            );
        }
    }
    Ok(())
}

fn cmd_scaling(
    family: &str,
    p: &str,
    sizes: &str,
    reps: u64,
    eps: f64,
    out: Option<&Path>,
    seed_base: u64,
    max_steps: u64,
) -> Result<()> {
    let sizes: Vec<usize> = sizes
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| anyhow!("bad size `{t}`")))
        .collect::<Result<_>>()?;
    let sweep = match family.split_once(":d=") {
        Some(("hdn", d)) => SweepFamily::Hdn {
            d: d.parse().map_err(|_| anyhow!("bad hdn d"))?,
            ns: sizes,
        },
        None => match family {
            "cycle" => SweepFamily::Cycle { sizes },
            "barbell" => SweepFamily::Barbell { cliques: sizes },
            "segment" => SweepFamily::BoundarySegment { halves: sizes },
            "tn" => SweepFamily::TreeTn { arms: sizes },
            _ => bail!("unknown family `{family}`"),
        },
        _ => bail!("unknown family `{family}`"),
    };
    let spec = ScalingSpec {
        sweep,
        p: PValue::parse(p)?,
        eps,
        reps,
        seed_base,
        max_steps,
    };
    let res = scaling_study(&spec)?;
    match &res.fit {
        Some(fit) => println!(
            "fitted exponent {:.4} (intercept {:.3}, r2 {:.5}) over {} sizes, {} censored runs",
            fit.slope,
            fit.intercept,
            fit.r2,
            res.medians.len(),
            res.censored
        ),
        None => println!(
            "no exponent fit ({} censored runs); medians {:?}",
            res.censored, res.medians
        ),
    }
    println!("monotone medians: {}", res.monotone_medians);
    if let Some(path) = out {
        std::fs::write(
            path,
            serde_json::to_string_pretty(&serde_json::json!({
                "spec": spec,
                "medians": res.medians,
                "fit": res.fit,
                "censored": res.censored,
                "monotone_medians": res.monotone_medians,
            }))?,
        )?;
        let mut csv = String::from("param,size,seed,tau,censored\n");
        for pt in &res.points {
            let (tau, cens) = match pt.stopping.tau() {
                Some(t) => (t.to_string(), "0"),
                None => (String::new(), "1"),
            };
            csv.push_str(&format!("{},{},{},{},{}\n", pt.param, pt.size, pt.seed, tau, cens));
        }
        let csv_path = path.with_extension(
            path.extension()
                .map(|e| format!("{}.csv", e.to_string_lossy()))
                .unwrap_or_else(|| "csv".into()),
        );
        std::fs::write(&csv_path, csv)?;
        println!("wrote {} and {}", path.display(), csv_path.display());
    }
    Ok(())
}

fn cmd_floor(construction: &str, params: &str, schedules: &str) -> Result<bool> {
    let kvs = parse_kv(params)?;
    let c = match construction {
        "cycle1" => FloorConstruction::Cycle1 { n: kv_get(&kvs, "n")? },
        "second_cycle" => FloorConstruction::SecondCycle { quarter: kv_get(&kvs, "q")? },
        "parallel" => FloorConstruction::ParallelPaths {
            k: kv_get(&kvs, "k")?,
            len: kv_get(&kvs, "L")?,
        },
        "tn" => FloorConstruction::TreeTn { arm: kv_get(&kvs, "n")?, p: kv_get(&kvs, "p")? },
        "hdn" => FloorConstruction::Hdn {
            d: kv_get(&kvs, "d")?,
            n: kv_get(&kvs, "n")?,
            p: kv_get(&kvs, "p")?,
        },
        "accordion" => FloorConstruction::Accordion {
            d: kv_get(&kvs, "d")?,
            n: kv_get(&kvs, "n")?,
            p: kv_get(&kvs, "p")?,
        },
        _ => bail!("unknown construction `{construction}`"),
    };
    let report = floor_certify(&c, &parse_floor_schedules(schedules)?)?;
    match &report.violation {
        None => {
            println!(
                "PASS {}: oscillation >= 1/2 for every t <= {} over {} schedules",
                report.construction, report.horizon, report.schedules_run
            );
            Ok(true)
        }
        Some(v) => {
            println!(
                "FAIL {}: oscillation {} < 1/2 at t = {} under schedule {}",
                report.construction, v.osc, v.t, v.schedule
            );
            Ok(false)
        }
    }
}

fn cmd_verify(level: &str) -> Result<bool> {
    let quick = match level {
        "quick" => true,
        "full" => false,
        _ => bail!("unknown level `{level}` (quick|full)"),
    };
    let results = verify_suite(quick);
    let mut ok = true;
    for r in &results {
        println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        ok &= r.passed;
    }
    println!(
        "{}/{} checks passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Simulate {
            graph,
            profile,
            p,
            schedule,
            eps,
            max_steps,
            stop,
            record_every,
            out,
        } => cmd_simulate(
            graph,
            profile,
            p,
            schedule,
            *eps,
            *max_steps,
            stop,
            *record_every,
            out.as_deref(),
        )
        .map(|()| true),
        Cmd::Extend { graph, boundary, out, verify_tol } => {
            cmd_extend(graph, boundary, out.as_deref(), *verify_tol)
        }
        Cmd::Predict { n, p, d, diam, eps } => cmd_predict(*n, p, *d, *diam, *eps).map(|()| true),
        Cmd::Scaling { family, p, sizes, reps, eps, out, seed_base, max_steps } => cmd_scaling(
            family,
            p,
            sizes,
            *reps,
            *eps,
            out.as_deref(),
            *seed_base,
            *max_steps,
        )
        .map(|()| true),
        Cmd::Floor { construction, params, schedules } => {
            cmd_floor(construction, params, schedules)
        }
        Cmd::Verify { level } => cmd_verify(level),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
