//! Command-line interface: generate instances, solve them with the modular
//! router, compare against the exact optimum and run batch benchmarks.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use modroute::{
    baseline_non_modular, exact_optimal, gen_clustered, gen_theory, route, ClusteredGenParams,
    EventKind, Instance, RouteResult, TheoryGenParams, TimedPlan,
};

#[derive(Parser)]
#[command(name = "modroute", version, about = "Routing for two modular agents on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Clustered,
    Theory,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Route two modular agents over an instance file.
    Solve {
        /// Instance file in the canonical JSON format.
        #[arg(long)]
        instance: PathBuf,
        /// Cluster-separation threshold for the splitting decision.
        #[arg(long, default_value_t = 0.4)]
        dt: f64,
        /// Write the per-step trace to this JSON file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Summary format on standard output.
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Exact optimum for a small instance.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        /// Price both modules separately with no shared-edge discount.
        #[arg(long)]
        non_modular: bool,
        /// Write the optimal plan trace to this JSON file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Generate a benchmark instance.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 18)]
        nodes: usize,
        #[arg(long, default_value_t = 8)]
        targets: usize,
        #[arg(long, default_value_t = 3)]
        clusters: usize,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 5.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        beta1: f64,
        #[arg(long, default_value_t = 1.0)]
        beta2: f64,
        #[arg(long, default_value_t = 2)]
        cluster_size: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch benchmark on seeded clustered instances.
    Bench {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.4)]
        dt: f64,
        /// Also solve each instance exactly (skipped when over the guard).
        #[arg(long)]
        with_oracle: bool,
        /// CSV output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Round to six significant digits, printed without exponent where natural.
fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let digits_before = x.abs().log10().floor() as i32 + 1;
    let decimals = (6 - digits_before).max(0) as usize;
    format!("{x:.decimals$}")
}

fn read_instance(path: &PathBuf) -> Result<Instance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read instance file {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("invalid instance in {}", path.display()))
}

/// Per-step trace: module positions, joined flag and any event at that step.
fn trace_json(instance: &Instance, plan: &TimedPlan, result: Option<&RouteResult>) -> serde_json::Value {
    let events = result.map(|r| r.events.as_slice()).unwrap_or(&[]);
    let mut joined = instance.start_joined;
    let mut steps = Vec::with_capacity(plan.path1.len());
    for t in 0..plan.path1.len() {
        let event = events.iter().find(|e| e.t == t);
        if let Some(e) = event {
            joined = e.kind == EventKind::Join;
        }
        steps.push(serde_json::json!({
            "t": t,
            "m1": plan.path1[t],
            "m2": plan.path2[t],
            "joined": joined,
            "event": event.map(|e| match e.kind {
                EventKind::Join => "join",
                EventKind::Split => "split",
            }),
        }));
    }
    serde_json::json!({ "steps": steps })
}

fn cmd_solve(
    instance: PathBuf,
    dt: f64,
    trace: Option<PathBuf>,
    format: OutputFormat,
) -> Result<()> {
    let inst = read_instance(&instance)?;
    let result = route(&inst, dt);
    match format {
        OutputFormat::Json => {
            let summary = serde_json::json!({
                "total_cost": result.total_cost,
                "events": result.events,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        OutputFormat::Csv => {
            let events: Vec<String> = result
                .events
                .iter()
                .map(|e| {
                    let kind = match e.kind {
                        EventKind::Join => "join",
                        EventKind::Split => "split",
                    };
                    format!("{kind}@{}:t{}", e.node, e.t)
                })
                .collect();
            println!("total_cost,events");
            println!("{},{}", fmt_sig(result.total_cost), events.join(";"));
        }
    }
    if let Some(path) = trace {
        let mut value = trace_json(&inst, &result.plan, Some(&result));
        value["total_cost"] = serde_json::json!(result.total_cost);
        fs::write(&path, serde_json::to_string_pretty(&value)?)
            .with_context(|| format!("cannot write trace to {}", path.display()))?;
    }
    Ok(())
}

fn cmd_oracle(instance: PathBuf, non_modular: bool, trace: Option<PathBuf>) -> Result<()> {
    let inst = read_instance(&instance)?;
    let (cost, plan) = exact_optimal(&inst, !non_modular)?;
    println!("{}", fmt_sig(cost));
    if let Some(path) = trace {
        let mut value = trace_json(&inst, &plan, None);
        value["total_cost"] = serde_json::json!(cost);
        fs::write(&path, serde_json::to_string_pretty(&value)?)
            .with_context(|| format!("cannot write trace to {}", path.display()))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    kind: GenKind,
    seed: u64,
    nodes: usize,
    targets: usize,
    clusters: usize,
    alpha: f64,
    lambda: f64,
    beta1: f64,
    beta2: f64,
    cluster_size: usize,
    out: Option<PathBuf>,
) -> Result<()> {
    let instance = match kind {
        GenKind::Clustered => {
            let mut params = ClusteredGenParams::new(seed);
            params.node_count = nodes;
            params.target_count = targets;
            params.cluster_count = clusters;
            gen_clustered(&params)?
        }
        GenKind::Theory => gen_theory(&TheoryGenParams {
            alpha,
            lambda,
            beta1,
            beta2,
            cluster_size,
        })?,
    };
    let json = instance.to_json();
    match out {
        Some(path) => fs::write(&path, json)
            .with_context(|| format!("cannot write instance to {}", path.display()))?,
        None => println!("{json}"),
    }
    Ok(())
}

fn cmd_bench(trials: u64, seed: u64, dt: f64, with_oracle: bool, out: Option<PathBuf>) -> Result<()> {
    if trials == 0 {
        bail!("bench requires at least one trial");
    }
    let mut csv = String::from("seed,modular_cost,baseline_cost,oracle_cost,win\n");
    let mut wins = 0u64;
    for s in seed..seed + trials {
        let instance = gen_clustered(&ClusteredGenParams::new(s))?;
        let modular = route(&instance, dt);
        let baseline = baseline_non_modular(&instance);
        let oracle_cost = if with_oracle {
            exact_optimal(&instance, true).ok().map(|(c, _)| c)
        } else {
            None
        };
        let win = modular.total_cost < baseline.total_cost;
        wins += u64::from(win);
        csv.push_str(&format!(
            "{s},{},{},{},{}\n",
            fmt_sig(modular.total_cost),
            fmt_sig(baseline.total_cost),
            oracle_cost.map(fmt_sig).unwrap_or_default(),
            win
        ));
    }
    let summary = format!(
        "win rate: {wins}/{trials} = {}",
        fmt_sig(wins as f64 / trials as f64)
    );
    match out {
        Some(path) => {
            fs::write(&path, csv)
                .with_context(|| format!("cannot write results to {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{csv}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            instance,
            dt,
            trace,
            format,
        } => cmd_solve(instance, dt, trace, format),
        Command::Oracle {
            instance,
            non_modular,
            trace,
        } => cmd_oracle(instance, non_modular, trace),
        Command::Gen {
            kind,
            seed,
            nodes,
            targets,
            clusters,
            alpha,
            lambda,
            beta1,
            beta2,
            cluster_size,
            out,
        } => cmd_gen(
            kind, seed, nodes, targets, clusters, alpha, lambda, beta1, beta2, cluster_size, out,
        ),
        Command::Bench {
            trials,
            seed,
            dt,
            with_oracle,
            out,
        } => cmd_bench(trials, seed, dt, with_oracle, out),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
