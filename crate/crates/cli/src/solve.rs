use crate::{load_instance, to_json, CliError};
use clap::ValueEnum;
use graph_knapsack::approx::{fptas_optimize, Epsilon};
use graph_knapsack::connected::{solve_connected_with, ConnectedOptions};
use graph_knapsack::oracle::{
    connected_witness, enumerate_connected_subsets_opt, enumerate_paths_opt, enumerate_shortest_paths_opt,
    path_witness, OracleError,
};
use graph_knapsack::path::{
    default_trials, solve_path_color_coding, solve_path_color_sweep, solve_path_tree, solve_path_treewidth_with,
    PathError,
};
use graph_knapsack::shortest::solve_shortest_path_seeded;
use graph_knapsack::{Instance, SolveReport, SolveStats, Variant};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Auto,
    Treewidth,
    Color,
    Labels,
    Tree,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Decision,
    Optimize,
}

#[derive(clap::Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    engine: Engine,
    /// Defaults to decision when the instance has a target `d`.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Approximate with the value-scaling scheme, e.g. `1/4`.
    #[arg(long)]
    epsilon: Option<Epsilon>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Colour-coding trials per path length.
    #[arg(long)]
    trials: Option<u64>,
    /// Colour coding: only look for paths on exactly this many vertices.
    #[arg(long)]
    k: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    /// Run the solver this many times and report the fastest run.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    repeat: u32,
}

fn mismatch(engine: Engine, variant: Variant) -> CliError {
    let name = engine.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    CliError::Usage(format!("engine {name} does not solve {variant} instances"))
}

fn oracle_error(e: OracleError) -> CliError {
    CliError::Usage(format!("oracle: {e}"))
}

fn path_error(e: PathError) -> CliError {
    CliError::Usage(e.to_string())
}

fn resolve(engine: Engine, inst: &Instance) -> Engine {
    if engine != Engine::Auto {
        return engine;
    }
    match inst.variant() {
        Variant::Path | Variant::ShortestPath if inst.is_forest() => Engine::Tree,
        Variant::ShortestPath => Engine::Labels,
        _ => Engine::Treewidth,
    }
}

fn oracle(inst: &Instance) -> Result<SolveReport, CliError> {
    let started = Instant::now();
    let frontier = match inst.variant() {
        Variant::Connected => enumerate_connected_subsets_opt(inst),
        Variant::Path => enumerate_paths_opt(inst),
        Variant::ShortestPath => enumerate_shortest_paths_opt(inst),
    }
    .map_err(oracle_error)?;
    let mut stats = SolveStats::new("oracle");
    stats.states_touched = frontier.len() as u64;
    stats.set_wall_time(started.elapsed());
    Ok(SolveReport::from_frontier(inst, frontier, stats, |pair| {
        match inst.variant() {
            Variant::Connected => connected_witness(inst, pair),
            Variant::Path => path_witness(inst, pair, false),
            Variant::ShortestPath => path_witness(inst, pair, true),
        }
        .ok()
        .flatten()
        .expect("frontier pair has a witness")
    }))
}

fn exact(inst: &Instance, engine: Engine, args: &SolveArgs) -> Result<SolveReport, CliError> {
    let variant = inst.variant();
    match (engine, variant) {
        (Engine::Oracle, _) => oracle(inst),
        (Engine::Treewidth, Variant::Connected) => {
            let opts = ConnectedOptions { seed: args.seed, ..ConnectedOptions::default() };
            solve_connected_with(inst, opts).map_err(|e| CliError::Usage(e.to_string()))
        }
        (Engine::Treewidth, Variant::Path) => solve_path_treewidth_with(inst, args.seed).map_err(path_error),
        (Engine::Color, Variant::Path) => match args.k {
            Some(k) => {
                let trials = args.trials.unwrap_or_else(|| default_trials(k));
                solve_path_color_coding(inst, k, trials, args.seed).map_err(path_error)
            }
            None => solve_path_color_sweep(inst, args.trials, args.seed).map_err(path_error),
        },
        (Engine::Labels, Variant::ShortestPath) => Ok(solve_shortest_path_seeded(inst, args.seed).0),
        (Engine::Tree, Variant::Path | Variant::ShortestPath) => match solve_path_tree(inst) {
            Err(PathError::NoPath) => {
                let mut stats = SolveStats::new("tree");
                stats.unreachable = true;
                Ok(SolveReport::infeasible(stats))
            }
            other => other.map_err(path_error),
        },
        (engine, variant) => Err(mismatch(engine, variant)),
    }
}

fn check_flags(args: &SolveArgs, engine: Engine) -> Result<(), CliError> {
    if engine != Engine::Color && (args.k.is_some() || args.trials.is_some()) {
        return Err(CliError::Usage("--k and --trials only apply to the color engine".into()));
    }
    Ok(())
}

pub fn run(args: &SolveArgs) -> Result<u8, CliError> {
    let mut inst = load_instance(&args.input)?;
    let mode = args.mode.unwrap_or(if inst.d().is_some() { Mode::Decision } else { Mode::Optimize });
    match mode {
        Mode::Decision if inst.d().is_none() => {
            return Err(CliError::Usage("decision mode needs a target d in the instance".into()));
        }
        Mode::Optimize if inst.d().is_some() => {
            log::warn!("optimize mode ignores the target d");
            inst = inst.with_target(None);
        }
        _ => {}
    }
    let engine = resolve(args.engine, &inst);
    check_flags(args, engine)?;
    log::info!("solving {} instance with n = {} using {:?}", inst.variant(), inst.n(), engine);

    let mut fastest: Option<u64> = None;
    let mut output = None;
    for _ in 0..args.repeat {
        let started = Instant::now();
        let (mut json, feasible) = match args.epsilon {
            None => {
                let mut report = exact(&inst, engine, args)?;
                report.stats.wall_time_us = None;
                let feasible = report.feasible;
                (serde_json::to_value(report), feasible)
            }
            Some(eps) => {
                let mut report = fptas_optimize(&inst, eps, |scaled| exact(scaled, engine, args))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                report.report.stats.wall_time_us = None;
                let feasible = report.report.feasible;
                (serde_json::to_value(report), feasible)
            }
        };
        let elapsed = started.elapsed().as_micros() as u64;
        fastest = Some(fastest.map_or(elapsed, |f| f.min(elapsed)));
        if args.timing {
            if let Ok(serde_json::Value::Object(map)) = json.as_mut() {
                if let Some(serde_json::Value::Object(stats)) = map.get_mut("stats") {
                    stats.insert("wall_time_us".into(), fastest.into());
                }
            }
        }
        output = Some((json.expect("report serialises"), feasible));
    }
    let (json, feasible) = output.expect("repeat is at least 1");
    log::debug!("fastest run took {} us", fastest.unwrap_or_default());
    print!("{}", to_json(&json));
    Ok(if mode == Mode::Decision && !feasible { 1 } else { 0 })
}
