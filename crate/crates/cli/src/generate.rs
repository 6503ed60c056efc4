use crate::{read_file, to_json, write_file, CliError};
use clap::ValueEnum;
use graph_knapsack::generate::{random_instance, GraphFamily, RandomSpec};
use graph_knapsack::reductions::{
    reduce_hamiltonian_to_path, reduce_knapsack_to_path_gadget, reduce_knapsack_to_star_connected,
    reduce_partial_vc_to_connected, reduce_vertex_cover_to_connected, KnapsackItems, ReductionKind, SimpleGraph,
};
use graph_knapsack::{Instance, Variant};
use serde::de::DeserializeOwned;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    Vc,
    Star,
    Pvc,
    Ham,
    Ladder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Tree,
    Gnp,
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum VariantArg {
    Connected,
    Path,
    ShortestPath,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Connected => Variant::Connected,
            VariantArg::Path => Variant::Path,
            VariantArg::ShortestPath => Variant::ShortestPath,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum, conflicts_with = "random", required_unless_present = "random")]
    reduction: Option<Reduction>,
    /// Source graph for vc, pvc and ham: `{"n": .., "edges": [[u, v], ..]}`.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Knapsack items for star and ladder: `{"sizes", "values", "capacity", "target"}`.
    #[arg(long)]
    items: Option<PathBuf>,
    /// Cover size for vc and pvc.
    #[arg(long)]
    k: Option<u64>,
    /// Number of edges to cover for pvc.
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    y: Option<usize>,
    /// Variant of random instances and of the ladder gadget.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,

    #[arg(long, value_enum)]
    random: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    max_weight: u64,
    #[arg(long, default_value_t = 8)]
    max_value: u64,
    /// Largest edge cost of shortest_path instances.
    #[arg(long, default_value_t = 5)]
    max_cost: u64,
    /// Edge probability for gnp.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Capacity; drawn at random when absent.
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    d: Option<u64>,

    /// Write the instance here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the reduction's vertex roles and source instance here.
    #[arg(long)]
    provenance: Option<PathBuf>,
}

fn required<T: Copy>(value: Option<T>, flag: &str, what: impl std::fmt::Display) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{what} needs --{flag}")))
}

fn load<T: DeserializeOwned>(path: Option<&Path>, flag: &str, what: ReductionKind) -> Result<T, CliError> {
    let path = path.ok_or_else(|| CliError::Usage(format!("reduction {what} needs --{flag}")))?;
    serde_json::from_str(&read_file(path)?).map_err(|e| CliError::input(path.display(), e))
}

fn reduce(args: &GenerateArgs, reduction: Reduction) -> Result<(Instance, String), CliError> {
    let kind = match reduction {
        Reduction::Vc => ReductionKind::Vc,
        Reduction::Star => ReductionKind::Star,
        Reduction::Pvc => ReductionKind::Pvc,
        Reduction::Ham => ReductionKind::Ham,
        Reduction::Ladder => ReductionKind::Ladder,
    };
    let what = format!("reduction {kind}");
    let out = match reduction {
        Reduction::Vc => {
            let g: SimpleGraph = load(args.graph.as_deref(), "graph", kind)?;
            reduce_vertex_cover_to_connected(&g, required(args.k, "k", &what)?)
        }
        Reduction::Pvc => {
            let g: SimpleGraph = load(args.graph.as_deref(), "graph", kind)?;
            reduce_partial_vc_to_connected(&g, required(args.k, "k", &what)?, required(args.l, "l", &what)?)
        }
        Reduction::Ham => {
            let g: SimpleGraph = load(args.graph.as_deref(), "graph", kind)?;
            reduce_hamiltonian_to_path(&g, required(args.x, "x", &what)?, required(args.y, "y", &what)?)
        }
        Reduction::Star => {
            reduce_knapsack_to_star_connected(&load::<KnapsackItems>(args.items.as_deref(), "items", kind)?)
        }
        Reduction::Ladder => {
            let items: KnapsackItems = load(args.items.as_deref(), "items", kind)?;
            let variant = args.variant.map_or(Variant::Path, Variant::from);
            reduce_knapsack_to_path_gadget(&items, variant)
        }
    }
    .map_err(|e| CliError::Usage(format!("{what}: {e}")))?;
    Ok((out.instance, to_json(&out.provenance)))
}

fn random(args: &GenerateArgs, family: Family) -> Result<Instance, CliError> {
    let n = required(args.n, "n", "random generation")?;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&args.p) {
        return Err(CliError::Usage(format!("--p must lie in [0, 1], got {}", args.p)));
    }
    let family = match family {
        Family::Tree => GraphFamily::Tree,
        Family::Gnp => GraphFamily::Gnp(args.p),
        Family::Grid => GraphFamily::Grid,
    };
    let variant = args.variant.map_or(Variant::Connected, Variant::from);
    let spec = RandomSpec {
        max_weight: args.max_weight,
        max_value: args.max_value,
        max_cost: args.max_cost,
        s: args.s,
        d: args.d,
        ..RandomSpec::new(family, variant, n)
    };
    Ok(random_instance(&spec, args.seed))
}

pub fn run(args: &GenerateArgs) -> Result<u8, CliError> {
    let (inst, provenance) = match (args.reduction, args.random) {
        (Some(r), None) => {
            let (inst, provenance) = reduce(args, r)?;
            (inst, Some(provenance))
        }
        (None, Some(family)) => (random(args, family)?, None),
        _ => return Err(CliError::Usage("pass exactly one of --reduction and --random".into())),
    };
    let mut text = inst.to_json();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &args.output {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    match (&args.provenance, provenance) {
        (Some(path), Some(p)) => write_file(path, &p)?,
        (Some(_), None) => log::warn!("random instances have no provenance; --provenance ignored"),
        _ => {}
    }
    Ok(0)
}
