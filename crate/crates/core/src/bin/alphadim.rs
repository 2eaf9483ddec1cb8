use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use alphadim::bounds::{self, ReportOptions, SubsetStrategy};
use alphadim::construct::{Construction, EmbeddingResult};
use alphadim::experiment::{self, ExperimentKind, SweepConfig};
use alphadim::graph::{gen_gnp, gen_kregular, gen_named, gen_planted_partition, read_edge_list, write_edge_list, Family};
use alphadim::metric::{doubling_dimension, FiniteMetric, PointSet};
use alphadim::{Error, Graph, Limits, Mode};

#[derive(Parser)]
#[command(name = "alphadim", version, about = "Bounds and certified embeddings for alpha-preserving graph embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Largest vertex count for exact clique covers.
    #[arg(long, default_value_t = Limits::default().clique_cover_exact)]
    cover_limit: usize,
    /// Largest point count for exact covering numbers.
    #[arg(long, default_value_t = Limits::default().covering_exact)]
    covering_limit: usize,
    /// Largest point count for exact doubling dimension.
    #[arg(long, default_value_t = Limits::default().doubling_exact)]
    doubling_limit: usize,
    /// Node budget for branch-and-bound searches.
    #[arg(long, default_value_t = Limits::default().search_nodes)]
    search_nodes: u64,
}

impl LimitArgs {
    fn limits(self) -> Limits {
        Limits {
            clique_cover_exact: self.cover_limit,
            covering_exact: self.covering_limit,
            doubling_exact: self.doubling_limit,
            search_nodes: self.search_nodes,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Complete,
    Empty,
    Star,
    Path,
    Cycle,
    CompleteBipartite,
    TwoCliquesMatched,
    Gnp,
    Kregular,
    Planted,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    /// Distance matrix text ("n" then rows).
    Metric,
    /// Point set text ("n d norm" then coordinates).
    Points,
    /// Embedding JSON as written by `embed`.
    Embedding,
    /// Edge list, measured with its shortest-path metric.
    Graph,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph as an edge list.
    Generate {
        #[arg(long, value_enum)]
        family: Model,
        #[arg(long)]
        n: usize,
        /// Edge (or intra-block) probability.
        #[arg(long)]
        p: Option<f64>,
        /// Inter-block probability.
        #[arg(long)]
        q: Option<f64>,
        /// Degree, or number of blocks for the planted model.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower and upper bounds on the preservation dimension.
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest BFS-ball radius among the lower-bound subsets.
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Write the JSON report here; the table then goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Build an embedding with a chosen construction.
    Embed {
        graph: PathBuf,
        #[arg(long)]
        construction: Construction,
        #[arg(long)]
        alpha: f64,
        /// Required by the randomized constructions.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Check an embedding; exit 0 on pass and 1 on fail.
    Verify {
        graph: PathBuf,
        embedding: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "embedding")]
        format: InputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Doubling dimension of a finite metric.
    Doubling {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "metric")]
        format: InputFormat,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Monte Carlo experiments and parameter sweeps.
    Experiment {
        /// Flat key = value sweep configuration.
        #[arg(long, conflicts_with = "kind")]
        config: Option<PathBuf>,
        #[arg(long)]
        kind: Option<ExperimentKind>,
        /// Comma-separated grids.
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Graph family for a bounds sweep.
        #[arg(long)]
        family: Option<String>,
        /// Record per-trial wall time (makes the CSV run-dependent).
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// CSV destination; the JSON summary goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

enum Failure {
    Negative,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    read_edge_list(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need<T>(v: Option<T>, flag: &str, model: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for {model}")))
}

fn generate(family: Model, n: usize, p: Option<f64>, q: Option<f64>, k: Option<usize>, seed: Option<u64>) -> Result<Graph, Failure> {
    let named = |f| Ok(gen_named(f, n)?);
    match family {
        Model::Complete => named(Family::Complete),
        Model::Empty => named(Family::Empty),
        Model::Star => named(Family::Star),
        Model::Path => named(Family::Path),
        Model::Cycle => named(Family::Cycle),
        Model::CompleteBipartite => named(Family::CompleteBipartite),
        Model::TwoCliquesMatched => named(Family::TwoCliquesMatched),
        Model::Gnp => Ok(gen_gnp(n, need(p, "p", "gnp")?, need(seed, "seed", "gnp")?)?),
        Model::Kregular => Ok(gen_kregular(n, need(k, "k", "kregular")?, need(seed, "seed", "kregular")?)?),
        Model::Planted => {
            let (sizes, _) = experiment::balanced_blocks(n, need(k, "k", "planted")?)?;
            let (p, q) = (need(p, "p", "planted")?, need(q, "q", "planted")?);
            Ok(gen_planted_partition(&sizes, p, q, need(seed, "seed", "planted")?)?)
        }
    }
}

fn limits_for(mode: Mode, l: LimitArgs) -> Limits {
    let mut limits = l.limits();
    if mode == Mode::Greedy {
        limits.clique_cover_exact = 0;
        limits.covering_exact = 0;
        limits.doubling_exact = 0;
    }
    limits
}

fn load_embedding(g: &Graph, path: &Path, format: InputFormat) -> Result<EmbeddingResult, Failure> {
    let text = read(path)?;
    let bad = |e: Error| Failure::Usage(format!("{}: {e}", path.display()));
    let identity = || -> Vec<usize> { (0..g.n()).collect() };
    let wrap = |target, dim| EmbeddingResult {
        source: "input".into(),
        alpha_interval: alphadim::construct::AlphaInterval { lo: 0.0, hi: f64::INFINITY, hi_inclusive: false },
        r: 1.0,
        dim,
        doubling_bound: None,
        vertex_map: identity(),
        target,
        diagnostics: Default::default(),
    };
    match format {
        InputFormat::Embedding => EmbeddingResult::from_json(&text).map_err(bad),
        InputFormat::Points => {
            let p = PointSet::from_text(&text).map_err(bad)?;
            let dim = p.dim;
            Ok(wrap(alphadim::construct::Target::Points(p), dim))
        }
        InputFormat::Metric => {
            let m = FiniteMetric::from_text(&text).map_err(bad)?;
            Ok(wrap(alphadim::construct::Target::DistanceMatrix(m), 0))
        }
        InputFormat::Graph => Err(Failure::Usage("verify needs an embedding, points or metric file".into())),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Generate { family, n, p, q, k, seed, out } => {
            let g = generate(family, n, p, q, k, seed)?;
            emit(out.as_deref(), &write_edge_list(&g))
        }
        Command::Analyze { graph, alpha, mode, seed, radius, out, limits } => {
            let g = read_graph(&graph)?;
            let opts = ReportOptions {
                limits: limits_for(mode, limits),
                strategy: SubsetStrategy { max_radius: radius, ..Default::default() },
                seed,
                ..Default::default()
            };
            let rep = bounds::report(&g, alpha, &opts)?;
            let json = rep.to_json()? + "\n";
            match out {
                Some(p) => {
                    emit(Some(&p), &json)?;
                    print!("{rep}");
                }
                None => {
                    print!("{json}");
                    eprint!("{rep}");
                }
            }
            Ok(())
        }
        Command::Embed { graph, construction, alpha, seed, out, limits } => {
            let g = read_graph(&graph)?;
            let seed = match construction {
                Construction::SimplexJl => need(seed, "seed", "simplex-jl")?,
                _ => seed.unwrap_or(0),
            };
            let e = construction.build(&g, alpha, seed, &limits.limits())?;
            emit(out.as_deref(), &(e.to_json()? + "\n"))
        }
        Command::Verify { graph, embedding, alpha, format, out } => {
            let g = read_graph(&graph)?;
            let e = load_embedding(&g, &embedding, format)?;
            let cert = e.check(&g, alpha)?;
            emit(out.as_deref(), &(serde_json::to_string_pretty(&cert).map_err(Error::from)? + "\n"))?;
            if cert.pass {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::Doubling { input, format, mode, limits } => {
            let limits = limits_for(mode, limits);
            let text = read(&input)?;
            let bad = |e: Error| Failure::Usage(format!("{}: {e}", input.display()));
            let metric = match format {
                InputFormat::Metric => FiniteMetric::from_text(&text).map_err(bad)?,
                InputFormat::Points => alphadim::metric::induced_metric(&PointSet::from_text(&text).map_err(bad)?),
                InputFormat::Embedding => EmbeddingResult::from_json(&text).map_err(bad)?.target.metric(),
                InputFormat::Graph => FiniteMetric::shortest_path(&read_edge_list(&text).map_err(bad)?)?,
            };
            let d = doubling_dimension(&metric, mode, &limits)?;
            let out = json!({ "points": metric.n, "mode": mode, "doubling_dimension": d });
            println!("{}", serde_json::to_string_pretty(&out).map_err(Error::from)?);
            Ok(())
        }
        Command::Experiment { config, kind, n, k, p, q, alpha, trials, seed, family, timing, jobs, out, limits } => {
            let mut cfg = match (config, kind) {
                (Some(path), _) => SweepConfig::parse(&read(&path)?)?,
                (None, Some(kind)) => SweepConfig::new(kind),
                (None, None) => return Err(Failure::Usage("give --config or --kind".into())),
            };
            let grids = [("n", n), ("k", k), ("p", p), ("q", q), ("alpha", alpha), ("family", family)];
            for (key, value) in grids {
                if let Some(v) = value {
                    cfg.set(key, &v).map_err(|e| Failure::Usage(format!("--{key}: {e}")))?;
                }
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            cfg.timing |= timing;
            if cfg.experiment == ExperimentKind::Bounds && cfg.graph.is_none() {
                return Err(Failure::Usage("bounds sweep needs family".into()));
            }
            let limits = limits.limits();
            let result = experiment::with_jobs(jobs, || experiment::sweep(&cfg, &limits))??;
            if let Some(path) = out.as_deref() {
                emit(Some(path), &experiment::to_csv(&result.records)?)?;
            }
            let json = serde_json::to_string_pretty(&result.summaries).map_err(Error::from)?;
            println!("{json}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
