use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use coarsesep::bench::{bench, to_csv, BenchSpec};
use coarsesep::clustering::{ball2_cluster_count, sparse_partition, xi_pairs};
use coarsesep::fatminor::{verify_fat_model, FatModel, PatternGraph};
use coarsesep::flowcut::{flow_or_sparse_cut, FlowCutConfig, FlowOrCut};
use coarsesep::generate::{generate, GraphFamily};
use coarsesep::io::{certificate_json, emit_graph, emit_weights, outcome_json, parse_certificate, parse_graph};
use coarsesep::oracle::{brute_force_fat_minor, exact_min_balanced_separator, exact_sparsest_separation};
use coarsesep::pipeline::{
    coarse_separator_or_model, induced_minor_separator, FlowSweepOracle, Outcome, PipelineConfig,
};
use coarsesep::WeightedGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Writes to stdout; a closed pipe ends the process quietly.
fn write_stdout(text: &str) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(1);
    }
}

macro_rules! out {
    ($($t:tt)*) => { write_stdout(&format!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { write_stdout(&format!("{}\n", format!($($t)*))) };
}

/// Coarse balanced separators and fat minor models.
#[derive(Parser)]
#[command(name = "coarsesep", version)]
struct Cli {
    /// Seed for every random choice, including generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// JSON output for commands that print text by default.
    #[arg(long, global = true)]
    json: bool,
    /// Only log errors.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file, or a family such as `grid:10` or `regular:3:200`.
    #[arg(long)]
    graph: String,
    /// Weight file with lines `v w(v)`.
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated graph in the edge-list format.
    Gen {
        /// Family, e.g. `grid:10`, `cycle:100`, `regular:3:1000`, `gnp:100:0.04`.
        family: String,
        /// Also write unit weights to this file.
        #[arg(long)]
        weights_out: Option<PathBuf>,
    },
    /// Low-diameter connected partition.
    Partition {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Concurrent flow of congestion at most gamma, or a sparse separation.
    Flowcut {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        gamma: f64,
    },
    /// Balanced separator with a ball cover, or a fat model of the pattern.
    Separate {
        #[command(flatten)]
        input: GraphInput,
        /// Pattern graph file or family.
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 3)]
        fatness: usize,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        /// Override the congestion parameter.
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Balanced separator covered by radius-1 balls, via a star partition.
    InducedSep {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Check a model JSON against a graph and pattern.
    VerifyModel {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        model: PathBuf,
        /// Defaults to the fatness recorded in the model.
        #[arg(long)]
        fatness: Option<usize>,
    },
    /// Check a separator JSON (`S`, `centers`, `radius`) against a graph.
    VerifySeparator {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        separator: PathBuf,
    },
    /// Exhaustive search on small instances.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// CSV of pipeline runs over a family of sizes and seeds.
    Bench {
        /// Family template; its size is replaced by each entry of `--sizes`.
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 3)]
        fatness: usize,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        /// Leave the runtime column empty, for reproducible output.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    FatMinor {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        fatness: usize,
    },
    Sparsest {
        #[command(flatten)]
        input: GraphInput,
    },
    Balanced {
        #[command(flatten)]
        input: GraphInput,
    },
}

fn load_graph(input: &GraphInput, seed: u64) -> Result<WeightedGraph> {
    let g = load_unweighted(&input.graph, seed)?;
    match &input.weights {
        None => Ok(g),
        Some(wp) => {
            let text = std::fs::read_to_string(wp).with_context(|| format!("reading {}", wp.display()))?;
            let w = coarsesep::io::parse_weights_str(&text, g.n()).with_context(|| format!("in {}", wp.display()))?;
            Ok(g.with_weights(w)?)
        }
    }
}

fn load_unweighted(spec: &str, seed: u64) -> Result<WeightedGraph> {
    let path = Path::new(spec);
    if path.exists() {
        return parse_graph(path, None).with_context(|| format!("in {spec}"));
    }
    match spec.parse::<GraphFamily>() {
        Ok(family) => Ok(generate(&family, seed)?),
        Err(_) => bail!("`{spec}` is neither a file nor a graph family"),
    }
}

fn load_pattern(spec: &str, seed: u64) -> Result<PatternGraph> {
    Ok(PatternGraph::from_graph(&load_unweighted(spec, seed)?))
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn run(cli: Cli) -> Result<ExitCode> {
    let seed = cli.seed;
    match cli.command {
        Command::Gen { family, weights_out } => {
            let g = generate(&family.parse::<GraphFamily>()?, seed)?;
            out!("{}", emit_graph(&g));
            if let Some(p) = weights_out {
                std::fs::write(&p, emit_weights(&g)).with_context(|| format!("writing {}", p.display()))?;
            }
        }
        Command::Partition { input, eps } => {
            let g = load_graph(&input, seed)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = sparse_partition(&g, eps, &mut rng)?;
            let ball2 = ball2_cluster_count(&g, &p);
            let xi = xi_pairs(&g, &p).len();
            if cli.json {
                print_json(&json!({
                    "clusters": p.clusters(),
                    "centers": p.centers(),
                    "strong_diameter": p.strong_diameter(),
                    "max_ball2_clusters": ball2,
                    "xi_pairs": xi,
                }));
            } else {
                for (i, c) in p.clusters().iter().enumerate() {
                    let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                    outln!("{i}: {}", body.join(" "));
                }
                outln!("strong_diameter: {}", p.strong_diameter());
                outln!("max_ball2_clusters: {ball2}");
                outln!("xi_pairs: {xi}");
            }
        }
        Command::Flowcut { input, gamma } => {
            let g = load_graph(&input, seed)?;
            match flow_or_sparse_cut(&g, gamma, &FlowCutConfig::default())? {
                FlowOrCut::Flow(f) => print_json(&json!({
                    "flow": {"congestion": f.max_congestion(), "paths": f.paths().len()}
                })),
                FlowOrCut::Cut {
                    separation, sparsity, ..
                } => print_json(&json!({
                    "separation": {"A": separation.side_a, "B": separation.side_b, "sparsity": sparsity}
                })),
            }
        }
        Command::Separate {
            input,
            pattern,
            fatness,
            eps,
            trials,
            gamma,
        } => {
            let g = load_graph(&input, seed)?;
            let h = load_pattern(&pattern, seed)?;
            let cfg = PipelineConfig {
                eps,
                fatness,
                trials,
                seed,
                gamma_override: gamma,
                ..PipelineConfig::default()
            };
            let result = coarse_separator_or_model(&g, &h, &cfg)?;
            let mut doc = outcome_json(&result.outcome, &h);
            if cli.json {
                doc["stats"] = serde_json::to_value(&result.stats)?;
            }
            print_json(&doc);
            if matches!(result.outcome, Outcome::Failure(_)) {
                return Ok(ExitCode::from(2));
            }
        }
        Command::InducedSep { input } => {
            let g = load_graph(&input, seed)?;
            let r = induced_minor_separator(&g, &FlowSweepOracle::default())?;
            let mut doc = certificate_json(&r.certificate);
            if cli.json {
                doc["stats"] = json!({
                    "degree_threshold": r.star.k,
                    "peeled": r.star.peeled,
                    "dominating_set": r.star.dominating_set_size,
                    "clusters": r.star.partition.len(),
                    "quotient_edges": r.star.quotient.graph.edge_count(),
                });
            }
            print_json(&doc);
        }
        Command::VerifyModel {
            input,
            pattern,
            model,
            fatness,
        } => {
            let g = load_graph(&input, seed)?;
            let h = load_pattern(&pattern, seed)?;
            let text = std::fs::read_to_string(&model).with_context(|| format!("reading {}", model.display()))?;
            let m = FatModel::from_json(&serde_json::from_str(&text)?, &h)?;
            let d = fatness.unwrap_or(m.fatness);
            let r = verify_fat_model(&g, &h, &m, d);
            if cli.json {
                print_json(&json!({
                    "valid": r.passed(),
                    "fatness": d,
                    "min_distance": (r.min_distance != usize::MAX).then_some(r.min_distance),
                    "problem": (!r.passed()).then(|| r.describe()),
                }));
            } else if r.passed() {
                outln!("valid {d}-fat model");
            } else {
                outln!("invalid: {}", r.describe());
            }
            if !r.passed() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::VerifySeparator { input, separator } => {
            let g = load_graph(&input, seed)?;
            let text =
                std::fs::read_to_string(&separator).with_context(|| format!("reading {}", separator.display()))?;
            let cert = parse_certificate(&serde_json::from_str(&text)?)?;
            let r = cert.verify(&g);
            if cli.json {
                print_json(&json!({
                    "valid": r.passed(),
                    "balanced": r.balanced,
                    "covered": r.covered,
                    "heaviest_component": r.heaviest_component,
                    "uncovered": r.uncovered,
                }));
            } else if r.passed() {
                outln!(
                    "valid separator: {} vertices, {} balls of radius {}",
                    cert.separator.len(),
                    cert.centers.len(),
                    cert.radius
                );
            } else {
                outln!(
                    "invalid: balanced={} covered={} heaviest component {}",
                    r.balanced,
                    r.covered,
                    r.heaviest_component
                );
            }
            if !r.passed() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Oracle { which } => match which {
            OracleCommand::FatMinor {
                input,
                pattern,
                fatness,
            } => {
                let g = load_graph(&input, seed)?;
                let h = load_pattern(&pattern, seed)?;
                match brute_force_fat_minor(&g, &h, fatness)? {
                    Some(m) => {
                        let mut doc = m.to_json(&h);
                        doc["result"] = json!("model");
                        print_json(&doc);
                    }
                    None => print_json(&json!({"result": "none"})),
                }
            }
            OracleCommand::Sparsest { input } => {
                let g = load_graph(&input, seed)?;
                let (sep, alpha) = exact_sparsest_separation(&g)?;
                print_json(&json!({"A": sep.side_a, "B": sep.side_b, "sparsity": alpha}));
            }
            OracleCommand::Balanced { input } => {
                let g = load_graph(&input, seed)?;
                let (s, size) = exact_min_balanced_separator(&g)?;
                print_json(&json!({"S": s, "size": size}));
            }
        },
        Command::Bench {
            family,
            sizes,
            pattern,
            fatness,
            eps,
            seeds,
            trials,
            no_timing,
        } => {
            let spec = BenchSpec {
                family: family.parse()?,
                sizes,
                pattern: load_pattern(&pattern, seed)?,
                config: PipelineConfig {
                    eps,
                    fatness,
                    trials,
                    ..PipelineConfig::default()
                },
                seeds,
                timing: !no_timing,
            };
            out!("{}", to_csv(&bench(&spec)));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
