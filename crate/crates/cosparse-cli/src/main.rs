//! Single executable exposing the full pipeline for scripting and CI.
//!
//! Exit codes: 0 when the command's success contract holds, 2 when `certify`
//! finds violations, 1 on any error. All randomness flows from `--seed`, and
//! identical invocations produce byte-identical reports (timing is opt-in
//! and goes to stderr).

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cosparse::connectivity::biconnected_decomposition;
use cosparse::graph::{parse_edge_list, parse_graph6, Graph};
use cosparse::harness::{
    certify_equivalence, corpus_from_edgelist_dir, corpus_from_graph6_file, counting_probe,
    enumerate_connected, enumerate_connected_upto, glued_corpus, profile_complexity, random_corpus,
    union_corpus, Corpus, KernelProbeConfig,
};
use cosparse::oracle::{Pattern, PatternName};
use cosparse::refine::{engine_signature_with_layers, Engine};
use cosparse::report::{
    to_json_pretty, CompareReport, DecompositionReport, PlanReport, REPORT_SCHEMA_VERSION,
};
use cosparse::sparsify::{cosparsify_plan, dense_plan, distance_bounded_plan, InteractionPlan};

#[derive(Parser)]
#[command(
    name = "cosparse",
    version,
    about = "Connectivity-aware sparsification of pairwise message passing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Flavor {
    Dense,
    Cosp,
    CospDist,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Wl1,
    Dense,
    Cosp,
    CospDist,
}

impl EngineArg {
    fn to_engine(self, max_dist: usize) -> Result<Engine> {
        if max_dist == 0 {
            bail!("--max-dist must be at least 1");
        }
        Ok(match self {
            EngineArg::Wl1 => Engine::Wl1,
            EngineArg::Dense => Engine::Fwl2Dense,
            EngineArg::Cosp => Engine::Fwl2Cosp,
            EngineArg::CospDist => Engine::Fwl2CospDist(max_dist),
        })
    }
}

#[derive(Args)]
struct CommonOpts {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Single seed for everything random in this invocation.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker-pool width for corpus commands; 1 keeps runs strictly serial.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Cap refinement at a fixed number of rounds instead of stability.
    #[arg(long)]
    layers: Option<usize>,
    /// Print progress/timing to stderr.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Components, biconnected blocks, cut nodes, block-cut tree.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Edgelist)]
        format: InputFormat,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Materialize an interaction plan and report exact sizes.
    Plan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Edgelist)]
        format: InputFormat,
        #[arg(long, value_enum)]
        flavor: Flavor,
        /// Shortest-path bound for the distance-bounded flavor.
        #[arg(long, default_value_t = 4)]
        max_dist: usize,
        /// Omit the per-pair neighbor lists (stats header only).
        #[arg(long)]
        stats_only: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Compare two graphs under one engine.
    Compare {
        #[arg(long)]
        input_a: PathBuf,
        #[arg(long)]
        input_b: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Edgelist)]
        format: InputFormat,
        #[arg(long, value_enum)]
        engine: EngineArg,
        #[arg(long, default_value_t = 4)]
        max_dist: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run two engines over a corpus; exit 2 if they induce different
    /// signature partitions.
    Certify {
        #[arg(long)]
        corpus: String,
        #[arg(long, value_enum, default_value_t = EngineArg::Dense)]
        engine_a: EngineArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Cosp)]
        engine_b: EngineArg,
        #[arg(long, default_value_t = 4)]
        max_dist: usize,
        /// Include wall-clock totals in the report (breaks byte-stability).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Oracle substructure counts over a corpus, optionally with the
    /// engine-separation contingency table.
    Count {
        #[arg(long)]
        corpus: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
        #[arg(long, default_value_t = 4)]
        max_dist: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exact pair/triple budgets and reduction ratios per corpus member.
    Profile {
        #[arg(long)]
        corpus: String,
        /// Also run dense and sparsified forward kernels and report MACs.
        #[arg(long)]
        kernel_macs: bool,
        /// Walk-encoding order for the kernel probe.
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        width: usize,
        #[arg(long, default_value_t = 2)]
        kernel_layers: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn read_graph(path: &Path, format: InputFormat) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match format {
        InputFormat::Edgelist => {
            parse_edge_list(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
        }
        InputFormat::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| anyhow!("{}: empty graph6 input", path.display()))?;
            parse_graph6(line).map_err(|e| anyhow!("{}: {e}", path.display()))
        }
    }
}

/// Corpus specs: `enum:N`, `enum-upto:N`, `unions:COUNT:N`,
/// `glued:COUNT:MAXNODES:MAXBLOCK`, `random:COUNT:NMIN:NMAX:P`, or a path
/// (directory of edge-list files, or a graph6 file with one graph per line).
fn load_corpus(spec: &str, seed: u64) -> Result<Corpus> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str, what: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| anyhow!("bad {what} in corpus spec {spec:?}"))
    };
    match parts.as_slice() {
        ["enum", n] => Ok(enumerate_connected(num(n, "node count")?)?),
        ["enum-upto", n] => Ok(enumerate_connected_upto(num(n, "node count")?)?),
        ["unions", count, n] => {
            let base = enumerate_connected_upto(num(n, "node count")?)?;
            Ok(union_corpus(&base, num(count, "count")?, seed))
        }
        ["glued", count, max_nodes, max_block] => Ok(glued_corpus(
            num(count, "count")?,
            num(max_nodes, "max nodes")?,
            num(max_block, "max block")?,
            seed,
        )),
        ["random", count, n_min, n_max, p] => {
            let p: f64 = p
                .parse()
                .map_err(|_| anyhow!("bad probability in {spec:?}"))?;
            if !(0.0..=1.0).contains(&p) {
                bail!("probability {p} outside [0, 1]");
            }
            Ok(random_corpus(
                num(count, "count")?,
                num(n_min, "min nodes")?,
                num(n_max, "max nodes")?,
                p,
                seed,
            ))
        }
        _ => {
            let path = Path::new(spec);
            if path.is_dir() {
                Ok(corpus_from_edgelist_dir(path)?)
            } else if path.is_file() {
                Ok(corpus_from_graph6_file(path)?)
            } else {
                bail!("corpus spec {spec:?} is neither a known generator nor an existing path")
            }
        }
    }
}

fn emit(report_text: String, out: Option<&PathBuf>) -> Result<()> {
    match out {
        None => {
            std::io::stdout().write_all(report_text.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, report_text).with_context(|| format!("writing {}", path.display()))
        }
    }
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Decompose {
            input,
            format,
            common,
        } => {
            let g = read_graph(&input, format)?;
            let d = biconnected_decomposition(&g);
            emit(
                to_json_pretty(&DecompositionReport::new(&g, &d)),
                common.out.as_ref(),
            )?;
            Ok(0)
        }
        Command::Plan {
            input,
            format,
            flavor,
            max_dist,
            stats_only,
            common,
        } => {
            if matches!(flavor, Flavor::CospDist) && max_dist == 0 {
                bail!("--max-dist must be at least 1");
            }
            let g = read_graph(&input, format)?;
            let plan: InteractionPlan = match flavor {
                Flavor::Dense => dense_plan(&g),
                Flavor::Cosp => cosparsify_plan(&g, &biconnected_decomposition(&g))?,
                Flavor::CospDist => {
                    distance_bounded_plan(&g, &biconnected_decomposition(&g), max_dist)?
                }
            };
            emit(
                to_json_pretty(&PlanReport::new(&plan, !stats_only)),
                common.out.as_ref(),
            )?;
            Ok(0)
        }
        Command::Compare {
            input_a,
            input_b,
            format,
            engine,
            max_dist,
            common,
        } => {
            let engine = engine.to_engine(max_dist)?;
            let a = read_graph(&input_a, format)?;
            let b = read_graph(&input_b, format)?;
            let sig_a = engine_signature_with_layers(&a, engine, common.layers);
            let sig_b = engine_signature_with_layers(&b, engine, common.layers);
            let report = CompareReport {
                schema_version: REPORT_SCHEMA_VERSION,
                engine: engine.name(),
                result: if sig_a == sig_b {
                    "equivalent"
                } else {
                    "distinguished"
                },
                signature_a: sig_a.hex(),
                signature_b: sig_b.hex(),
                stable_iterations_a: sig_a.stable_iterations,
                stable_iterations_b: sig_b.stable_iterations,
            };
            emit(to_json_pretty(&report), common.out.as_ref())?;
            Ok(0)
        }
        Command::Certify {
            corpus,
            engine_a,
            engine_b,
            max_dist,
            timing,
            common,
        } => {
            let engine_a = engine_a.to_engine(max_dist)?;
            let engine_b = engine_b.to_engine(max_dist)?;
            let corpus = load_corpus(&corpus, common.seed)?;
            let started = Instant::now();
            let mut report =
                certify_equivalence(&corpus, engine_a, engine_b, common.jobs, common.layers);
            let elapsed = started.elapsed();
            if common.verbose || timing {
                eprintln!(
                    "certify: {} graphs, {} violations, {:?}",
                    report.graph_count,
                    report.violations.len(),
                    elapsed
                );
            }
            if timing {
                report.elapsed_ms = Some(elapsed.as_millis() as u64);
            }
            let ok = report.partitions_identical();
            emit(to_json_pretty(&report), common.out.as_ref())?;
            Ok(if ok { 0 } else { 2 })
        }
        Command::Count {
            corpus,
            pattern,
            engine,
            max_dist,
            common,
        } => {
            let pattern: PatternName = pattern.parse().map_err(|e: String| anyhow!(e))?;
            let engine = engine.map(|e| e.to_engine(max_dist)).transpose()?;
            let corpus = load_corpus(&corpus, common.seed)?;
            let report = counting_probe(
                &corpus,
                &Pattern::named(pattern),
                engine,
                common.jobs,
                common.layers,
            );
            emit(to_json_pretty(&report), common.out.as_ref())?;
            Ok(0)
        }
        Command::Profile {
            corpus,
            kernel_macs,
            k,
            width,
            kernel_layers,
            common,
        } => {
            if width < k {
                bail!("--width must be at least --k (walk features must fit)");
            }
            let corpus = load_corpus(&corpus, common.seed)?;
            let cfg = kernel_macs.then_some(KernelProbeConfig {
                k,
                width,
                layers: kernel_layers,
                seed: common.seed,
                max_graphs: 8,
            });
            let report = profile_complexity(&corpus, common.jobs, cfg);
            emit(to_json_pretty(&report), common.out.as_ref())?;
            Ok(0)
        }
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
