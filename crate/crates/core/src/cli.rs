//! The `weakties` command line: `build`, `detect`, `ties`, `stats`, `synth`
//! and `sample`.
//!
//! Every command writes its outputs plus a `manifest.json` into
//! `--output-dir`. All randomness derives from the single `--seed` flag.
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
//! violation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::community::{louvain, resolution_report, LouvainConfig, Partition};
use crate::error::{Error, Result};
use crate::graph::{build_graph, BuiltGraph};
use crate::ingest::{
    extract_visited_core, merge_samples, parse_edge_list, parse_id_list, CrawlSample,
};
use crate::io;
use crate::stats;
use crate::synth::{self, SampleTrace, DEFAULT_MHRW_SEEDS};
use crate::ties::{self, classify_ties};

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "weakties",
    version,
    about = "Community detection and weak-tie analysis"
)]
struct Cli {
    /// Master seed; every stage derives its own stream from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
enum Command {
    /// Merge crawl samples and keep the subgraph induced by visited users.
    Build(BuildArgs),
    /// Louvain community detection.
    Detect(DetectArgs),
    /// Strong/weak tie labeling and per-node counts.
    Ties(TiesArgs),
    /// CCDF, community size, density map, link fraction and fit CSVs.
    Stats(StatsArgs),
    /// Generate a synthetic graph.
    #[command(subcommand)]
    Synth(SynthCommand),
    /// Sample vertices of a graph and report degree bias.
    Sample(SampleArgs),
}

#[derive(Debug, Args, Serialize)]
struct BuildArgs {
    /// Edge-list files, one per crawl sample.
    #[arg(required = true)]
    edges: Vec<PathBuf>,
    /// Visited-id files, one per edge file in the same order. Without them
    /// the visited set is every id that appears first on some line.
    #[arg(long)]
    visited: Vec<PathBuf>,
    #[arg(long, default_value = "core.txt")]
    out: String,
}

#[derive(Debug, Args, Serialize)]
struct DetectArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 1e-7)]
    min_gain: f64,
    #[arg(long, default_value_t = 32)]
    max_levels: usize,
    /// Independent Louvain runs; the highest-modularity result is kept.
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    /// Ground-truth partition to score the result against (NMI).
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct TiesArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    partition: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Series {
    Degree,
    CommunitySize,
    Strong,
    Weak,
}

#[derive(Debug, Args, Serialize)]
struct StatsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    partition: PathBuf,
    #[arg(long)]
    labeling: PathBuf,
    /// Quantity whose CCDF goes to ccdf.csv and is fitted in fit.csv.
    #[arg(long, value_enum, default_value = "degree")]
    series: Series,
    /// Sample the CCDF at this many logarithmic bins instead of every value.
    #[arg(long)]
    log_bins: Option<usize>,
    #[arg(long)]
    skip_link_fraction: bool,
}

#[derive(Debug, Subcommand, Serialize)]
enum SynthCommand {
    /// G(n, p) random graph.
    Bernoulli {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Planted partition with equal blocks; also writes truth.txt.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        blocks: usize,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_out: f64,
    },
    /// Preferential attachment (heavy-tailed degrees).
    Pa {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Args, Serialize)]
struct SampleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(subcommand)]
    method: SampleCommand,
}

#[derive(Debug, Subcommand, Serialize)]
enum SampleCommand {
    /// Uniform rejection sampling over a sparse id space.
    Uniform {
        /// Size of the id space; ids at or above the vertex count are holes.
        /// Defaults to the vertex count (no holes).
        #[arg(long)]
        id_space: Option<u64>,
        #[arg(long)]
        count: usize,
    },
    /// Metropolis-Hastings random walks.
    Mhrw(WalkArgs),
    /// Uncorrected random walks, for comparison.
    Rw(WalkArgs),
}

#[derive(Debug, Args, Serialize)]
struct WalkArgs {
    /// Steps per walker.
    #[arg(long)]
    steps: usize,
    /// Number of walkers started at random vertices.
    #[arg(long, default_value_t = DEFAULT_MHRW_SEEDS)]
    walkers: usize,
    /// Explicit start vertices (graph ids); overrides --walkers.
    #[arg(long, num_args = 1..)]
    start: Vec<u64>,
}

/// Derives an independent seed for one pipeline stage.
pub fn stage_seed(master: u64, stage: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update(stage.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

#[derive(Debug, Serialize)]
struct FileDigest {
    path: String,
    sha256: String,
    bytes: usize,
}

#[derive(Debug, Serialize)]
struct StageTiming {
    stage: String,
    millis: f64,
}

/// Record of one invocation, written as `manifest.json`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    command: String,
    parameters: serde_json::Value,
    inputs: Vec<FileDigest>,
    seeds: BTreeMap<String, u64>,
    timings: Vec<StageTiming>,
    outputs: Vec<FileDigest>,
}

struct Run {
    master_seed: u64,
    out_dir: PathBuf,
    manifest: RunManifest,
}

impl Run {
    fn seed(&mut self, stage: &str) -> u64 {
        let s = stage_seed(self.master_seed, stage);
        self.manifest.seeds.insert(stage.to_string(), s);
        s
    }

    fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        self.manifest.timings.push(StageTiming {
            stage: name.to_string(),
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
        Ok(out)
    }

    fn input(&mut self, path: &Path) -> Result<()> {
        let bytes = fs::read(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        self.manifest.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
            bytes: bytes.len(),
        });
        Ok(())
    }

    fn write(&mut self, name: &str, f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
        let mut buf = Vec::new();
        f(&mut buf)?;
        let path = self.out_dir.join(name);
        fs::write(&path, &buf)?;
        self.manifest.outputs.push(FileDigest {
            path: name.to_string(),
            sha256: hex::encode(Sha256::digest(&buf)),
            bytes: buf.len(),
        });
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        self.write(name, |buf| {
            serde_json::to_writer_pretty(&mut *buf, value).map_err(std::io::Error::from)?;
            buf.push(b'\n');
            Ok(())
        })
    }

    fn finish(self) -> Result<()> {
        let file = fs::File::create(self.out_dir.join("manifest.json"))?;
        let mut w = BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, &self.manifest).map_err(std::io::Error::from)?;
        writeln!(w)?;
        Ok(())
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) => 1,
        Error::Invariant(_) => 3,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::invalid("--threads must be positive"));
        }
        // fails only if a pool already exists, e.g. when called twice in-process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    fs::create_dir_all(&cli.output_dir)?;
    let command = match &cli.command {
        Command::Build(_) => "build",
        Command::Detect(_) => "detect",
        Command::Ties(_) => "ties",
        Command::Stats(_) => "stats",
        Command::Synth(_) => "synth",
        Command::Sample(_) => "sample",
    };
    let mut run = Run {
        master_seed: cli.seed,
        out_dir: cli.output_dir.clone(),
        manifest: RunManifest {
            command: command.to_string(),
            parameters: serde_json::to_value(&cli).map_err(std::io::Error::from)?,
            inputs: Vec::new(),
            seeds: BTreeMap::new(),
            timings: Vec::new(),
            outputs: Vec::new(),
        },
    };
    match &cli.command {
        Command::Build(a) => cmd_build(&mut run, a)?,
        Command::Detect(a) => cmd_detect(&mut run, a)?,
        Command::Ties(a) => cmd_ties(&mut run, a)?,
        Command::Stats(a) => cmd_stats(&mut run, a)?,
        Command::Synth(a) => cmd_synth(&mut run, a)?,
        Command::Sample(a) => cmd_sample(&mut run, a)?,
    }
    run.finish()
}

fn load_graph(run: &mut Run, path: &Path) -> Result<BuiltGraph> {
    run.input(path)?;
    let g = run.stage("load graph", || io::read_graph(path))?;
    g.graph.check_invariants()?;
    Ok(g)
}

fn load_partition(run: &mut Run, path: &Path, g: &BuiltGraph) -> Result<Partition> {
    run.input(path)?;
    run.stage("load partition", || io::read_partition(io::open(path)?, g))
}

#[derive(Serialize)]
struct SampleSummary {
    file: String,
    raw_pairs: usize,
    visited: usize,
    visited_without_edges: usize,
    visited_inferred: bool,
}

#[derive(Serialize)]
struct BuildReport {
    samples: Vec<SampleSummary>,
    merges: Vec<crate::ingest::MergeReport>,
    core: crate::ingest::CoreReport,
    mean_degree: f64,
    edge_count_convention: &'static str,
}

fn cmd_build(run: &mut Run, a: &BuildArgs) -> Result<()> {
    if !a.visited.is_empty() && a.visited.len() != a.edges.len() {
        return Err(Error::invalid(format!(
            "{} visited files for {} edge files",
            a.visited.len(),
            a.edges.len()
        )));
    }
    for p in a.edges.iter().chain(&a.visited) {
        run.input(p)?;
    }
    type Parsed = (Vec<(u64, u64)>, Option<Vec<u64>>);
    let parsed: Vec<Parsed> = run.stage("parse", || {
        a.edges
            .par_iter()
            .enumerate()
            .map(|(i, path)| {
                let edges = parse_edge_list(io::open(path)?).map_err(|e| annotate(e, path))?;
                let visited = match a.visited.get(i) {
                    Some(vp) => Some(parse_id_list(io::open(vp)?).map_err(|e| annotate(e, vp))?),
                    None => None,
                };
                Ok((edges, visited))
            })
            .collect()
    })?;

    let mut summaries = Vec::new();
    let mut samples = Vec::new();
    for (path, (edges, visited)) in a.edges.iter().zip(parsed) {
        let raw_pairs = edges.len();
        let (sample, dropped, inferred) = match visited {
            Some(ids) => {
                let (s, dropped) = CrawlSample::new(edges, ids);
                (s, dropped, false)
            }
            None => (CrawlSample::from_ego_edges(edges), 0, true),
        };
        summaries.push(SampleSummary {
            file: path.display().to_string(),
            raw_pairs,
            visited: sample.visited().len(),
            visited_without_edges: dropped,
            visited_inferred: inferred,
        });
        samples.push(sample);
    }

    let (merged, merges) = run.stage("merge", || {
        let mut it = samples.into_iter();
        let mut merged = it.next().expect("at least one edge file");
        let mut merges = Vec::new();
        for s in it {
            let (m, report) = merge_samples(&merged, &s);
            merges.push(report);
            merged = m;
        }
        Ok((merged, merges))
    })?;
    let (core, report) = run.stage("extract core", || Ok(extract_visited_core(&merged)))?;
    core.graph.check_invariants()?;

    run.write(&a.out, |w| io::write_graph(w, &core))?;
    let summary = BuildReport {
        samples: summaries,
        merges,
        core: report,
        mean_degree: core.graph.mean_degree(),
        edge_count_convention: "each undirected edge counted once",
    };
    for m in &summary.merges {
        println!("merge: {} visited, overlap {}", m.visited, m.overlap);
    }
    println!(
        "core: {} nodes, {} edges (mean degree {:.2}); dropped {} frontier edges, {} duplicates, {} self-loops",
        report.kept_nodes,
        report.kept_edges,
        summary.mean_degree,
        report.frontier_edges_dropped,
        report.duplicates_dropped,
        report.self_loops_dropped
    );
    run.write_json("build_report.json", &summary)
}

fn annotate(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

#[derive(Serialize)]
struct LevelSummary {
    level: usize,
    communities: usize,
    modularity: f64,
}

#[derive(Serialize)]
struct DetectReport {
    nodes: usize,
    edges: usize,
    config: LouvainConfig,
    levels: Vec<LevelSummary>,
    community_count: usize,
    max_community_size: usize,
    mean_community_size: f64,
    resolution: crate::community::ResolutionReport,
    nmi_vs_truth: Option<f64>,
}

fn cmd_detect(run: &mut Run, a: &DetectArgs) -> Result<()> {
    let g = load_graph(run, &a.graph)?;
    let cfg = LouvainConfig {
        min_gain: a.min_gain,
        max_levels: a.max_levels,
        vertex_order_seed: run.seed("louvain"),
        restarts: a.restarts,
    };
    let dendrogram = run.stage("louvain", || louvain(&g.graph, &cfg))?;
    for w in dendrogram.levels().windows(2) {
        if !w[0].partition.refines(&w[1].partition) {
            return Err(Error::Invariant("dendrogram levels do not nest".into()));
        }
    }

    let mut manifest = String::from("level,communities,modularity,file\n");
    let mut levels = Vec::new();
    for (k, level) in dendrogram.levels().iter().enumerate() {
        let file = format!("level_{k}.txt");
        run.write(&file, |w| io::write_partition(w, &g, &level.partition))?;
        manifest.push_str(&format!(
            "{k},{},{},{file}\n",
            level.partition.community_count(),
            io::format_real(level.modularity)
        ));
        println!(
            "level {k}: {} communities, Q = {:.6}",
            level.partition.community_count(),
            level.modularity
        );
        levels.push(LevelSummary {
            level: k,
            communities: level.partition.community_count(),
            modularity: level.modularity,
        });
    }
    run.write("dendrogram.csv", |w| {
        w.extend_from_slice(manifest.as_bytes());
        Ok(())
    })?;
    let top = &dendrogram.top().partition;
    run.write("partition.txt", |w| io::write_partition(w, &g, top))?;

    let resolution = resolution_report(&g.graph, top)?;
    println!(
        "resolution limit sqrt(E/2) = {:.1}; {} of {} communities ({:.1}%) are smaller",
        resolution.threshold,
        resolution.below_threshold,
        resolution.community_count,
        100.0 * resolution.fraction_below
    );
    let sizes = top.sizes();
    let nmi_vs_truth = match &a.truth {
        Some(path) => {
            run.input(path)?;
            let (truth, skipped) = io::read_ground_truth(io::open(path)?, &g)?;
            if skipped > 0 {
                log::info!("{skipped} ground-truth vertices are not in the graph");
            }
            let score = stats::nmi(top, &truth)?;
            println!("NMI vs truth: {score:.4}");
            Some(score)
        }
        None => None,
    };
    let report = DetectReport {
        nodes: g.graph.node_count(),
        edges: g.graph.edge_count(),
        config: cfg,
        levels,
        community_count: sizes.len(),
        max_community_size: sizes.iter().copied().max().unwrap_or(0),
        mean_community_size: g.graph.node_count() as f64 / sizes.len().max(1) as f64,
        resolution,
        nmi_vs_truth,
    };
    println!(
        "communities: {}, largest {}, mean size {:.2}",
        report.community_count, report.max_community_size, report.mean_community_size
    );
    run.write_json("detect_report.json", &report)
}

#[derive(Serialize)]
struct TiesSummary {
    edges: usize,
    strong: usize,
    weak: usize,
    ratio: ties::TieRatio,
    tipping_point: Option<usize>,
    tipping_point_definition: &'static str,
}

fn cmd_ties(run: &mut Run, a: &TiesArgs) -> Result<()> {
    let g = load_graph(run, &a.graph)?;
    let p = load_partition(run, &a.partition, &g)?;
    let t = run.stage("classify", || classify_ties(&g.graph, &p))?;
    let counts = ties::tie_counts_per_node(&g.graph, &t)?;
    let ratio = ties::tie_ratio(&t)?;
    let tipping = ties::tipping_point(&counts);

    run.write("labeling.txt", |w| io::write_labeling(w, &g, &t))?;
    run.write("node_ties.csv", |w| io::write_node_ties(w, &g, &counts))?;
    let bins = ties::degree_binned_means(&counts);
    run.write("degree_ties.csv", |w| io::write_degree_bins(w, &bins))?;

    println!(
        "{} strong, {} weak; weak fraction {:.4}, strong fraction {:.4}",
        t.strong_count(),
        t.weak_count(),
        ratio.weak_fraction,
        ratio.strong_fraction
    );
    match tipping {
        Some(k) => println!("tipping point: k = {k}"),
        None => println!("tipping point: none"),
    }
    run.write_json(
        "ties_summary.json",
        &TiesSummary {
            edges: t.len(),
            strong: t.strong_count(),
            weak: t.weak_count(),
            ratio,
            tipping_point: tipping,
            tipping_point_definition: ties::TIPPING_POINT_DEFINITION,
        },
    )
}

#[derive(Serialize)]
struct StatsSummary {
    series: Series,
    series_mean: f64,
    fit: Option<stats::PowerFit>,
    fit_points: usize,
    weak_ties: usize,
    link_fraction_definition: Option<&'static str>,
}

fn cmd_stats(run: &mut Run, a: &StatsArgs) -> Result<()> {
    let g = load_graph(run, &a.graph)?;
    let p = load_partition(run, &a.partition, &g)?;
    run.input(&a.labeling)?;
    let t = run.stage("load labeling", || {
        io::read_labeling(io::open(&a.labeling)?, &g)
    })?;

    let samples: Vec<usize> = match a.series {
        Series::Degree => g.graph.degrees().collect(),
        Series::CommunitySize => p.sizes(),
        Series::Strong | Series::Weak => {
            let counts = ties::tie_counts_per_node(&g.graph, &t)?;
            counts
                .iter()
                .map(|c| match a.series {
                    Series::Strong => c.strong,
                    _ => c.weak,
                })
                .collect()
        }
    };
    let series_mean = samples.iter().sum::<usize>() as f64 / samples.len().max(1) as f64;
    let raw = stats::ccdf_of_counts(samples)?;
    let shown = match a.log_bins {
        Some(bins) => raw.log_binned(bins),
        None => raw.clone(),
    };
    run.write("ccdf.csv", |w| io::write_ccdf(w, &shown))?;

    let fit_points: Vec<(f64, f64)> = raw
        .points()
        .iter()
        .copied()
        .filter(|&(x, p)| x > 0.0 && p > 0.0)
        .collect();
    let fit = match stats::loglog_slope(&fit_points) {
        Ok(fit) => {
            run.write("fit.csv", |w| io::write_fit(w, &fit))?;
            println!("log-log CCDF fit: slope {:.4}, r2 {:.4}", fit.slope, fit.r2);
            Some(fit)
        }
        Err(e) => {
            log::warn!("no log-log fit: {e}");
            None
        }
    };

    let sizes = stats::size_histogram(&p.sizes());
    run.write("sizes.csv", |w| io::write_sizes(w, &sizes))?;
    let density = run.stage("density map", || stats::density_map(&g.graph, &p, &t))?;
    run.write("density.csv", |w| io::write_density(w, &density))?;

    let link_definition = if a.skip_link_fraction {
        None
    } else {
        let lf = run.stage("link fraction", || stats::link_fraction(&g.graph, &p, &t))?;
        run.write("linkfraction.csv", |w| io::write_link_fraction(w, &lf))?;
        run.write("linkfraction_communities.csv", |w| {
            io::write_link_fraction_communities(w, &lf)
        })?;
        Some(stats::LINK_FRACTION_DEFINITION)
    };
    println!(
        "{} communities, {} weak ties, density map mass {}",
        p.community_count(),
        t.weak_count(),
        density.total()
    );
    run.write_json(
        "stats_summary.json",
        &StatsSummary {
            series: a.series,
            series_mean,
            fit,
            fit_points: fit_points.len(),
            weak_ties: t.weak_count(),
            link_fraction_definition: link_definition,
        },
    )
}

#[derive(Serialize)]
struct SynthReport {
    generated_nodes: usize,
    isolated_dropped: usize,
    nodes: usize,
    edges: usize,
    mean_degree: f64,
}

fn cmd_synth(run: &mut Run, a: &SynthCommand) -> Result<()> {
    let seed = run.seed("synth");
    let (graph, truth) = run.stage("generate", || match *a {
        SynthCommand::Bernoulli { n, p } => Ok((synth::bernoulli_graph(n, p, seed)?, None)),
        SynthCommand::Planted {
            n,
            blocks,
            p_in,
            p_out,
        } => {
            let (g, truth) = synth::planted_partition(n, blocks, p_in, p_out, seed)?;
            Ok((g, Some(truth)))
        }
        SynthCommand::Pa { n, m } => Ok((synth::preferential_attachment(n, m, seed)?, None)),
    })?;
    // the edge-list format cannot hold isolated vertices
    let edges: Vec<(u64, u64)> = graph.edges().map(|(u, v)| (u as u64, v as u64)).collect();
    let built = build_graph(&edges);
    run.write("graph.txt", |w| io::write_graph(w, &built))?;
    if let Some(truth) = truth {
        let kept: Vec<usize> = built
            .labels()
            .iter()
            .map(|&l| truth.community_of(l as usize))
            .collect();
        run.write("truth.txt", |w| {
            io::write_partition(w, &built, &Partition::from_labels(&kept))
        })?;
    }
    let report = SynthReport {
        generated_nodes: graph.node_count(),
        isolated_dropped: graph.node_count() - built.graph.node_count(),
        nodes: built.graph.node_count(),
        edges: built.graph.edge_count(),
        mean_degree: built.graph.mean_degree(),
    };
    println!(
        "generated {} nodes, {} edges (mean degree {:.2}); {} isolated vertices not written",
        report.generated_nodes, report.edges, report.mean_degree, report.isolated_dropped
    );
    run.write_json("synth_report.json", &report)
}

#[derive(Serialize)]
struct SampleReport {
    method: synth::SampleMethod,
    draws: usize,
    distinct_visited: usize,
    acceptance_rate: f64,
    bias: synth::BiasReport,
}

fn cmd_sample(run: &mut Run, a: &SampleArgs) -> Result<()> {
    let g = load_graph(run, &a.graph)?;
    let trace: SampleTrace = match &a.method {
        SampleCommand::Uniform { id_space, count } => {
            let seed = run.seed("uniform");
            let space = id_space.unwrap_or(g.graph.node_count() as u64);
            run.stage("sample", || {
                synth::uniform_sample(&g.graph, space, *count, seed)
            })?
        }
        SampleCommand::Mhrw(w) | SampleCommand::Rw(w) => {
            let starts = if w.start.is_empty() {
                let s = run.seed("walk-seeds");
                synth::choose_walk_seeds(&g.graph, w.walkers, s)?
            } else {
                w.start
                    .iter()
                    .map(|&l| {
                        g.index_of(l)
                            .ok_or_else(|| Error::invalid(format!("start vertex {l} not in graph")))
                    })
                    .collect::<Result<_>>()?
            };
            let seed = run.seed("walk");
            let mhrw = matches!(a.method, SampleCommand::Mhrw(_));
            run.stage("sample", || {
                if mhrw {
                    synth::mhrw_sample(&g.graph, &starts, w.steps, seed)
                } else {
                    synth::random_walk_sample(&g.graph, &starts, w.steps, seed)
                }
            })?
        }
    };
    let bias = synth::bias_report(&g.graph, &trace)?;
    let distinct = trace.distinct_visited();

    run.write("trace.csv", |w| io::write_trace(w, &g, &trace))?;
    run.write("visited.txt", |w| {
        io::write_ids(w, distinct.iter().map(|&v| g.label(v)))
    })?;
    let crawl = synth::ego_edges(&g.graph, &distinct);
    run.write("crawl.txt", |w| {
        for (u, v) in crawl {
            writeln!(w, "{} {}", g.label(u), g.label(v))?;
        }
        Ok(())
    })?;
    println!(
        "{} samples ({} distinct); mean degree {:.3} vs population {:.3}, relative bias {:+.2}%",
        bias.samples,
        distinct.len(),
        bias.sample_mean_degree,
        bias.population_mean_degree,
        100.0 * bias.relative_bias
    );
    run.write_json(
        "bias.json",
        &SampleReport {
            method: trace.method,
            draws: trace.steps.len(),
            distinct_visited: distinct.len(),
            acceptance_rate: trace.acceptance_rate(),
            bias,
        },
    )
}
