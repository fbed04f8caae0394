//! Command-line interface.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cutpath_core::generators::{build_grid_disk, build_horn, build_layered_graph, HornSpec, LayeredGraphSpec};
use cutpath_core::net::{read_ugraph, solve_voltage, write_ugraph};
use cutpath_core::seed::rng_from_seed;
use cutpath_core::walk::{cut_times, cutpoints, StopCondition, WalkError, Walker};
use cutpath_core::Network;

use crate::config::{ExperimentConfig, ExperimentId};
use crate::error::{HarnessError, Result};
use crate::experiments::run_experiment;
use crate::output::{fmt_g, write_text, CsvOut};
use crate::runner::{replica_seed, run_replicas};

#[derive(Debug, Parser)]
#[command(name = "cutpath", version, about = "Random-walk paths, cutpoints and electrical networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph and write it in ugraph format, with a .meta sidecar.
    Generate(GenerateArgs),
    /// Run seeded walks on a graph and count cut-times and cutpoints.
    Walk(WalkArgs),
    /// Effective conductance and resistance between two vertices.
    Resist(ResistArgs),
    /// Exact conditioned-walk tails against their closed-form bounds.
    Bounds(BoundsArgs),
    /// Packaged experiments E1..E6.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    Layered,
    Disk,
    Path,
    Horn,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: GenFamily,
    /// Growth exponent (layered, horn).
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    /// Expander degree (layered) or lattice dimension (horn).
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    /// Last layer (layered) or axial extent (horn).
    #[arg(long, default_value_t = 40)]
    pub j_max: u32,
    /// Disk radius.
    #[arg(long, default_value_t = 10)]
    pub r: u32,
    /// Path length in vertices.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output ugraph file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    /// Input ugraph file.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    /// `vertex:V`, `layer:L` or `budget`.
    #[arg(long, default_value = "budget")]
    pub stop: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Step limit, applied under every stop rule.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    /// Output prefix; writes PREFIX.csv.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub replicas: usize,
    /// Cut-time lookahead as a fraction of each walk's length.
    #[arg(long, default_value_t = 0.0)]
    pub window: f64,
    /// Also write each vertex sequence to PREFIX_<replica>.bin (u32, little endian).
    #[arg(long)]
    pub save_traces: bool,
}

#[derive(Debug, Args)]
pub struct ResistArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub source: usize,
    #[arg(long)]
    pub sink: usize,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Excursion heights, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
    pub a: Vec<u32>,
    #[arg(long, default_value_t = 2000)]
    pub t_max: u64,
    /// Visit counts are swept up to this multiple of `a`.
    #[arg(long, default_value_t = 10)]
    pub m_factor: u64,
    #[arg(long, default_value_t = 0.0)]
    pub laziness: f64,
    /// Output directory.
    #[arg(long, default_value = "out/bounds")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Run one experiment and write its CSVs and summary.txt.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// E1..E6.
    pub id: String,
    /// Config file overriding the experiment's preset.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Master seed, overriding the config.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory, overriding the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => generate(&a),
        Command::Walk(a) => walk(&a),
        Command::Resist(a) => resist(&a),
        Command::Bounds(a) => bounds(&a),
        Command::Experiment(ExperimentCommand::Run(a)) => experiment(&a),
    }
}

fn load_graph(path: &Path) -> Result<Network> {
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(read_ugraph(BufReader::new(file))?)
}

fn save_graph(path: &Path, net: &Network) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_ugraph(net, &mut w)?;
    w.flush().map_err(|e| HarnessError::io(path, e))
}

fn generate(a: &GenerateArgs) -> Result<()> {
    let mut meta = vec![format!("family = {:?}", a.family).to_lowercase()];
    let net = match a.family {
        GenFamily::Layered => {
            let g = build_layered_graph(LayeredGraphSpec { alpha: a.alpha, d: a.d, j_max: a.j_max, seed: a.seed })?;
            meta.push(format!("alpha = {}", fmt_g(a.alpha)));
            meta.push(format!("d = {}", a.d));
            meta.push(format!("seed = {}", a.seed));
            meta.push(format!("j0 = {}", g.j0()));
            meta.push(format!("jmax = {}", a.j_max));
            g.network
        }
        GenFamily::Disk => {
            let g = build_grid_disk(a.r)?;
            meta.push(format!("r = {}", a.r));
            meta.push(format!("origin = {}", g.origin));
            meta.push(format!("sink = {}", g.sink));
            g.network
        }
        GenFamily::Path => {
            if a.n < 2 {
                return Err(HarnessError::Invalid(format!("path needs at least 2 vertices, got {}", a.n)));
            }
            meta.push(format!("n = {}", a.n));
            Network::new(a.n, (0..a.n - 1).map(|i| (i, i + 1, 1.0)).collect::<Vec<_>>())?
        }
        GenFamily::Horn => {
            let h = build_horn(HornSpec::new(a.d, a.alpha, a.j_max))?;
            meta.push(format!("alpha = {}", fmt_g(a.alpha)));
            meta.push(format!("d = {}", a.d));
            meta.push(format!("jmax = {}", a.j_max));
            meta.push(format!("origin = {}", h.origin));
            h.network
        }
    };
    meta.push(format!("vertices = {}", net.n()));
    meta.push(format!("edges = {}", net.m()));
    save_graph(&a.out, &net)?;
    let mut meta_path = a.out.clone().into_os_string();
    meta_path.push(".meta");
    write_text(Path::new(&meta_path), &(meta.join("\n") + "\n"))?;
    println!("wrote {} ({} vertices, {} edges)", a.out.display(), net.n(), net.m());
    Ok(())
}

/// Parses `vertex:V`, `layer:L` or `budget`.
pub fn parse_stop(spec: &str, budget: u64) -> Result<StopCondition> {
    let bad = || HarnessError::Invalid(format!("--stop must be vertex:V, layer:L or budget, got '{spec}'"));
    match spec.split_once(':') {
        None if spec == "budget" => Ok(StopCondition::budget(budget)),
        Some(("vertex", v)) => Ok(StopCondition::hit(&[v.parse().map_err(|_| bad())?], budget)),
        Some(("layer", l)) => Ok(StopCondition::layer(l.parse().map_err(|_| bad())?, budget)),
        _ => Err(bad()),
    }
}

fn walk(a: &WalkArgs) -> Result<()> {
    if !(0.0..1.0).contains(&a.window) {
        return Err(HarnessError::Invalid(format!("--window must lie in [0, 1), got {}", a.window)));
    }
    if a.replicas == 0 {
        return Err(HarnessError::Invalid("--replicas must be at least 1".into()));
    }
    let stop = parse_stop(&a.stop, a.budget)?;
    let net = load_graph(&a.graph)?;
    net.check_vertex(a.start)?;
    for &t in &stop.targets {
        net.check_vertex(t)?;
    }
    if stop.min_layer.is_some() && net.layers().is_none() {
        return Err(WalkError::NoLayers.into());
    }
    let walker = Walker::new(&net);
    let rows = run_replicas(a.replicas, |r| {
        let mut rng = rng_from_seed(replica_seed(a.seed, "walk", r));
        let trace = walker.walk(a.start, &stop, &mut rng)?;
        let vertices = trace.vertices.ok_or(WalkError::NoVertexSequence)?;
        let (n_cut, n_points) = if trace.steps == 0 {
            (0, 0)
        } else {
            let window = (a.window * trace.steps as f64).floor() as u64;
            let cuts = cut_times(&vertices, window)?.len();
            let points = if trace.end == trace.start { 0 } else { cutpoints(&vertices)?.len() };
            (cuts, points)
        };
        Ok((trace.steps, trace.stop, n_cut, n_points, if a.save_traces { Some(vertices) } else { None }))
    })?;

    let echo = format!(
        "graph = {}\nstart = {}\nstop = {}\nseed = {}\nbudget = {}\nreplicas = {}\nwindow = {}",
        a.graph.display(),
        a.start,
        a.stop,
        a.seed,
        a.budget,
        a.replicas,
        fmt_g(a.window)
    );
    let csv_path = with_suffix(&a.out, ".csv");
    let mut out = CsvOut::create(&csv_path, &echo, &["replica", "steps", "stop_reason", "n_cut_times", "n_cutpoints"])?;
    for (r, (steps, reason, n_cut, n_points, vertices)) in rows.iter().enumerate() {
        out.row([r.to_string(), steps.to_string(), reason.as_str().to_string(), n_cut.to_string(), n_points.to_string()])?;
        if let Some(v) = vertices {
            let path = with_suffix(&a.out, &format!("_{r}.bin"));
            let bytes: Vec<u8> = v.iter().flat_map(|x| x.to_le_bytes()).collect();
            std::fs::write(&path, bytes).map_err(|e| HarnessError::io(&path, e))?;
        }
    }
    out.finish()?;
    println!("wrote {}", csv_path.display());
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn resist(a: &ResistArgs) -> Result<()> {
    let net = load_graph(&a.graph)?;
    let sol = solve_voltage(&net, a.source, a.sink)?;
    println!("C_eff = {}", fmt_g(sol.conductance));
    println!("R_eff = {}", fmt_g(sol.resistance()));
    println!("s = {}", fmt_g(sol.s));
    Ok(())
}

fn bounds(a: &BoundsArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::preset(ExperimentId::E6);
    cfg.oracle.a = a.a.clone();
    cfg.oracle.t_max = a.t_max;
    cfg.oracle.m_factor = a.m_factor;
    cfg.oracle.laziness = a.laziness;
    cfg.out = a.out.clone();
    let report = run_experiment(&cfg, &a.out)?;
    for c in &report.checks {
        println!("{} {}: {}", if c.satisfied { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("wrote {}", report.summary.display());
    Ok(())
}

fn experiment(a: &RunArgs) -> Result<()> {
    let id: ExperimentId = a.id.parse()?;
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::from_file(id, path)?,
        None => ExperimentConfig::preset(id),
    };
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &a.out {
        cfg.out = out.clone();
    }
    for flag in cfg.flags() {
        eprintln!("note: {flag}");
    }
    let report = run_experiment(&cfg, &cfg.out)?;
    for c in &report.checks {
        println!("{} {}: {}", if c.satisfied { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("wrote {} files to {} in {:.3} s", report.files.len(), cfg.out.display(), report.runtime.as_secs_f64());
    Ok(())
}
