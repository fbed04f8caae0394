//! Trace-network bounds: exact expected crossings, level-pair conductances,
//! the degree/potential conductance bound, and Monte Carlo conductances of
//! the crossing-weighted and unit-weight path subgraphs.

use cutpath_core::analysis::{conductance_bound, ConductanceBound};
use cutpath_core::generators::build_grid_disk;
use cutpath_core::net::{contract_sets, effective_conductance, level_pair_conductance, level_sets, trace_network_exact, TraceNetwork};
use cutpath_core::seed::rng_from_seed;
use cutpath_core::walk::{path_subgraph, StopCondition, StopReason, Walker};
use cutpath_core::Network;

use super::{Check, Sink};
use crate::config::{ExperimentConfig, Family};
use crate::error::{HarnessError, Result};
use crate::output::fmt_g;
use crate::runner::{replica_seed, run_replicas, Estimate};

/// Level-pair conductances in the expected-crossing network stay below this.
pub const LEVEL_PAIR_BOUND: f64 = 4.0;
/// Walks per work unit for the edge-crossing tallies.
const CHUNK: usize = 1000;

/// A network with a walk source and an absorbing sink.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub network: Network,
    pub source: usize,
    pub sink: usize,
}

impl Instance {
    /// Vertex 0 to the sink of the radius-`r` disk.
    pub fn disk(r: u32) -> Result<Self> {
        let g = build_grid_disk(r)?;
        Ok(Instance { label: format!("disk r={r}"), network: g.network, source: g.origin, sink: g.sink })
    }

    /// End to end of the path on `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(HarnessError::Invalid(format!("path graph needs at least 2 vertices, got {n}")));
        }
        let net = Network::new(n, (0..n - 1).map(|i| (i, i + 1, 1.0)).collect::<Vec<_>>())?;
        Ok(Instance { label: format!("path n={n}"), network: net, source: 0, sink: n - 1 })
    }

    /// The layered graph with its top layer merged into the sink; the root
    /// becomes vertex 0 and the sink vertex 1.
    pub fn layered(cfg: &ExperimentConfig) -> Result<Self> {
        let g = super::e1::build_graph(cfg)?;
        let top: Vec<usize> = g.layer_range(cfg.graph.j_max).collect();
        let root = cfg.walk.start;
        g.network.check_vertex(root)?;
        if top.contains(&root) {
            return Err(HarnessError::Invalid("walk start lies in the top layer".into()));
        }
        let (net, _) = contract_sets(&g.network.clone().without_layers(), &[&[root], &top])?;
        Ok(Instance { label: format!("layered j_max={}", cfg.graph.j_max), network: net, source: 0, sink: 1 })
    }

    pub fn from_config(cfg: &ExperimentConfig) -> Result<Self> {
        match cfg.graph.family {
            Family::Disk => Self::disk(cfg.graph.r),
            Family::Path => Self::path(cfg.graph.n),
            Family::Layered => Self::layered(cfg),
            Family::Line => Err(HarnessError::Invalid("E4 runs on disk, path or layered graphs".into())),
        }
    }
}

/// Exact quantities of the expected-crossing network.
#[derive(Debug, Clone)]
pub struct ExactSide {
    pub trace: TraceNetwork,
    pub degree: usize,
    /// `(i, C_eff(G_i <-> G_{i+2}))` for every eligible level `i`.
    pub level_pairs: Vec<(u32, f64)>,
    pub bound: ConductanceBound,
    /// `C_eff` of the expected-crossing network between source and sink.
    pub c_expected: f64,
}

pub fn exact_side(inst: &Instance) -> Result<ExactSide> {
    let trace = trace_network_exact(&inst.network, inst.source, inst.sink)?;
    let degree = trace.solution.level_base();
    let levels = level_sets(&trace.solution, degree)?;
    let level_pairs = levels
        .eligible()
        .into_iter()
        .map(|i| Ok((i, level_pair_conductance(&trace, &levels, i)?)))
        .collect::<Result<Vec<_>>>()?;
    let bound = conductance_bound(degree as f64, trace.solution.s)?;
    let c_expected = effective_conductance(&trace.network, &[inst.source], &[inst.sink])?;
    Ok(ExactSide { trace, degree, level_pairs, bound, c_expected })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConductance {
    pub steps: u64,
    /// Crossing-weighted path subgraph.
    pub c_gn: f64,
    /// Unit-weight path subgraph.
    pub c_path: f64,
}

#[derive(Debug, Clone)]
pub struct EdgeTally {
    pub walks: u64,
    pub sum: Vec<u64>,
    pub sum_sq: Vec<u64>,
}

impl EdgeTally {
    pub fn estimate(&self, e: usize) -> Estimate {
        let n = self.walks as f64;
        let mean = self.sum[e] as f64 / n;
        let var = if self.walks > 1 { (self.sum_sq[e] as f64 - n * mean * mean).max(0.0) / (n - 1.0) } else { 0.0 };
        Estimate { n: self.walks as usize, mean, half_width: 3.0 * (var / n).sqrt() }
    }

    /// Mean within 3σ of `exact`, allowing solver round-off when σ = 0.
    pub fn agrees(&self, e: usize, exact: f64) -> bool {
        let est = self.estimate(e);
        (est.mean - exact).abs() <= est.half_width + 1e-9 * exact.abs().max(1.0)
    }

    /// Edges whose mean misses the exact value by more than 3σ.
    pub fn misses(&self, exact: &[f64]) -> Vec<usize> {
        (0..exact.len()).filter(|&e| !self.agrees(e, exact[e])).collect()
    }
}

#[derive(Debug, Clone)]
pub struct TraceBounds {
    pub instance: Instance,
    pub exact: ExactSide,
    pub walks: Vec<WalkConductance>,
    pub c_gn: Estimate,
    pub c_path: Estimate,
    pub edges: EdgeTally,
}

/// Walk `w` from the source to the sink; conductances only when asked.
fn one_walk(inst: &Instance, walker: &Walker, stop: &StopCondition, seed: u64, w: u64, solve: bool) -> Result<(Vec<u64>, Option<WalkConductance>)> {
    let mut rng = rng_from_seed(replica_seed(seed, "E4", w));
    let trace = walker.walk(inst.source, stop, &mut rng)?;
    if trace.stop != StopReason::HitTarget {
        return Err(HarnessError::Run(format!("walk {w} stopped by {} before reaching the sink", trace.stop.as_str())));
    }
    let cond = if solve {
        let sub = path_subgraph(&trace, &inst.network);
        let (s, t) = (sub.from_host(inst.source).expect("on path"), sub.from_host(inst.sink).expect("on path"));
        Some(WalkConductance {
            steps: trace.steps,
            c_gn: effective_conductance(&sub.weighted, &[s], &[t])?,
            c_path: effective_conductance(&sub.path, &[s], &[t])?,
        })
    } else {
        None
    };
    Ok((trace.crossings, cond))
}

pub fn compute_on(inst: Instance, cfg: &ExperimentConfig) -> Result<TraceBounds> {
    let exact = exact_side(&inst)?;
    let walker = Walker::new(&inst.network);
    let stop = StopCondition::hit(&[inst.sink], cfg.walk.budget);
    let total = cfg.replicas.max(cfg.walk.edge_walks);
    let m = inst.network.m();
    let chunks = total.div_ceil(CHUNK);
    let parts = run_replicas(chunks, |c| {
        let lo = c as usize * CHUNK;
        let hi = (lo + CHUNK).min(total);
        let mut sum = vec![0u64; m];
        let mut sum_sq = vec![0u64; m];
        let mut conds = Vec::new();
        for w in lo..hi {
            let (crossings, cond) = one_walk(&inst, &walker, &stop, cfg.seed, w as u64, w < cfg.replicas)?;
            for (e, &k) in crossings.iter().enumerate() {
                sum[e] += k;
                sum_sq[e] += k * k;
            }
            conds.extend(cond);
        }
        Ok((sum, sum_sq, conds))
    })?;
    let mut edges = EdgeTally { walks: total as u64, sum: vec![0; m], sum_sq: vec![0; m] };
    let mut walks = Vec::with_capacity(cfg.replicas);
    for (sum, sum_sq, conds) in parts {
        for e in 0..m {
            edges.sum[e] += sum[e];
            edges.sum_sq[e] += sum_sq[e];
        }
        walks.extend(conds);
    }
    let c_gn = Estimate::of(&walks.iter().map(|w| w.c_gn).collect::<Vec<_>>());
    let c_path = Estimate::of(&walks.iter().map(|w| w.c_path).collect::<Vec<_>>());
    Ok(TraceBounds { instance: inst, exact, walks, c_gn, c_path, edges })
}

pub fn compute(cfg: &ExperimentConfig) -> Result<TraceBounds> {
    compute_on(Instance::from_config(cfg)?, cfg)
}

/// One row of the bounds table.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub kind: &'static str,
    pub index: Option<u32>,
    pub value: f64,
    pub half_width: Option<f64>,
    pub bound: f64,
    pub satisfied: bool,
}

impl TraceBounds {
    pub fn bound_rows(&self) -> Vec<BoundRow> {
        let mut rows: Vec<BoundRow> = self
            .exact
            .level_pairs
            .iter()
            .map(|&(i, c)| BoundRow {
                kind: "level_pair",
                index: Some(i),
                value: c,
                half_width: None,
                bound: LEVEL_PAIR_BOUND,
                satisfied: c <= LEVEL_PAIR_BOUND,
            })
            .collect();
        let g = self.c_gn;
        rows.push(BoundRow {
            kind: "conductance",
            index: None,
            value: g.mean,
            half_width: Some(g.half_width),
            bound: self.exact.bound.bound,
            satisfied: g.upper() <= self.exact.bound.bound,
        });
        // E C_eff(G^N) <= C_eff(E G^N): an inequality between expectations
        rows.push(BoundRow {
            kind: "concavity",
            index: None,
            value: g.mean,
            half_width: Some(g.half_width),
            bound: self.exact.c_expected,
            satisfied: g.mean - g.half_width <= self.exact.c_expected,
        });
        rows.push(BoundRow {
            kind: "path_vs_weighted",
            index: None,
            value: self.c_path.mean,
            half_width: None,
            bound: g.mean,
            satisfied: self.c_path.mean <= g.mean,
        });
        rows
    }
}

pub(crate) fn write(res: &TraceBounds, sink: &mut Sink) -> Result<Vec<Check>> {
    let inst = &res.instance;
    let ex = &res.exact;
    let mut out = sink.csv(
        "network",
        &["instance", "vertices", "edges", "source", "sink", "d", "s", "c_eff", "c_eff_expected", "bound", "vacuous"],
    )?;
    out.row([
        inst.label.clone(),
        inst.network.n().to_string(),
        inst.network.m().to_string(),
        inst.source.to_string(),
        inst.sink.to_string(),
        ex.degree.to_string(),
        fmt_g(ex.trace.solution.s),
        fmt_g(ex.trace.solution.conductance),
        fmt_g(ex.c_expected),
        fmt_g(ex.bound.bound),
        ex.bound.vacuous.to_string(),
    ])?;
    sink.done(out)?;

    let rows = res.bound_rows();
    let mut out = sink.csv("bounds", &["kind", "i", "value", "half_width", "bound", "satisfied"])?;
    for r in &rows {
        out.row([
            r.kind.to_string(),
            r.index.map_or(String::new(), |i| i.to_string()),
            fmt_g(r.value),
            r.half_width.map_or(String::new(), fmt_g),
            fmt_g(r.bound),
            r.satisfied.to_string(),
        ])?;
    }
    sink.done(out)?;

    let mut out = sink.csv("replicas", &["replica", "steps", "c_gn", "c_path"])?;
    for (r, w) in res.walks.iter().enumerate() {
        out.row([r.to_string(), w.steps.to_string(), fmt_g(w.c_gn), fmt_g(w.c_path)])?;
    }
    sink.done(out)?;

    let exact = &ex.trace.crossings;
    let mut out = sink.csv("edges", &["edge", "u", "v", "exact", "mean", "half_width", "within"])?;
    for (e, edge) in inst.network.edges().iter().enumerate() {
        let est = res.edges.estimate(e);
        out.row([
            e.to_string(),
            edge.u.to_string(),
            edge.v.to_string(),
            fmt_g(exact[e]),
            fmt_g(est.mean),
            fmt_g(est.half_width),
            res.edges.agrees(e, exact[e]).to_string(),
        ])?;
    }
    sink.done(out)?;

    let mut checks: Vec<Check> = rows
        .iter()
        .map(|r| {
            let name = match r.index {
                Some(i) => format!("{} i={i}", r.kind),
                None => r.kind.to_string(),
            };
            let hw = r.half_width.map_or(String::new(), |h| format!(" ± {}", fmt_g(h)));
            Check::new(name, r.satisfied, format!("{}{hw} vs {}", fmt_g(r.value), fmt_g(r.bound)))
        })
        .collect();
    let misses = res.edges.misses(exact);
    checks.push(Check::new(
        "edge means within 3σ",
        misses.is_empty(),
        format!(
            "{} of {} edges outside over {} walks (about {} expected by chance)",
            misses.len(),
            exact.len(),
            res.edges.walks,
            fmt_g((0.0027 * exact.len() as f64).round())
        ),
    ));
    Ok(checks)
}
