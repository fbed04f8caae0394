//! Cutpoint census: walks on the layered graph from a root vertex until the
//! top layer, with cutpoints tallied per dyadic layer block.

use cutpath_core::generators::{build_layered_graph, LayeredGraph, LayeredGraphSpec};
use cutpath_core::seed::rng_from_seed;
use cutpath_core::walk::{cut_record, StopCondition, StopReason, WalkError, Walker};

use super::{dyadic_block, non_increasing, Check, Sink};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::fmt_g;
use crate::runner::{replica_seed, run_replicas, Estimate};

/// Blocks from this index on enter the monotonicity check.
pub const FIRST_CHECKED_BLOCK: u32 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicaCensus {
    pub steps: u64,
    pub stop: StopReason,
    pub window: u64,
    pub n_cut_times: usize,
    pub n_cutpoints: usize,
    /// Cutpoints whose layer lies in block `k`, for `k = 0..blocks.len()`.
    pub per_block: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockSummary {
    pub k: u32,
    pub lo: u32,
    pub hi: u32,
    /// The block lies entirely below the stopping layer.
    pub complete: bool,
    pub estimate: Estimate,
}

#[derive(Debug, Clone)]
pub struct CutpointCensus {
    pub j_max: u32,
    pub vertices: usize,
    pub replicas: Vec<ReplicaCensus>,
    pub blocks: Vec<BlockSummary>,
}

impl CutpointCensus {
    /// Means of the complete blocks from [`FIRST_CHECKED_BLOCK`] on.
    pub fn checked_means(&self) -> Vec<(u32, f64)> {
        self.blocks
            .iter()
            .filter(|b| b.complete && b.k >= FIRST_CHECKED_BLOCK)
            .map(|b| (b.k, b.estimate.mean))
            .collect()
    }
}

pub fn build_graph(cfg: &ExperimentConfig) -> Result<LayeredGraph> {
    let g = &cfg.graph;
    Ok(build_layered_graph(LayeredGraphSpec { alpha: g.alpha, d: g.d, j_max: g.j_max, seed: cfg.graph_seed() })?)
}

pub fn compute(cfg: &ExperimentConfig) -> Result<CutpointCensus> {
    let graph = build_graph(cfg)?;
    let j_max = cfg.graph.j_max;
    let n_blocks = dyadic_block(j_max).map_or(0, |k| k as usize + 1);
    let walker = Walker::new(&graph.network);
    let stop = StopCondition::layer(j_max, cfg.walk.budget);
    let start = cfg.walk.start;
    graph.network.check_vertex(start)?;

    let replicas = run_replicas(cfg.replicas, |r| {
        let mut rng = rng_from_seed(replica_seed(cfg.seed, "E1", r));
        let trace = walker.walk(start, &stop, &mut rng)?;
        let vertices = trace.vertices.as_ref().ok_or(WalkError::NoVertexSequence)?;
        let window = (cfg.walk.window * trace.steps as f64).floor() as u64;
        let rec = cut_record(vertices, window)?;
        let mut per_block = vec![0u64; n_blocks];
        for &x in &rec.cutpoints {
            if let Some(k) = dyadic_block(graph.layer_of(x as usize)) {
                per_block[k as usize] += 1;
            }
        }
        Ok(ReplicaCensus {
            steps: trace.steps,
            stop: trace.stop,
            window,
            n_cut_times: rec.cut_times.len(),
            n_cutpoints: rec.cutpoints.len(),
            per_block,
        })
    })?;

    let blocks = (0..n_blocks)
        .map(|k| {
            let counts: Vec<f64> = replicas.iter().map(|r| r.per_block[k] as f64).collect();
            let lo = 1u32 << k;
            BlockSummary {
                k: k as u32,
                lo,
                hi: (2 * lo).min(j_max),
                complete: 2 * lo < j_max,
                estimate: Estimate::of(&counts),
            }
        })
        .collect();
    Ok(CutpointCensus { j_max, vertices: graph.network.n(), replicas, blocks })
}

pub(crate) fn write(res: &CutpointCensus, sink: &mut Sink) -> Result<Vec<Check>> {
    let block_cols: Vec<String> = res.blocks.iter().map(|b| format!("cutpoints_k{}", b.k)).collect();
    let mut header = vec!["replica", "steps", "stop_reason", "window", "n_cut_times", "n_cutpoints"];
    header.extend(block_cols.iter().map(String::as_str));
    let mut out = sink.csv("replicas", &header)?;
    for (i, r) in res.replicas.iter().enumerate() {
        let mut row = vec![
            i.to_string(),
            r.steps.to_string(),
            r.stop.as_str().to_string(),
            r.window.to_string(),
            r.n_cut_times.to_string(),
            r.n_cutpoints.to_string(),
        ];
        row.extend(r.per_block.iter().map(|c| c.to_string()));
        out.row(&row)?;
    }
    sink.done(out)?;

    let mut out = sink.csv("blocks", &["k", "layer_lo", "layer_hi", "complete", "mean_cutpoints", "half_width"])?;
    for b in &res.blocks {
        out.row([
            b.k.to_string(),
            b.lo.to_string(),
            b.hi.to_string(),
            b.complete.to_string(),
            fmt_g(b.estimate.mean),
            fmt_g(b.estimate.half_width),
        ])?;
    }
    sink.done(out)?;

    let stopped = res.replicas.iter().filter(|r| r.stop == StopReason::HitLayer).count();
    let mut checks =
        vec![Check::new("walks reach the top layer", stopped == res.replicas.len(), format!("{stopped}/{}", res.replicas.len()))];
    let means = res.checked_means();
    let detail = means.iter().map(|(k, m)| format!("k={k}: {}", fmt_g(*m))).collect::<Vec<_>>().join(", ");
    let values: Vec<f64> = means.iter().map(|m| m.1).collect();
    checks.push(if values.len() < 2 {
        Check::new("cutpoints per block non-increasing", false, format!("fewer than two complete blocks from k={FIRST_CHECKED_BLOCK} ({detail})"))
    } else {
        Check::new("cutpoints per block non-increasing", non_increasing(&values), detail)
    });
    Ok(checks)
}
