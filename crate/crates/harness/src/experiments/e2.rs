//! Linking census on the layered line network: probability that a centre is
//! not linked, and the number of such centres per dyadic block.

use cutpath_core::generators::LineNetwork;
use cutpath_core::walk::{CensusParams, LinkStats};

use super::{non_increasing, Check, Sink};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::fmt_g;
use crate::runner::{run_replicas, Estimate};

#[derive(Debug, Clone)]
pub struct LinkingCensus {
    pub stats: LinkStats,
    /// Mean of `A_k` per block.
    pub a_mean: Vec<Estimate>,
    /// `P(A_k > 0)` with a binomial 3σ half-width.
    pub positive: Vec<Estimate>,
}

pub fn line(cfg: &ExperimentConfig) -> Result<LineNetwork> {
    Ok(LineNetwork::layered_schedule(cfg.graph.alpha, cfg.graph.d, cfg.graph.len)?)
}

pub fn compute(cfg: &ExperimentConfig) -> Result<LinkingCensus> {
    let line = line(cfg)?;
    let w = &cfg.walk;
    let params =
        CensusParams { beta: w.beta, m: w.m, j_lo: w.j_lo, j_hi: w.j_hi, start: w.start, budget: w.budget, seed: cfg.seed };
    let links = run_replicas(cfg.replicas, |r| Ok(params.replica_links(&line, r)?))?;
    let stats = LinkStats::from_links(w.j_lo, w.j_hi, w.m, &links)?;
    let a_mean = (0..stats.blocks.len())
        .map(|b| Estimate::of(&stats.a.iter().map(|row| row[b] as f64).collect::<Vec<_>>()))
        .collect();
    let positive = (0..stats.blocks.len())
        .map(|b| Estimate::of(&stats.a.iter().map(|row| (row[b] > 0) as u8 as f64).collect::<Vec<_>>()))
        .collect();
    Ok(LinkingCensus { stats, a_mean, positive })
}

pub(crate) fn write(res: &LinkingCensus, sink: &mut Sink) -> Result<Vec<Check>> {
    let s = &res.stats;
    let mut out = sink.csv("pj", &["j", "p_not_linked"])?;
    for (i, p) in s.p.iter().enumerate() {
        out.row([(s.j_lo + i as u32).to_string(), fmt_g(*p)])?;
    }
    sink.done(out)?;

    let mut out = sink.csv("blocks", &["k", "j_lo", "j_hi", "mean_a", "half_width_a", "p_a_positive", "half_width_p"])?;
    for (b, &k) in s.blocks.iter().enumerate() {
        out.row([
            k.to_string(),
            ((1u32 << k) + 1).to_string(),
            (1u32 << (k + 1)).to_string(),
            fmt_g(res.a_mean[b].mean),
            fmt_g(res.a_mean[b].half_width),
            fmt_g(s.p_block_positive[b]),
            fmt_g(res.positive[b].half_width),
        ])?;
    }
    sink.done(out)?;

    let mut out = sink.csv("replicas", &["replica", "k", "a"])?;
    for (r, row) in s.a.iter().enumerate() {
        for (b, a) in row.iter().enumerate() {
            out.row([r.to_string(), s.blocks[b].to_string(), a.to_string()])?;
        }
    }
    sink.done(out)?;

    let detail = s
        .blocks
        .iter()
        .zip(&s.p_block_positive)
        .map(|(k, p)| format!("k={k}: {}", fmt_g(*p)))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(vec![Check::new("P(A_k > 0) non-increasing", non_increasing(&s.p_block_positive), detail)])
}
