//! Resistance from the root to deeper and deeper layers, in the host layered
//! graph and in the unit-weight subgraph traced by a walk to the top layer.

use cutpath_core::analysis::{layer_boundaries, resistance_profile};
use cutpath_core::seed::rng_from_seed;
use cutpath_core::walk::{path_subgraph, StopCondition, Walker};

use super::{Check, Sink};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::fmt_g;
use crate::runner::{replica_seed, run_replicas, Estimate};

/// Required growth of the mean path resistance per doubling of depth.
pub const PATH_GROWTH: f64 = 0.5;
/// The last host increment must be below the first divided by this.
pub const HOST_SHRINK: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct ResistanceProfiles {
    pub depths: Vec<u32>,
    pub host: Vec<f64>,
    /// `path[r][i]`: resistance to depth `depths[i]` in replica `r`'s path.
    pub path: Vec<Vec<f64>>,
    pub path_mean: Vec<Estimate>,
}

fn increments(r: &[f64]) -> Vec<f64> {
    r.windows(2).map(|w| w[1] - w[0]).collect()
}

impl ResistanceProfiles {
    pub fn host_increments(&self) -> Vec<f64> {
        increments(&self.host)
    }

    pub fn path_increments(&self) -> Vec<f64> {
        increments(&self.path_mean.iter().map(|e| e.mean).collect::<Vec<_>>())
    }

    pub fn host_shrinks(&self) -> bool {
        let inc = self.host_increments();
        !inc.is_empty() && inc.windows(2).all(|w| w[1] < w[0]) && inc[inc.len() - 1] < inc[0] / HOST_SHRINK
    }

    pub fn path_grows(&self) -> bool {
        let inc = self.path_increments();
        !inc.is_empty() && inc.iter().all(|&d| d >= PATH_GROWTH)
    }
}

/// Configured depths, or powers of two up to `j_max`.
pub fn depths(cfg: &ExperimentConfig) -> Vec<u32> {
    if !cfg.walk.depths.is_empty() {
        return cfg.walk.depths.clone();
    }
    std::iter::successors(Some(1u32), |&d| d.checked_mul(2)).take_while(|&d| d <= cfg.graph.j_max).collect()
}

pub fn compute(cfg: &ExperimentConfig) -> Result<ResistanceProfiles> {
    let graph = super::e1::build_graph(cfg)?;
    let net = &graph.network;
    let depths = depths(cfg);
    let start = cfg.walk.start;
    net.check_vertex(start)?;
    let host = resistance_profile(net, start, &layer_boundaries(net, &depths)?)?;

    let walker = Walker::new(net);
    let stop = StopCondition::layer(cfg.graph.j_max, cfg.walk.budget);
    let path = run_replicas(cfg.replicas, |r| {
        let mut rng = rng_from_seed(replica_seed(cfg.seed, "E3", r));
        let trace = walker.walk(start, &stop, &mut rng)?;
        let sub = path_subgraph(&trace, net);
        let root = sub.from_host(start).expect("start lies on its own path");
        Ok(resistance_profile(&sub.path, root, &layer_boundaries(&sub.path, &depths)?)?)
    })?;
    let path_mean =
        (0..depths.len()).map(|i| Estimate::of(&path.iter().map(|p| p[i]).collect::<Vec<_>>())).collect();
    Ok(ResistanceProfiles { depths, host, path, path_mean })
}

pub(crate) fn write(res: &ResistanceProfiles, sink: &mut Sink) -> Result<Vec<Check>> {
    let host_inc = res.host_increments();
    let path_inc = res.path_increments();
    let mut out = sink.csv(
        "profile",
        &["depth", "host_r", "host_increment", "path_r_mean", "path_half_width", "path_increment"],
    )?;
    for (i, depth) in res.depths.iter().enumerate() {
        let inc = |v: &[f64]| if i == 0 { String::new() } else { fmt_g(v[i - 1]) };
        out.row([
            depth.to_string(),
            fmt_g(res.host[i]),
            inc(&host_inc),
            fmt_g(res.path_mean[i].mean),
            fmt_g(res.path_mean[i].half_width),
            inc(&path_inc),
        ])?;
    }
    sink.done(out)?;

    let mut out = sink.csv("replicas", &["replica", "depth", "path_r"])?;
    for (r, p) in res.path.iter().enumerate() {
        for (depth, v) in res.depths.iter().zip(p) {
            out.row([r.to_string(), depth.to_string(), fmt_g(*v)])?;
        }
    }
    sink.done(out)?;

    let list = |v: &[f64]| v.iter().map(|x| fmt_g(*x)).collect::<Vec<_>>().join(", ");
    Ok(vec![
        Check::new("host increments shrink", res.host_shrinks(), list(&host_inc)),
        Check::new("path resistance grows per doubling", res.path_grows(), list(&path_inc)),
    ])
}
