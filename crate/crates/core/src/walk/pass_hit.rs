//! Monte Carlo passes through a window of layers of a layered graph.

use rand::Rng;

use super::passes::pass_window;
use super::{WalkError, Walker};
use crate::generators::LayeredGraph;
use crate::seed::{derive_seed, rng_from_seed, stream_id};

#[derive(Debug, Clone, PartialEq)]
pub struct PassHitStats {
    pub j_minus: u32,
    pub j_plus: u32,
    pub accepted: usize,
    pub attempts: u64,
    /// Fraction of passes that avoid every marked vertex.
    pub miss_frequency: f64,
    /// First vertex of layer `j`.
    pub designated: usize,
    pub designated_hit_frequency: f64,
    pub mean_pass_length: f64,
}

/// Samples `replicas` passes from a uniform vertex of layer `j_minus` up to
/// layer `j_plus`, rejecting any attempt that falls back to layer `j_minus` or
/// below first.
pub fn pass_hit_statistics(
    g: &LayeredGraph,
    j: u32,
    beta: f64,
    marked: &[usize],
    replicas: usize,
    seed: u64,
) -> Result<PassHitStats, WalkError> {
    let (j_minus, j_plus) = pass_window(j, beta)?;
    if replicas == 0 {
        return Err(WalkError::NoReplicas);
    }
    if j_plus > g.spec.j_max {
        return Err(WalkError::WindowBeyondGraph { top: j_plus, last: g.spec.j_max });
    }
    let net = &g.network;
    let mut is_marked = vec![false; net.n()];
    for &v in marked {
        if v >= net.n() {
            return Err(WalkError::VertexOutOfRange(v));
        }
        let l = g.layer_of(v);
        if l < j_minus || l > j_plus {
            return Err(WalkError::MarkedOutsideWindow(v));
        }
        is_marked[v] = true;
    }
    let designated = g.layer_range(j).start;
    let walker = Walker::new(net);
    let labels = net.layers().expect("layered graph carries labels");
    let bottom = g.layer_range(j_minus);
    let mut rng = rng_from_seed(derive_seed(seed, stream_id("pass-hit"), j as u64));

    let (mut accepted, mut attempts, mut misses, mut hits, mut length) = (0usize, 0u64, 0usize, 0usize, 0u64);
    while accepted < replicas {
        attempts += 1;
        let mut x = rng.random_range(bottom.clone());
        let mut touched = is_marked[x];
        let mut saw_designated = x == designated;
        let mut steps = 0u64;
        let ok = loop {
            x = walker.step(x, &mut rng).expect("layered graph has no isolated vertices").0;
            steps += 1;
            let l = labels[x];
            if l <= j_minus {
                break false;
            }
            touched |= is_marked[x];
            saw_designated |= x == designated;
            if l >= j_plus {
                break true;
            }
        };
        if ok {
            accepted += 1;
            misses += !touched as usize;
            hits += saw_designated as usize;
            length += steps;
        }
    }
    let reps = replicas as f64;
    Ok(PassHitStats {
        j_minus,
        j_plus,
        accepted,
        attempts,
        miss_frequency: misses as f64 / reps,
        designated,
        designated_hit_frequency: hits as f64 / reps,
        mean_pass_length: length as f64 / reps,
    })
}
