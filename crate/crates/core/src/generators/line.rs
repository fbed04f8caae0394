//! Weighted paths `0, 1, ..., L` with self-loops: the layer projection of
//! walks on layered graphs.

use rand::Rng;

use super::layered::{LayeredGraph, Schedule};
use super::GenError;
use crate::net::Network;

#[derive(Debug, Clone, PartialEq)]
pub struct LineNetwork {
    /// `rungs[j] = w(j, j+1)` for `j < L`.
    pub rungs: Vec<f64>,
    /// `loops[j] = w(j, j)` for `j <= L`.
    pub loops: Vec<f64>,
    /// `r[j] = 1 / w(j, j+1)`.
    pub r: Vec<f64>,
    /// `eta[j] = r[j] + ... + r[L-1]`, so `eta[L] = 0`.
    pub eta: Vec<f64>,
    /// The walk is stopped on reaching `L`.
    pub absorbing: bool,
}

impl LineNetwork {
    pub fn from_weights(rungs: Vec<f64>, loops: Vec<f64>) -> Result<Self, GenError> {
        if rungs.is_empty() {
            return Err(GenError::TooShort { got: 0, min: 1 });
        }
        if loops.len() != rungs.len() + 1
            || rungs.iter().any(|w| !(*w > 0.0) || !w.is_finite())
            || loops.iter().any(|w| !(*w >= 0.0) || !w.is_finite())
        {
            return Err(GenError::BadWeights);
        }
        let r: Vec<f64> = rungs.iter().map(|w| 1.0 / w).collect();
        let mut eta = vec![0.0; rungs.len() + 1];
        for j in (0..rungs.len()).rev() {
            eta[j] = eta[j + 1] + r[j];
        }
        Ok(LineNetwork { rungs, loops, r, eta, absorbing: true })
    }

    pub fn unit_chain(len: usize) -> Result<Self, GenError> {
        Self::from_weights(vec![1.0; len], vec![0.0; len + 1])
    }

    /// The line network of a layered graph with degree `d`, computed from the
    /// layer schedule alone: a `d`-regular layer of size `m` has `w(j,j) = m d`,
    /// and `w(j,j+1) = d * |layer j+1|` both for equal sizes and at doublings.
    pub fn layered_schedule(alpha: f64, d: usize, len: u32) -> Result<Self, GenError> {
        let s = Schedule::new(alpha)?;
        let size = |j: u32| s.layer_size(j) as f64;
        let rungs = (0..len).map(|j| d as f64 * size(j + 1)).collect();
        let loops = (0..=len).map(|j| d as f64 * size(j)).collect();
        Self::from_weights(rungs, loops)
    }

    pub fn len(&self) -> usize {
        self.rungs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rungs.is_empty()
    }

    /// Total conductance at `j`, counting the loop once.
    pub fn total_weight(&self, j: usize) -> f64 {
        let left = if j > 0 { self.rungs[j - 1] } else { 0.0 };
        let right = self.rungs.get(j).copied().unwrap_or(0.0);
        left + self.loops[j] + right
    }

    pub fn to_network(&self) -> Network {
        let l = self.len();
        let rungs = self.rungs.iter().enumerate().map(|(j, &w)| (j, j + 1, w));
        let loops = self.loops.iter().enumerate().filter(|(_, &w)| w > 0.0).map(|(j, &w)| (j, j, w));
        Network::new(l + 1, rungs.chain(loops).collect::<Vec<_>>()).expect("validated weights")
    }

    /// One step of the network walk from `j`.
    pub fn step<R: Rng + ?Sized>(&self, j: usize, rng: &mut R) -> usize {
        let left = if j > 0 { self.rungs[j - 1] } else { 0.0 };
        let right = self.rungs.get(j).copied().unwrap_or(0.0);
        let u = rng.random::<f64>() * (left + self.loops[j] + right);
        if u < left {
            j - 1
        } else if u < left + self.loops[j] {
            j
        } else {
            j + 1
        }
    }
}

/// Counts layer-to-layer edges of `g` up to layer `len`.
pub fn line_network_of(g: &LayeredGraph, len: u32) -> Result<LineNetwork, GenError> {
    if len > g.spec.j_max {
        return Err(GenError::TruncationTooLong { l: len, j_max: g.spec.j_max });
    }
    if len == 0 {
        return Err(GenError::TooShort { got: 0, min: 1 });
    }
    for j in 0..=len {
        if g.layer_size(j) == 0 {
            return Err(GenError::EmptyLayer(j));
        }
    }
    let l = len as usize;
    let mut rungs = vec![0.0; l];
    let mut loops = vec![0.0; l + 1];
    for e in g.network.edges() {
        let a = g.layer_of(e.u as usize) as usize;
        let b = g.layer_of(e.v as usize) as usize;
        let (lo, hi) = (a.min(b), a.max(b));
        if hi > l {
            continue;
        }
        if lo == hi {
            loops[lo] += 2.0 * e.c;
        } else {
            rungs[lo] += e.c;
        }
    }
    LineNetwork::from_weights(rungs, loops)
}
