//! The layered expander graph: layer `j` is a copy of a `d`-regular expander
//! on `2^k` vertices, where `k` is chosen so that `2^k / k^α <= j < 2^{k+1} / (k+1)^α`.

use rand::seq::SliceRandom;

use super::expander::gen_regular_expander;
use super::GenError;
use crate::net::Network;
use crate::seed::{derive_seed, rng_from_seed, stream_id};

/// Hard cap on generated vertex counts.
pub const MAX_VERTICES: u64 = 1 << 26;
const MAX_K: u32 = 400;

/// Parameters of the layer-size schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub alpha: f64,
    /// Least `k` from which every block interval contains an integer.
    pub k_star: u32,
    /// First layer index that follows the schedule; earlier layers copy it.
    pub j0: u32,
}

fn block_lo(alpha: f64, k: u32) -> f64 {
    2f64.powi(k as i32) / (k as f64).powf(alpha)
}

fn block_has_integer(alpha: f64, k: u32) -> bool {
    let lo = block_lo(alpha, k);
    let hi = block_lo(alpha, k + 1);
    lo.ceil() < hi
}

impl Schedule {
    pub fn new(alpha: f64) -> Result<Self, GenError> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(GenError::BadAlpha(alpha));
        }
        // Block lengths grow without bound, so past the first run of long blocks
        // every later block contains an integer; scan well beyond that point.
        let mut k_star = 1;
        let mut long_run = 0;
        let mut k = 1;
        while k < MAX_K {
            if !block_has_integer(alpha, k) {
                k_star = k + 1;
                long_run = 0;
            } else if block_lo(alpha, k + 1) - block_lo(alpha, k) > 2.0 {
                long_run += 1;
                if long_run > 8 {
                    break;
                }
            }
            k += 1;
        }
        let j0 = block_lo(alpha, k_star).ceil() as u32;
        Ok(Schedule { alpha, k_star, j0 })
    }

    /// Block index `k` of layer `j` (layers below `j0` use block `k_star`).
    pub fn k_of(&self, j: u32) -> u32 {
        let j = j.max(self.j0) as f64;
        let mut k = self.k_star;
        while block_lo(self.alpha, k + 1) <= j {
            k += 1;
        }
        k
    }

    pub fn layer_size(&self, j: u32) -> u64 {
        1u64 << self.k_of(j)
    }
}

/// Returns `(k, j0)`: the block containing `max(j, j0)` and the first scheduled layer.
pub fn layer_schedule(alpha: f64, j: u32) -> Result<(u32, u32), GenError> {
    let s = Schedule::new(alpha)?;
    Ok((s.k_of(j), s.j0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayeredGraphSpec {
    pub alpha: f64,
    pub d: usize,
    pub j_max: u32,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct LayeredGraph {
    pub spec: LayeredGraphSpec,
    pub schedule: Schedule,
    /// Layer labels are attached to the network.
    pub network: Network,
    /// `layer_offsets[j]..layer_offsets[j + 1]` are the vertices of layer `j`.
    pub layer_offsets: Vec<usize>,
    pub layer_k: Vec<u32>,
    /// Layers `j` whose successor has twice as many vertices.
    pub doubling_boundaries: Vec<u32>,
    /// `(k, λ₂)` of the expander sample used for each block.
    pub lambda2: Vec<(u32, f64)>,
}

impl LayeredGraph {
    pub fn j0(&self) -> u32 {
        self.schedule.j0
    }

    pub fn num_layers(&self) -> usize {
        self.layer_k.len()
    }

    pub fn layer_range(&self, j: u32) -> std::ops::Range<usize> {
        self.layer_offsets[j as usize]..self.layer_offsets[j as usize + 1]
    }

    pub fn layer_size(&self, j: u32) -> usize {
        self.layer_range(j).len()
    }

    pub fn layer_of(&self, x: usize) -> u32 {
        self.network.layer(x).expect("layered graph carries labels")
    }
}

pub fn build_layered_graph(spec: LayeredGraphSpec) -> Result<LayeredGraph, GenError> {
    let schedule = Schedule::new(spec.alpha)?;
    if spec.d < 3 {
        return Err(GenError::DegreeTooSmall { d: spec.d, min: 3 });
    }
    if spec.j_max < schedule.j0 {
        return Err(GenError::JMaxBelowJ0 { j_max: spec.j_max, j0: schedule.j0 });
    }
    let layers = spec.j_max as usize + 1;
    let layer_k: Vec<u32> = (0..=spec.j_max).map(|j| schedule.k_of(j)).collect();
    let total: u64 = layer_k.iter().map(|&k| 1u64 << k.min(63)).fold(0u64, |a, b| a.saturating_add(b));
    if layer_k.iter().any(|&k| k >= 63) || total > MAX_VERTICES {
        return Err(GenError::TooLarge(total));
    }

    let mut layer_offsets = Vec::with_capacity(layers + 1);
    layer_offsets.push(0usize);
    for &k in &layer_k {
        layer_offsets.push(layer_offsets.last().unwrap() + (1usize << k));
    }

    let mut expanders = Vec::new();
    let mut lambda2 = Vec::new();
    for k in layer_k[0]..=layer_k[layers - 1] {
        let e = gen_regular_expander(1 << k, spec.d, derive_seed(spec.seed, stream_id("expander"), k as u64))?;
        lambda2.push((k, e.lambda2));
        let pairs: Vec<(u32, u32)> = e.network.edges().iter().map(|e| (e.u, e.v)).collect();
        expanders.push(pairs);
    }
    let expander_of = |k: u32| &expanders[(k - layer_k[0]) as usize];

    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut doubling_boundaries = Vec::new();
    for j in 0..layers {
        let base = layer_offsets[j];
        for &(x, y) in expander_of(layer_k[j]) {
            edges.push((base + x as usize, base + y as usize, 1.0));
        }
        if j + 1 == layers {
            break;
        }
        let up = layer_offsets[j + 1];
        if layer_k[j + 1] == layer_k[j] {
            for &(x, y) in expander_of(layer_k[j]) {
                edges.push((base + x as usize, up + y as usize, 1.0));
                edges.push((base + y as usize, up + x as usize, 1.0));
            }
        } else {
            assert_eq!(layer_k[j + 1], layer_k[j] + 1, "layer sizes must at most double");
            doubling_boundaries.push(j as u32);
            let lower = 1usize << layer_k[j];
            let upper = 2 * lower;
            let low_stubs: Vec<usize> = (0..lower).flat_map(|x| std::iter::repeat_n(x, 2 * spec.d)).collect();
            let mut up_stubs: Vec<usize> = (0..upper).flat_map(|y| std::iter::repeat_n(y, spec.d)).collect();
            assert_eq!(low_stubs.len(), up_stubs.len());
            let mut rng = rng_from_seed(derive_seed(spec.seed, stream_id("doubling"), j as u64));
            up_stubs.shuffle(&mut rng);
            for (x, y) in low_stubs.into_iter().zip(up_stubs) {
                edges.push((base + x, up + y, 1.0));
            }
        }
    }

    let n = *layer_offsets.last().unwrap();
    let labels: Vec<u32> = (0..layers).flat_map(|j| std::iter::repeat_n(j as u32, 1 << layer_k[j])).collect();
    let network = Network::new(n, edges)?.with_layers(labels)?;
    Ok(LayeredGraph { spec, schedule, network, layer_offsets, layer_k, doubling_boundaries, lambda2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_two_schedule() {
        let s = Schedule::new(2.0).unwrap();
        assert_eq!((s.k_star, s.j0), (6, 2));
        let ks: Vec<u32> = (0..=6).map(|j| s.k_of(j)).collect();
        assert_eq!(ks, vec![6, 6, 6, 7, 8, 8, 8]);
        assert_eq!(layer_schedule(2.0, 3).unwrap(), (7, 2));
        assert!(layer_schedule(1.0, 3).is_err());
    }

    #[test]
    fn small_layered_instance() {
        let spec = LayeredGraphSpec { alpha: 2.0, d: 3, j_max: 6, seed: 1 };
        let g = build_layered_graph(spec).unwrap();
        let sizes: Vec<usize> = (0..=6).map(|j| g.layer_size(j)).collect();
        assert_eq!(sizes, vec![64, 64, 64, 128, 256, 256, 256]);
        assert_eq!(g.doubling_boundaries, vec![2, 3]);
        assert!((0..g.network.n()).all(|x| g.network.degree(x) <= 12));
    }
}
