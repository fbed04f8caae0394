//! The network random walk: from `x`, move along an incident edge chosen
//! with probability proportional to its conductance.

use rand::Rng;

use super::WalkError;
use crate::net::Network;
use crate::seed::{rng_from_seed, WalkRng};

/// Vertex sequences longer than this are dropped from traces.
pub const MAX_STORED_STEPS: u64 = 10_000_000;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StopCondition {
    pub targets: Vec<usize>,
    /// Stop on entering any layer `>= min_layer`.
    pub min_layer: Option<u32>,
    /// Step budget; always enforced.
    pub budget: u64,
}

impl StopCondition {
    pub fn budget(budget: u64) -> Self {
        StopCondition { budget, ..Default::default() }
    }

    pub fn hit(targets: &[usize], budget: u64) -> Self {
        StopCondition { targets: targets.to_vec(), budget, ..Default::default() }
    }

    pub fn layer(min_layer: u32, budget: u64) -> Self {
        StopCondition { min_layer: Some(min_layer), budget, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    HitTarget,
    HitLayer,
    Budget,
    /// The walk reached a vertex with no incident edges.
    Absorbed,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::HitTarget => "hit_target",
            StopReason::HitLayer => "hit_layer",
            StopReason::Budget => "budget",
            StopReason::Absorbed => "absorbed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkTrace {
    pub start: usize,
    pub end: usize,
    pub steps: u64,
    /// `X_0..X_T`, unless longer than [`MAX_STORED_STEPS`].
    pub vertices: Option<Vec<u32>>,
    /// Layer of each `X_t`, when the host carries labels.
    pub layers: Option<Vec<u32>>,
    /// Traversal count of each host edge.
    pub crossings: Vec<u64>,
    /// `(first, last)` visit time of each layer.
    pub layer_visits: Vec<Option<(u64, u64)>>,
    pub stop: StopReason,
}

impl WalkTrace {
    pub fn first_visit(&self, layer: u32) -> Option<u64> {
        self.layer_visits.get(layer as usize).copied().flatten().map(|v| v.0)
    }

    pub fn last_visit(&self, layer: u32) -> Option<u64> {
        self.layer_visits.get(layer as usize).copied().flatten().map(|v| v.1)
    }
}

/// Precomputed sampling tables for one network.
#[derive(Debug, Clone)]
pub struct Walker<'a> {
    net: &'a Network,
    uniform: bool,
    /// Cumulative conductance along each incidence list.
    cumulative: Vec<f64>,
}

impl<'a> Walker<'a> {
    pub fn new(net: &'a Network) -> Self {
        let c0 = net.edges().first().map(|e| e.c);
        let uniform = net.edges().iter().all(|e| Some(e.c) == c0);
        let mut cumulative = Vec::new();
        if !uniform {
            for x in 0..net.n() {
                let mut acc = 0.0;
                for inc in net.neighbors(x) {
                    acc += net.edge(inc.edge as usize).c;
                    cumulative.push(acc);
                }
            }
        }
        Walker { net, uniform, cumulative }
    }

    pub fn network(&self) -> &Network {
        self.net
    }

    /// Returns `(next vertex, edge index)`, or `None` at an isolated vertex.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> Option<(usize, usize)> {
        let inc = self.net.neighbors(x);
        if inc.is_empty() {
            return None;
        }
        let k = if self.uniform {
            rng.random_range(0..inc.len())
        } else {
            let cum = &self.cumulative[self.net.incidence_range(x)];
            let u = rng.random::<f64>() * cum[cum.len() - 1];
            cum.partition_point(|&c| c <= u).min(inc.len() - 1)
        };
        Some((inc[k].to as usize, inc[k].edge as usize))
    }

    pub fn walk(&self, start: usize, stop: &StopCondition, rng: &mut WalkRng) -> Result<WalkTrace, WalkError> {
        let net = self.net;
        if start >= net.n() {
            return Err(WalkError::VertexOutOfRange(start));
        }
        if let Some(&t) = stop.targets.iter().find(|&&t| t >= net.n()) {
            return Err(WalkError::VertexOutOfRange(t));
        }
        let labels = net.layers();
        if stop.min_layer.is_some() && labels.is_none() {
            return Err(WalkError::NoLayers);
        }
        let mut is_target = vec![false; if stop.targets.is_empty() { 0 } else { net.n() }];
        for &t in &stop.targets {
            is_target[t] = true;
        }
        let n_layers = labels.map(|l| l.iter().max().map_or(0, |&m| m as usize + 1)).unwrap_or(0);
        let mut layer_visits: Vec<Option<(u64, u64)>> = vec![None; n_layers];
        let mut vertices = Some(vec![start as u32]);
        let mut layers = labels.map(|l| vec![l[start]]);
        let mut crossings = vec![0u64; net.m()];

        let check = |x: usize| -> Option<StopReason> {
            if !is_target.is_empty() && is_target[x] {
                return Some(StopReason::HitTarget);
            }
            match (stop.min_layer, labels) {
                (Some(min), Some(l)) if l[x] >= min => Some(StopReason::HitLayer),
                _ => None,
            }
        };
        let visit = |t: u64, x: usize, visits: &mut Vec<Option<(u64, u64)>>| {
            if let Some(l) = labels {
                let slot = &mut visits[l[x] as usize];
                *slot = Some(slot.map_or((t, t), |(f, _)| (f, t)));
            }
        };

        visit(0, start, &mut layer_visits);
        let mut x = start;
        let mut t = 0u64;
        let reason = loop {
            if let Some(r) = check(x) {
                break r;
            }
            if t >= stop.budget {
                break StopReason::Budget;
            }
            let Some((y, e)) = self.step(x, rng) else {
                break StopReason::Absorbed;
            };
            t += 1;
            crossings[e] += 1;
            x = y;
            visit(t, x, &mut layer_visits);
            if let Some(v) = vertices.as_mut() {
                if t > MAX_STORED_STEPS {
                    vertices = None;
                } else {
                    v.push(x as u32);
                }
            }
            if let (Some(seq), Some(l)) = (layers.as_mut(), labels) {
                seq.push(l[x]);
            }
        };
        Ok(WalkTrace { start, end: x, steps: t, vertices, layers, crossings, layer_visits, stop: reason })
    }
}

/// Runs one walk from `start` with its own RNG seeded by `seed`.
pub fn simulate_walk(net: &Network, start: usize, stop: &StopCondition, seed: u64) -> Result<WalkTrace, WalkError> {
    Walker::new(net).walk(start, stop, &mut rng_from_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_walk() {
        let net = Network::new(2, [(0, 1, 1.0)]).unwrap();
        let tr = simulate_walk(&net, 0, &StopCondition::hit(&[1], 10), 0).unwrap();
        assert_eq!(tr.vertices.as_deref(), Some(&[0u32, 1][..]));
        assert_eq!(tr.crossings, vec![1]);
        assert_eq!(tr.stop, StopReason::HitTarget);
    }

    #[test]
    fn budget_and_layers() {
        let net = Network::new(3, [(0, 1, 1.0), (1, 2, 2.0), (2, 2, 1.0)]).unwrap().with_layers(vec![0, 1, 2]).unwrap();
        let tr = simulate_walk(&net, 0, &StopCondition::budget(50), 4).unwrap();
        assert_eq!(tr.steps, 50);
        assert_eq!(tr.stop, StopReason::Budget);
        assert_eq!(tr.crossings.iter().sum::<u64>(), 50);
        let v = tr.vertices.as_ref().unwrap();
        let l = tr.layers.as_ref().unwrap();
        assert_eq!(v.len(), 51);
        assert!(v.iter().zip(l).all(|(&x, &k)| x == k));
        for j in 0..3u32 {
            if let Some((f, s)) = tr.layer_visits[j as usize] {
                assert!(f <= s);
                assert_eq!(l[f as usize], j);
                assert_eq!(l[s as usize], j);
            }
        }
        let tr = simulate_walk(&net, 0, &StopCondition::layer(2, 1000), 4).unwrap();
        assert_eq!(tr.stop, StopReason::HitLayer);
        assert_eq!(tr.end, 2);
    }

    #[test]
    fn weighted_step_frequencies() {
        let net = Network::new(3, [(0, 1, 1.0), (0, 2, 3.0)]).unwrap();
        let w = Walker::new(&net);
        let mut rng = rng_from_seed(1);
        let n = 40_000;
        let to2 = (0..n).filter(|_| w.step(0, &mut rng).unwrap().0 == 2).count() as f64 / n as f64;
        assert!((to2 - 0.75).abs() < 0.015);
    }

    #[test]
    fn start_on_target_and_errors() {
        let net = Network::new(2, [(0, 1, 1.0)]).unwrap();
        let tr = simulate_walk(&net, 1, &StopCondition::hit(&[1], 10), 0).unwrap();
        assert_eq!(tr.steps, 0);
        assert!(simulate_walk(&net, 2, &StopCondition::budget(1), 0).is_err());
        assert_eq!(simulate_walk(&net, 0, &StopCondition::layer(1, 10), 0).unwrap_err(), WalkError::NoLayers);
    }
}
