//! Level sets, threshold subdivision, trace networks and contraction.

use super::network::Edge;
use super::solve::{effective_conductance, solve_voltage, VoltageSolution};
use super::{NetError, Network};

/// The unique `i >= 0` with `d^{-i-1} < v <= d^{-i}`, or `None` for `v <= 0`.
pub fn level_index(v: f64, d: f64) -> Option<u32> {
    if !(v > 0.0) {
        return None;
    }
    let v = v.min(1.0);
    let mut i = ((1.0 / v).ln() / d.ln()).floor().max(0.0) as i32;
    // the logarithm can land one off at exact powers of d
    while i > 0 && v > d.powi(-i) {
        i -= 1;
    }
    while v <= d.powi(-i - 1) {
        i += 1;
    }
    Some(i as u32)
}

/// Partition of the non-terminal vertices into potential bands
/// `G_i = { x : d^{-i-1} < v(x) <= d^{-i} }`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSets {
    pub base: usize,
    pub index: Vec<Option<u32>>,
    pub classes: Vec<Vec<usize>>,
    /// The sink, plus any vertex at potential 0.
    pub terminal: Vec<usize>,
}

impl LevelSets {
    pub fn from_potentials(potential: &[f64], sink: Option<usize>, d: usize) -> Result<Self, NetError> {
        if d < 2 {
            return Err(NetError::BadLevelBase(d));
        }
        let mut index = Vec::with_capacity(potential.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut terminal = Vec::new();
        for (x, &v) in potential.iter().enumerate() {
            let i = if Some(x) == sink { None } else { level_index(v, d as f64) };
            match i {
                Some(i) => {
                    let i = i as usize;
                    if classes.len() <= i {
                        classes.resize(i + 1, Vec::new());
                    }
                    classes[i].push(x);
                }
                None => terminal.push(x),
            }
            index.push(i);
        }
        Ok(LevelSets { base: d, index, classes, terminal })
    }

    pub fn level(&self, i: u32) -> &[usize] {
        self.classes.get(i as usize).map_or(&[], |c| c.as_slice())
    }

    /// Levels `i` for which `G_i`, `G_{i+1}` and `G_{i+2}` are all nonempty.
    pub fn eligible(&self) -> Vec<u32> {
        (0..self.classes.len().saturating_sub(2) as u32)
            .filter(|&i| (0..3).all(|k| !self.level(i + k).is_empty()))
            .collect()
    }

    /// True when every edge between labelled vertices joins equal or
    /// neighbouring levels.
    pub fn only_adjacent_levels(&self, net: &Network) -> bool {
        net.edges().iter().all(|e| match (self.index[e.u as usize], self.index[e.v as usize]) {
            (Some(a), Some(b)) => a.abs_diff(b) <= 1,
            _ => true,
        })
    }
}

pub fn level_sets(sol: &VoltageSolution, d: usize) -> Result<LevelSets, NetError> {
    LevelSets::from_potentials(&sol.potential, Some(sol.sink), d)
}

/// `net` with extra vertices inserted on every edge whose potential range
/// strictly contains `d^{-i-1}` or `d^{-i-2}`.
#[derive(Debug, Clone)]
pub struct SubdividedNetwork {
    pub network: Network,
    /// Vertices `0..original_n` are the original ones.
    pub original_n: usize,
    pub level: u32,
    pub base: usize,
    /// `(d^{-i-1}, d^{-i-2})`.
    pub thresholds: (f64, f64),
    /// Vertices at the upper threshold: new split vertices plus any original
    /// vertex sitting exactly on it.
    pub z: Vec<usize>,
    /// Same for the lower threshold.
    pub z_prime: Vec<usize>,
    /// Target potential of each new vertex (index `k` is vertex `original_n + k`).
    pub new_potential: Vec<f64>,
}

/// Splits edges at the two thresholds below level `i`.
///
/// An edge `x -> y` with `v(x) > t > v(y)` becomes `x - z - y` with
/// `c_xz = c (v(x) - v(y)) / (v(x) - t)` and `c_zy = c (v(x) - v(y)) / (t - v(y))`;
/// edges crossing both thresholds get two new vertices. The series law keeps
/// all original potentials and the source-sink conductance unchanged, and the
/// new vertices sit exactly at their threshold. Edges without a strict
/// crossing (including zero-current edges) are copied as they are.
pub fn subdivide_between_levels(
    net: &Network,
    sol: &VoltageSolution,
    i: u32,
    d: usize,
) -> Result<SubdividedNetwork, NetError> {
    let levels = level_sets(sol, d)?;
    for k in 0..3 {
        if levels.level(i + k).is_empty() {
            return Err(NetError::EmptyLevel(i + k));
        }
    }
    let df = d as f64;
    let upper = df.powi(-(i as i32) - 1);
    let lower = df.powi(-(i as i32) - 2);
    let v = &sol.potential;

    let n = net.n();
    let mut z = Vec::new();
    let mut z_prime = Vec::new();
    for (x, &vx) in v.iter().enumerate() {
        if x == sol.sink {
            continue;
        }
        if vx == upper {
            z.push(x);
        } else if vx == lower {
            z_prime.push(x);
        }
    }

    let mut edges = Vec::with_capacity(net.m());
    let mut new_potential = Vec::new();
    for e in net.edges() {
        let (a, b) = (e.u as usize, e.v as usize);
        let (hi, lo) = if v[a] >= v[b] { (a, b) } else { (b, a) };
        let (vh, vl) = (v[hi], v[lo]);
        let cuts: Vec<f64> = [upper, lower].into_iter().filter(|&t| vl < t && t < vh).collect();
        if cuts.is_empty() {
            edges.push(*e);
            continue;
        }
        let drop = vh - vl;
        let mut prev_vertex = hi;
        let mut prev_v = vh;
        for t in cuts {
            let zv = n + new_potential.len();
            new_potential.push(t);
            if t == upper {
                z.push(zv);
            } else {
                z_prime.push(zv);
            }
            edges.push(Edge { u: prev_vertex as u32, v: zv as u32, c: e.c * drop / (prev_v - t) });
            prev_vertex = zv;
            prev_v = t;
        }
        edges.push(Edge { u: prev_vertex as u32, v: lo as u32, c: e.c * drop / (prev_v - vl) });
    }
    let network = Network::from_validated(n + new_potential.len(), edges);
    Ok(SubdividedNetwork {
        network,
        original_n: n,
        level: i,
        base: d,
        thresholds: (upper, lower),
        z,
        z_prime,
        new_potential,
    })
}

/// Exact expected crossing and visit counts of the walk from the source,
/// stopped at the sink.
#[derive(Debug, Clone)]
pub struct TraceNetwork {
    pub solution: VoltageSolution,
    /// `E N(e)` for every edge of the base network.
    pub crossings: Vec<f64>,
    /// `g(x)`: expected visits to `x` before the sink is hit.
    pub visits: Vec<f64>,
    /// Base graph with conductance `E N(e)`; edges with `E N = 0` are dropped.
    pub network: Network,
}

pub fn trace_network_exact(net: &Network, source: usize, sink: usize) -> Result<TraceNetwork, NetError> {
    let solution = solve_voltage(net, source, sink)?;
    let v = &solution.potential;
    let ceff = solution.conductance;
    let crossings: Vec<f64> = net
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (e.u as usize, e.v as usize);
            if a == b {
                // a loop is one step, taken with probability c / C_x per visit
                v[a] * e.c / ceff
            } else {
                (v[a] + v[b]) * e.c / ceff
            }
        })
        .collect();
    let visits = (0..net.n()).map(|x| v[x] * net.weight(x) / ceff).collect();
    let network = net.reweighted(|i, _| crossings[i]);
    Ok(TraceNetwork { solution, crossings, visits, network })
}

/// `C_eff(G_i <-> G_{i+2})` in the expected-crossing network.
pub fn level_pair_conductance(trace: &TraceNetwork, levels: &LevelSets, i: u32) -> Result<f64, NetError> {
    let a = levels.level(i);
    let b = levels.level(i + 2);
    if a.is_empty() {
        return Err(NetError::EmptyLevel(i));
    }
    if b.is_empty() {
        return Err(NetError::EmptyLevel(i + 2));
    }
    effective_conductance(&trace.network, a, b)
}

/// Quotient by a partition given as a list of classes. Class `k` becomes
/// vertex `k`; edges inside a class are dropped and parallel edges kept.
pub fn contract(net: &Network, classes: &[Vec<usize>]) -> Result<Network, NetError> {
    let mut class_of = vec![usize::MAX; net.n()];
    for (k, class) in classes.iter().enumerate() {
        for &x in class {
            net.check_vertex(x)?;
            if class_of[x] != usize::MAX {
                return Err(NetError::BadPartition(x));
            }
            class_of[x] = k;
        }
    }
    if let Some(x) = class_of.iter().position(|&k| k == usize::MAX) {
        return Err(NetError::BadPartition(x));
    }
    Ok(quotient(net, &class_of, classes.len()))
}

/// Merges each of `sets` into one vertex (set `k` becomes vertex `k`) and
/// keeps every other vertex, numbered after the sets in original order.
/// Returns the quotient and the old-to-new vertex map.
pub fn contract_sets(net: &Network, sets: &[&[usize]]) -> Result<(Network, Vec<usize>), NetError> {
    let mut map = vec![usize::MAX; net.n()];
    for (k, set) in sets.iter().enumerate() {
        for &x in set.iter() {
            net.check_vertex(x)?;
            if map[x] != usize::MAX && map[x] != k {
                return Err(NetError::BadPartition(x));
            }
            map[x] = k;
        }
    }
    let mut next = sets.len();
    for slot in map.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    Ok((quotient(net, &map, next), map))
}

fn quotient(net: &Network, class_of: &[usize], count: usize) -> Network {
    let edges = net
        .edges()
        .iter()
        .filter_map(|e| {
            let (a, b) = (class_of[e.u as usize], class_of[e.v as usize]);
            (a != b).then_some(Edge { u: a as u32, v: b as u32, c: e.c })
        })
        .collect();
    Network::from_validated(count, edges)
}
