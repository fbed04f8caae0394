//! The subgraph traced out by a walk.

use super::WalkTrace;
use crate::net::Network;

#[derive(Debug, Clone)]
pub struct PathSubgraph {
    /// Traversed edges with unit conductance; carries the host's layer labels.
    pub path: Network,
    /// The same edges weighted by their traversal counts.
    pub weighted: Network,
    /// Host vertex of each subgraph vertex, in increasing host order.
    pub to_host: Vec<usize>,
    /// Host edge of each subgraph edge.
    pub edge_to_host: Vec<usize>,
    pub start: usize,
    pub end: usize,
}

impl PathSubgraph {
    pub fn from_host(&self, x: usize) -> Option<usize> {
        self.to_host.binary_search(&x).ok()
    }
}

pub fn path_subgraph(trace: &WalkTrace, host: &Network) -> PathSubgraph {
    let mut seen = vec![false; host.n()];
    seen[trace.start] = true;
    seen[trace.end] = true;
    let crossed: Vec<usize> = (0..host.m()).filter(|&e| trace.crossings[e] > 0).collect();
    for &e in &crossed {
        let edge = host.edge(e);
        seen[edge.u as usize] = true;
        seen[edge.v as usize] = true;
    }
    let to_host: Vec<usize> = (0..host.n()).filter(|&x| seen[x]).collect();
    let mut relabel = vec![usize::MAX; host.n()];
    for (i, &x) in to_host.iter().enumerate() {
        relabel[x] = i;
    }
    let local = |e: usize| {
        let edge = host.edge(e);
        (relabel[edge.u as usize], relabel[edge.v as usize])
    };
    let path = Network::new(to_host.len(), crossed.iter().map(|&e| {
        let (u, v) = local(e);
        (u, v, 1.0)
    }))
    .expect("subgraph of a valid network");
    let path = match host.layers() {
        Some(l) => path.with_layers(to_host.iter().map(|&x| l[x]).collect()).expect("one label per vertex"),
        None => path,
    };
    let weighted = Network::new(to_host.len(), crossed.iter().map(|&e| {
        let (u, v) = local(e);
        (u, v, trace.crossings[e] as f64)
    }))
    .expect("subgraph of a valid network");
    PathSubgraph {
        path,
        weighted,
        start: relabel[trace.start],
        end: relabel[trace.end],
        to_host,
        edge_to_host: crossed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{simulate_walk, StopCondition, StopReason};

    #[test]
    fn back_and_forth() {
        let host = Network::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let trace = WalkTrace {
            start: 0,
            end: 1,
            steps: 3,
            vertices: Some(vec![0, 1, 0, 1]),
            layers: None,
            crossings: vec![3, 0],
            layer_visits: vec![],
            stop: StopReason::Budget,
        };
        let p = path_subgraph(&trace, &host);
        assert_eq!(p.path.n(), 2);
        assert_eq!(p.path.m(), 1);
        assert_eq!(p.weighted.edge(0).c, 3.0);
        assert_eq!((p.start, p.end), (0, 1));
    }

    #[test]
    fn supports_agree() {
        let host = Network::new(6, (0..6).map(|i| (i, (i + 1) % 6, 1.0))).unwrap();
        let trace = simulate_walk(&host, 0, &StopCondition::budget(40), 2).unwrap();
        let p = path_subgraph(&trace, &host);
        assert_eq!(p.path.m(), p.weighted.m());
        for (a, b) in p.path.edges().iter().zip(p.weighted.edges()) {
            assert_eq!((a.u, a.v), (b.u, b.v));
            assert!(b.c >= 1.0);
        }
        let total: f64 = p.weighted.edges().iter().map(|e| e.c).sum();
        assert_eq!(total, 40.0);
    }
}
