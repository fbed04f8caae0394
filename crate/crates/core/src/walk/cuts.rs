//! Cut-times and cutpoints of a finite trajectory.
//!
//! `t` is a cut-time when `{X_0..X_t}` and `{X_{t+1}..X_T}` are disjoint.
//! Cutpoints are vertices of the traversed subgraph whose removal separates
//! `X_0` from `X_T`. Both are read against the recorded horizon only.

use std::collections::HashMap;

use super::WalkError;

#[derive(Debug, Clone, PartialEq)]
pub struct CutRecord {
    pub horizon: u64,
    pub window: u64,
    /// Cut-times `t <= min(T - 1, T - W)`.
    pub cut_times: Vec<u64>,
    /// Separating vertices, in order of first visit.
    pub cutpoints: Vec<u32>,
}

impl CutRecord {
    /// Times after this are not examined.
    pub fn censored_after(&self) -> u64 {
        (self.horizon - self.window).min(self.horizon.saturating_sub(1))
    }
}

/// Cut-times via last-visit timestamps: `t` qualifies exactly when the latest
/// last-visit among `X_0..X_t` is `t` itself.
pub fn cut_times(trace: &[u32], window: u64) -> Result<Vec<u64>, WalkError> {
    let horizon = trace.len().saturating_sub(1) as u64;
    if window >= horizon {
        return Err(WalkError::WindowTooLarge { window, horizon });
    }
    let mut last: HashMap<u32, u64> = HashMap::with_capacity(trace.len() / 2);
    for (t, &x) in trace.iter().enumerate() {
        last.insert(x, t as u64);
    }
    let limit = (horizon - window).min(horizon - 1);
    let mut reach = 0u64;
    let mut out = Vec::new();
    for (t, &x) in trace.iter().enumerate().take(limit as usize + 1) {
        reach = reach.max(last[&x]);
        if reach == t as u64 {
            out.push(t as u64);
        }
    }
    Ok(out)
}

/// Articulation vertices of the traversed graph that separate `X_0` from `X_T`.
pub fn cutpoints(trace: &[u32]) -> Result<Vec<u32>, WalkError> {
    let (&first, &last) = match (trace.first(), trace.last()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(WalkError::ClosedTrace),
    };
    if first == last {
        return Err(WalkError::ClosedTrace);
    }
    // compact relabelling in first-visit order
    let mut id: HashMap<u32, u32> = HashMap::new();
    let mut order = Vec::new();
    let local: Vec<u32> = trace
        .iter()
        .map(|&x| {
            *id.entry(x).or_insert_with(|| {
                order.push(x);
                order.len() as u32 - 1
            })
        })
        .collect();
    let n = order.len();
    let mut pairs: Vec<(u32, u32)> =
        local.windows(2).filter(|w| w[0] != w[1]).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut offsets = vec![0usize; n + 1];
    for &(u, v) in &pairs {
        offsets[u as usize + 1] += 1;
        offsets[v as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut adj = vec![0u32; offsets[n]];
    for &(u, v) in &pairs {
        adj[fill[u as usize]] = v;
        fill[u as usize] += 1;
        adj[fill[v as usize]] = u;
        fill[v as usize] += 1;
    }

    let root = 0usize;
    let target = local[local.len() - 1] as usize;
    const UNSEEN: u32 = u32::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut finish = vec![0u32; n];
    let mut parent = vec![usize::MAX; n];
    let mut separating = vec![false; n];
    let mut clock = 0u32;
    // (vertex, next adjacency slot)
    let mut stack: Vec<(usize, usize)> = vec![(root, offsets[root])];
    disc[root] = clock;
    low[root] = clock;
    while let Some(&mut (v, ref mut slot)) = stack.last_mut() {
        if *slot < offsets[v + 1] {
            let w = adj[*slot] as usize;
            *slot += 1;
            if disc[w] == UNSEEN {
                clock += 1;
                disc[w] = clock;
                low[w] = clock;
                parent[w] = v;
                stack.push((w, offsets[w]));
            } else if w != parent[v] {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            finish[v] = clock;
            if let Some(&(p, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                // v's subtree hangs off p; p separates it when no back edge climbs above p
                let holds_target = disc[v] <= disc[target] && disc[target] <= finish[v];
                if p != root && low[v] >= disc[p] && holds_target {
                    separating[p] = true;
                }
            }
        }
    }
    separating[target] = false;
    Ok((0..n).filter(|&i| separating[i]).map(|i| order[i]).collect())
}

/// Cut-times and cutpoints together.
pub fn cut_record(trace: &[u32], window: u64) -> Result<CutRecord, WalkError> {
    let cut_times = cut_times(trace, window)?;
    let cutpoints = cutpoints(trace)?;
    Ok(CutRecord { horizon: trace.len() as u64 - 1, window, cut_times, cutpoints })
}
