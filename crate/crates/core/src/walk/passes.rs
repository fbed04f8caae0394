//! Passes around a level of a one-dimensional trajectory, and linking.
//!
//! For a centre `j` and exponent `β` the window is `[⌊j - j^β⌋, ⌈j + j^β⌉]`.
//! The walk alternately hits the bottom (`s_0 < s_1 < ...`) and the top
//! (`t_0 < t_1 < ...`) of the window; the linking of `j` is the number of
//! completed top hits, and `j` is linked when that number reaches `M`.

use super::WalkError;
use crate::generators::LineNetwork;
use crate::seed::{derive_seed, rng_from_seed, stream_id};

/// Returns `(j_minus, j_plus)` for centre `j`.
pub fn pass_window(j: u32, beta: f64) -> Result<(u32, u32), WalkError> {
    let spread = (j as f64).powf(beta);
    let lo = (j as f64 - spread).floor();
    let hi = (j as f64 + spread).ceil();
    if j == 0 || lo < 0.0 || !(hi > lo) {
        return Err(WalkError::BadWindow { j, beta });
    }
    Ok((lo as u32, hi as u32))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PassRecord {
    pub j: u32,
    pub beta: f64,
    pub m: u32,
    pub j_minus: u32,
    pub j_plus: u32,
    /// Bottom hits `s_0, s_1, ...`.
    pub s: Vec<u64>,
    /// Top hits `t_0, t_1, ...`.
    pub t: Vec<u64>,
    pub linking: u32,
    pub linked: bool,
    /// `(start, end)` of each pass: the last bottom visit before a top hit,
    /// and that top hit.
    pub passes: Vec<(u64, u64)>,
}

pub fn detect_passes(layers: &[u32], j: u32, beta: f64, m: u32) -> Result<PassRecord, WalkError> {
    let (j_minus, j_plus) = pass_window(j, beta)?;
    let mut rec = passes_in_window(layers, j_minus, j_plus, m);
    rec.j = j;
    rec.beta = beta;
    Ok(rec)
}

/// Pass scan for an explicit window; `j` and `beta` are left unset.
pub fn passes_in_window(layers: &[u32], j_minus: u32, j_plus: u32, m: u32) -> PassRecord {
    let mut s = Vec::new();
    let mut t = Vec::new();
    let mut passes = Vec::new();
    let mut seeking_top = false;
    let mut last_bottom = 0u64;
    for (time, &x) in layers.iter().enumerate() {
        let time = time as u64;
        if x == j_minus {
            if !seeking_top {
                s.push(time);
                seeking_top = true;
            }
            last_bottom = time;
        } else if x == j_plus && seeking_top {
            t.push(time);
            passes.push((last_bottom, time));
            seeking_top = false;
        }
    }
    let linking = t.len() as u32;
    PassRecord { j: 0, beta: f64::NAN, m, j_minus, j_plus, s, t, linking, linked: linking >= m, passes }
}

/// Streaming linking counts for every centre in `[j_lo, j_hi]` at once.
#[derive(Debug, Clone)]
pub struct LinkTracker {
    j_lo: u32,
    /// CSR lists of centres whose window bottom / top is a given level.
    bottom_offsets: Vec<u32>,
    bottom_of: Vec<u32>,
    top_offsets: Vec<u32>,
    top_of: Vec<u32>,
    seeking_top: Vec<bool>,
    links: Vec<u32>,
}

fn csr(levels: usize, pairs: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>) {
    let mut offsets = vec![0u32; levels + 1];
    for &(lvl, _) in pairs {
        offsets[lvl as usize + 1] += 1;
    }
    for i in 0..levels {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut items = vec![0u32; pairs.len()];
    for &(lvl, idx) in pairs {
        items[fill[lvl as usize] as usize] = idx;
        fill[lvl as usize] += 1;
    }
    (offsets, items)
}

impl LinkTracker {
    pub fn new(j_lo: u32, j_hi: u32, beta: f64) -> Result<Self, WalkError> {
        if j_hi < j_lo {
            return Err(WalkError::EmptyRange);
        }
        let mut bottoms = Vec::new();
        let mut tops = Vec::new();
        for j in j_lo..=j_hi {
            let (lo, hi) = pass_window(j, beta)?;
            bottoms.push((lo, j - j_lo));
            tops.push((hi, j - j_lo));
        }
        let levels = tops.iter().map(|&(h, _)| h as usize + 1).max().unwrap();
        let (bottom_offsets, bottom_of) = csr(levels, &bottoms);
        let (top_offsets, top_of) = csr(levels, &tops);
        let count = (j_hi - j_lo + 1) as usize;
        Ok(LinkTracker {
            j_lo,
            bottom_offsets,
            bottom_of,
            top_offsets,
            top_of,
            seeking_top: vec![false; count],
            links: vec![0; count],
        })
    }

    /// Highest window top over the tracked centres.
    pub fn top_level(&self) -> u32 {
        self.top_offsets.len() as u32 - 2
    }

    #[inline]
    pub fn observe(&mut self, x: u32) {
        let x = x as usize;
        if x + 1 >= self.bottom_offsets.len() {
            return;
        }
        for &i in &self.bottom_of[self.bottom_offsets[x] as usize..self.bottom_offsets[x + 1] as usize] {
            self.seeking_top[i as usize] = true;
        }
        for &i in &self.top_of[self.top_offsets[x] as usize..self.top_offsets[x + 1] as usize] {
            if std::mem::take(&mut self.seeking_top[i as usize]) {
                self.links[i as usize] += 1;
            }
        }
    }

    /// Linking of each centre, starting from `j_lo`.
    pub fn links(&self) -> &[u32] {
        &self.links
    }

    pub fn linking(&self, j: u32) -> u32 {
        self.links[(j - self.j_lo) as usize]
    }

    pub fn into_links(self) -> Vec<u32> {
        self.links
    }
}

/// Indicators of non-linked centres aggregated over replicas.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkStats {
    pub j_lo: u32,
    pub j_hi: u32,
    pub m: u32,
    pub replicas: usize,
    /// Empirical probability that `j` is not linked, for `j = j_lo..=j_hi`.
    pub p: Vec<f64>,
    /// Dyadic blocks `(2^k, 2^{k+1}]` lying inside the range.
    pub blocks: Vec<u32>,
    /// `a[r][b]`: number of non-linked centres of replica `r` in block `blocks[b]`.
    pub a: Vec<Vec<u64>>,
    /// Fraction of replicas with a non-linked centre in each block.
    pub p_block_positive: Vec<f64>,
}

impl LinkStats {
    pub fn from_links(j_lo: u32, j_hi: u32, m: u32, links: &[Vec<u32>]) -> Result<Self, WalkError> {
        if j_hi < j_lo {
            return Err(WalkError::EmptyRange);
        }
        if links.is_empty() {
            return Err(WalkError::NoReplicas);
        }
        let count = (j_hi - j_lo + 1) as usize;
        let reps = links.len() as f64;
        let p = (0..count).map(|i| links.iter().filter(|row| row[i] < m).count() as f64 / reps).collect();
        let blocks: Vec<u32> = (0..32u32)
            .filter(|&k| (1u64 << k) + 1 >= j_lo as u64 && (1u64 << (k + 1)) <= j_hi as u64)
            .collect();
        let a: Vec<Vec<u64>> = links
            .iter()
            .map(|row| {
                blocks
                    .iter()
                    .map(|&k| {
                        ((1u32 << k) + 1..=(1u32 << (k + 1))).filter(|&j| row[(j - j_lo) as usize] < m).count() as u64
                    })
                    .collect()
            })
            .collect();
        let p_block_positive =
            (0..blocks.len()).map(|b| a.iter().filter(|row| row[b] > 0).count() as f64 / reps).collect();
        Ok(LinkStats { j_lo, j_hi, m, replicas: links.len(), p, blocks, a, p_block_positive })
    }
}

/// Linking census over recorded layer sequences.
pub fn linking_census(traces: &[Vec<u32>], beta: f64, m: u32, j_lo: u32, j_hi: u32) -> Result<LinkStats, WalkError> {
    let links: Result<Vec<Vec<u32>>, WalkError> = traces
        .iter()
        .map(|tr| {
            let mut tracker = LinkTracker::new(j_lo, j_hi, beta)?;
            tr.iter().for_each(|&x| tracker.observe(x));
            Ok(tracker.into_links())
        })
        .collect();
    LinkStats::from_links(j_lo, j_hi, m, &links?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensusParams {
    pub beta: f64,
    pub m: u32,
    pub j_lo: u32,
    pub j_hi: u32,
    pub start: usize,
    pub budget: u64,
    pub seed: u64,
}

impl CensusParams {
    /// Linking counts of one replica, walking on `line` until absorption or budget.
    pub fn replica_links(&self, line: &LineNetwork, replica: u64) -> Result<Vec<u32>, WalkError> {
        let mut tracker = LinkTracker::new(self.j_lo, self.j_hi, self.beta)?;
        let mut rng = rng_from_seed(derive_seed(self.seed, stream_id("linking"), replica));
        let top = line.len();
        let mut x = self.start.min(top);
        tracker.observe(x as u32);
        for _ in 0..self.budget {
            if line.absorbing && x == top {
                break;
            }
            x = line.step(x, &mut rng);
            tracker.observe(x as u32);
        }
        Ok(tracker.into_links())
    }
}

/// Simulates `replicas` walks on `line` and tallies non-linked centres.
pub fn simulate_linking_census(line: &LineNetwork, params: &CensusParams, replicas: usize) -> Result<LinkStats, WalkError> {
    let links: Result<Vec<_>, _> = (0..replicas as u64).map(|r| params.replica_links(line, r)).collect();
    LinkStats::from_links(params.j_lo, params.j_hi, params.m, &links?)
}
