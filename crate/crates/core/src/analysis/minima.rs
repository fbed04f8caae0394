//! Running minima of the return probability `f(X_t)` along a line-network
//! trajectory, and the cut-times they certify.

use super::AnalysisError;
use crate::generators::LineNetwork;

/// One strict running minimum `M_n = f(X_{i_n})`, `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimumRecord {
    pub value: f64,
    pub previous: f64,
    pub time: u64,
    /// First `t > time` with `f(X_t) >= previous`, if any within the trace.
    pub recovery: Option<u64>,
}

impl MinimumRecord {
    pub fn ratio(&self) -> f64 {
        self.value / self.previous
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaRecord {
    /// `f(X_t)` for every `t`.
    pub f: Vec<f64>,
    /// Records `n = 1, 2, ...` (`M_0 = 1` at time 0 is implicit).
    pub minima: Vec<MinimumRecord>,
    /// `Σ (1 - M_n / M_{n-1})`.
    pub lower_bound_sum: f64,
    /// `i_n - 1` for each record that never recovers: everything before `i_n`
    /// has `f >= M_{n-1}`, everything from `i_n` on stays below it.
    pub certified_cut_times: Vec<u64>,
}

/// `f(s)` is the probability of ever visiting the start `X_0`: `η_s / η_{X_0}`
/// above the start and 1 at or below it.
pub fn minima_analysis(trace: &[u32], line: &LineNetwork) -> Result<MinimaRecord, AnalysisError> {
    let &x0 = trace.first().ok_or(AnalysisError::EmptyTrace)?;
    let x0 = x0 as usize;
    if let Some(&bad) = trace.iter().find(|&&x| x as usize > line.len()) {
        return Err(AnalysisError::OutOfRange { j: bad as usize, len: line.len() });
    }
    if x0 == line.len() {
        return Err(AnalysisError::StartsAbsorbed);
    }
    let base = line.eta[x0];
    let f: Vec<f64> = trace
        .iter()
        .map(|&x| if (x as usize) <= x0 { 1.0 } else { line.eta[x as usize] / base })
        .collect();

    let mut minima: Vec<MinimumRecord> = Vec::new();
    // records whose recovery is still open; their thresholds decrease towards the top
    let mut pending: Vec<usize> = Vec::new();
    let mut current = f[0];
    for (t, &v) in f.iter().enumerate().skip(1) {
        while let Some(&n) = pending.last() {
            if v >= minima[n].previous {
                minima[n].recovery = Some(t as u64);
                pending.pop();
            } else {
                break;
            }
        }
        if v < current {
            minima.push(MinimumRecord { value: v, previous: current, time: t as u64, recovery: None });
            pending.push(minima.len() - 1);
            current = v;
        }
    }
    let lower_bound_sum = minima.iter().map(|m| 1.0 - m.ratio()).sum();
    let certified_cut_times = minima.iter().filter(|m| m.recovery.is_none()).map(|m| m.time - 1).collect();
    Ok(MinimaRecord { f, minima, lower_bound_sum, certified_cut_times })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(len: usize) -> LineNetwork {
        LineNetwork::from_weights((0..len).map(|i| 4f64.powi(i as i32)).collect(), vec![0.0; len + 1]).unwrap()
    }

    #[test]
    fn hand_example() {
        let line = geometric(6);
        let rec = minima_analysis(&[0, 1, 0, 1, 2], &line).unwrap();
        assert_eq!(rec.minima.len(), 2);
        assert_eq!(rec.minima[0].time, 1);
        assert_eq!(rec.minima[0].recovery, Some(2));
        assert_eq!(rec.minima[1].time, 4);
        assert_eq!(rec.minima[1].recovery, None);
        assert_eq!(rec.certified_cut_times, vec![3]);
        assert!((rec.minima[0].value - line.eta[1] / line.eta[0]).abs() < 1e-15);
    }

    #[test]
    fn monotone_trace() {
        let line = geometric(8);
        let trace: Vec<u32> = (0..=8).collect();
        let rec = minima_analysis(&trace, &line).unwrap();
        assert_eq!(rec.minima.len(), 8);
        assert!(rec.minima.iter().all(|m| m.recovery.is_none()));
        assert_eq!(rec.certified_cut_times, (0..8).collect::<Vec<u64>>());
        let expected: f64 = (1..=8).map(|n| 1.0 - line.eta[n] / line.eta[n - 1]).sum();
        assert!((rec.lower_bound_sum - expected).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let line = geometric(3);
        assert!(minima_analysis(&[], &line).is_err());
        assert!(minima_analysis(&[3, 2], &line).is_err());
        assert!(minima_analysis(&[0, 5], &line).is_err());
    }
}
