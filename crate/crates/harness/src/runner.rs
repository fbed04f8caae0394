//! Replica execution: a rayon pool sized by `CUTPATH_THREADS`, per-replica
//! seeds derived from the master seed, results collected in replica order.

use cutpath_core::seed::{derive_seed, stream_id};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};

pub const THREADS_ENV: &str = "CUTPATH_THREADS";

pub fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(HarnessError::Invalid(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn replica_seed(master: u64, label: &str, replica: u64) -> u64 {
    derive_seed(master, stream_id(label), replica)
}

/// Runs `f(r)` for `r = 0..count` on the pool. The output is in replica order,
/// so any fold over it is independent of scheduling.
pub fn run_replicas<T, F>(count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    pool.install(|| (0..count as u64).into_par_iter().map(&f).collect())
}

/// Sample mean with a 3σ half-width for the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub n: usize,
    pub mean: f64,
    pub half_width: f64,
}

impl Estimate {
    /// Sequential two-pass sums, so equal inputs give equal bits.
    pub fn of(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Estimate { n, mean: f64::NAN, half_width: f64::NAN };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let half_width = if n > 1 {
            let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
            3.0 * (var / n as f64).sqrt()
        } else {
            0.0
        };
        Estimate { n, mean, half_width }
    }

    pub fn upper(&self) -> f64 {
        self.mean + self.half_width
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_of_constant_has_no_width() {
        let e = Estimate::of(&[2.0; 10]);
        assert_eq!((e.mean, e.half_width), (2.0, 0.0));
        let e = Estimate::of(&[0.0, 2.0]);
        assert!((e.half_width - 3.0 * (2f64 / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn replicas_come_back_in_order() {
        let out = run_replicas(50, |r| Ok(replica_seed(3, "x", r))).unwrap();
        let seq: Vec<u64> = (0..50).map(|r| replica_seed(3, "x", r)).collect();
        assert_eq!(out, seq);
    }
}
