//! Running minima of the return probability along line-network walks: the
//! certified lower-bound sum against the horizon, and recovery frequencies
//! of the minima binned by their ratio.

use cutpath_core::analysis::minima_analysis;
use cutpath_core::generators::LineNetwork;
use cutpath_core::seed::rng_from_seed;

use super::{Check, Sink};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::fmt_g;
use crate::runner::{replica_seed, run_replicas, Estimate};

pub const DECILES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizonRow {
    pub lower_bound_sum: f64,
    pub minima: usize,
    pub certified: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DecileBin {
    pub minima: u64,
    pub recovered: u64,
}

impl DecileBin {
    pub fn frequency(&self) -> Estimate {
        let n = self.minima as f64;
        let p = self.recovered as f64 / n;
        Estimate { n: self.minima as usize, mean: p, half_width: 3.0 * (p * (1.0 - p) / n).sqrt() }
    }
}

#[derive(Debug, Clone)]
pub struct MinimaGrowth {
    pub horizons: Vec<u64>,
    /// `runs[r][h]`: record of run `r` cut at horizon `horizons[h]`.
    pub runs: Vec<Vec<HorizonRow>>,
    pub sums: Vec<Estimate>,
    /// Recovery counts at the largest horizon, by `M_n / M_{n-1}` decile.
    pub deciles: [DecileBin; DECILES],
}

impl MinimaGrowth {
    pub fn strictly_increasing(&self) -> bool {
        self.sums.windows(2).all(|w| w[1].mean > w[0].mean)
    }

    /// Recovery frequency against the upper edge of its ratio bin, plus 3σ.
    pub fn decile_rows(&self) -> Vec<(usize, Estimate, f64, bool)> {
        self.deciles
            .iter()
            .enumerate()
            .filter(|(_, b)| b.minima > 0)
            .map(|(k, b)| {
                let f = b.frequency();
                let bound = (k + 1) as f64 / DECILES as f64;
                (k, f, bound, f.mean <= bound + f.half_width)
            })
            .collect()
    }
}

pub fn compute(cfg: &ExperimentConfig) -> Result<MinimaGrowth> {
    let line = LineNetwork::layered_schedule(cfg.graph.alpha, cfg.graph.d, cfg.graph.len)?;
    let horizons = cfg.walk.horizons.clone();
    let t_max = *horizons.last().expect("validated nonempty");
    let start = cfg.walk.start.min(line.len());
    let per_run = run_replicas(cfg.replicas, |r| {
        let mut rng = rng_from_seed(replica_seed(cfg.seed, "E5", r));
        let mut x = start;
        let mut trace = vec![x as u32];
        for _ in 0..t_max {
            if line.absorbing && x == line.len() {
                break;
            }
            x = line.step(x, &mut rng);
            trace.push(x as u32);
        }
        let mut rows = Vec::with_capacity(horizons.len());
        let mut bins = [DecileBin::default(); DECILES];
        for (h, &t) in horizons.iter().enumerate() {
            let end = (t as usize + 1).min(trace.len());
            let rec = minima_analysis(&trace[..end], &line)?;
            rows.push(HorizonRow {
                lower_bound_sum: rec.lower_bound_sum,
                minima: rec.minima.len(),
                certified: rec.certified_cut_times.len(),
            });
            if h + 1 == horizons.len() {
                for m in &rec.minima {
                    let k = ((m.ratio() * DECILES as f64) as usize).min(DECILES - 1);
                    bins[k].minima += 1;
                    bins[k].recovered += m.recovery.is_some() as u64;
                }
            }
        }
        Ok((rows, bins))
    })?;

    let mut deciles = [DecileBin::default(); DECILES];
    let mut runs = Vec::with_capacity(per_run.len());
    for (rows, bins) in per_run {
        for (acc, b) in deciles.iter_mut().zip(bins) {
            acc.minima += b.minima;
            acc.recovered += b.recovered;
        }
        runs.push(rows);
    }
    let sums = (0..horizons.len())
        .map(|h| Estimate::of(&runs.iter().map(|r| r[h].lower_bound_sum).collect::<Vec<_>>()))
        .collect();
    Ok(MinimaGrowth { horizons, runs, sums, deciles })
}

pub(crate) fn write(res: &MinimaGrowth, sink: &mut Sink) -> Result<Vec<Check>> {
    let mut out = sink.csv("horizons", &["horizon", "mean_lower_bound_sum", "half_width", "mean_minima", "mean_certified"])?;
    for (h, t) in res.horizons.iter().enumerate() {
        let n = res.runs.len() as f64;
        let minima = res.runs.iter().map(|r| r[h].minima).sum::<usize>() as f64 / n;
        let certified = res.runs.iter().map(|r| r[h].certified).sum::<usize>() as f64 / n;
        out.row([t.to_string(), fmt_g(res.sums[h].mean), fmt_g(res.sums[h].half_width), fmt_g(minima), fmt_g(certified)])?;
    }
    sink.done(out)?;

    let mut out = sink.csv("runs", &["run", "horizon", "lower_bound_sum", "minima", "certified_cut_times"])?;
    for (r, rows) in res.runs.iter().enumerate() {
        for (row, t) in rows.iter().zip(&res.horizons) {
            out.row([r.to_string(), t.to_string(), fmt_g(row.lower_bound_sum), row.minima.to_string(), row.certified.to_string()])?;
        }
    }
    sink.done(out)?;

    let rows = res.decile_rows();
    let mut out = sink.csv("deciles", &["bin", "ratio_lo", "ratio_hi", "minima", "recovered", "frequency", "half_width", "satisfied"])?;
    for &(k, f, bound, ok) in &rows {
        let b = res.deciles[k];
        out.row([
            k.to_string(),
            fmt_g(k as f64 / DECILES as f64),
            fmt_g(bound),
            b.minima.to_string(),
            b.recovered.to_string(),
            fmt_g(f.mean),
            fmt_g(f.half_width),
            ok.to_string(),
        ])?;
    }
    sink.done(out)?;

    let sums = res.sums.iter().map(|e| fmt_g(e.mean)).collect::<Vec<_>>().join(", ");
    let bad: Vec<String> = rows.iter().filter(|r| !r.3).map(|r| r.0.to_string()).collect();
    Ok(vec![
        Check::new("lower-bound sum strictly increasing", res.strictly_increasing(), sums),
        Check::new(
            "recovery frequency within ratio bound",
            bad.is_empty() && !rows.is_empty(),
            format!("{} populated bins, failing: [{}]", rows.len(), bad.join(" ")),
        ),
    ])
}
