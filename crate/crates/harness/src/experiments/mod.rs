//! The six packaged experiments. Each module exposes `compute`, which returns
//! typed results, and `write`, which turns them into CSV files and checks.

pub mod e1;
pub mod e2;
pub mod e3;
pub mod e4;
pub mod e5;
pub mod e6;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::config::{ExperimentConfig, ExperimentId};
use crate::error::Result;
use crate::output::{write_text, CsvOut};

/// One inequality or trend checked by an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, satisfied: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), satisfied, detail: detail.into() }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub id: ExperimentId,
    pub files: Vec<PathBuf>,
    pub checks: Vec<Check>,
    pub runtime: Duration,
    pub summary: PathBuf,
}

impl ExperimentReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }
}

/// Output files of one experiment, all sharing the config echo header.
pub(crate) struct Sink<'a> {
    dir: &'a Path,
    echo: String,
    prefix: String,
    files: Vec<PathBuf>,
}

impl<'a> Sink<'a> {
    fn new(cfg: &'a ExperimentConfig, dir: &'a Path) -> Self {
        Sink { dir, echo: cfg.echo(), prefix: cfg.id.label().to_lowercase(), files: Vec::new() }
    }

    pub(crate) fn csv(&self, name: &str, header: &[&str]) -> Result<CsvOut> {
        CsvOut::create(&self.dir.join(format!("{}_{name}.csv", self.prefix)), &self.echo, header)
    }

    pub(crate) fn done(&mut self, out: CsvOut) -> Result<()> {
        self.files.push(out.finish()?);
        Ok(())
    }
}

/// Runs the experiment, writes its CSVs and `summary.txt` into `out`.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    cfg.validate()?;
    let started = Instant::now();
    let mut sink = Sink::new(cfg, out);
    let checks = match cfg.id {
        ExperimentId::E1 => e1::write(&e1::compute(cfg)?, &mut sink)?,
        ExperimentId::E2 => e2::write(&e2::compute(cfg)?, &mut sink)?,
        ExperimentId::E3 => e3::write(&e3::compute(cfg)?, &mut sink)?,
        ExperimentId::E4 => e4::write(&e4::compute(cfg)?, &mut sink)?,
        ExperimentId::E5 => e5::write(&e5::compute(cfg)?, &mut sink)?,
        ExperimentId::E6 => e6::write(&e6::compute(cfg)?, &mut sink)?,
    };
    let runtime = started.elapsed();

    let mut text = String::new();
    let _ = writeln!(text, "{}: {}", cfg.id, cfg.id.title());
    let _ = writeln!(text, "\n[config]\n{}", cfg.echo());
    let flags = cfg.flags();
    if !flags.is_empty() {
        let _ = writeln!(text, "\n[flags]");
        for f in flags {
            let _ = writeln!(text, "{f}");
        }
    }
    let _ = writeln!(text, "\n[checks]");
    for c in &checks {
        let _ = writeln!(text, "{} {}: {}", if c.satisfied { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let _ = writeln!(text, "\n[files]");
    for f in &sink.files {
        let _ = writeln!(text, "{}", f.display());
    }
    let _ = writeln!(text, "\nruntime: {:.3} s", runtime.as_secs_f64());
    let summary = out.join("summary.txt");
    write_text(&summary, &text)?;
    Ok(ExperimentReport { id: cfg.id, files: sink.files, checks, runtime, summary })
}

/// Dyadic block `(2^k, 2^{k+1}]` holding layer `j >= 2`.
pub fn dyadic_block(j: u32) -> Option<u32> {
    (j >= 2).then(|| 31 - (j - 1).leading_zeros())
}

pub fn non_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] <= w[0])
}

#[cfg(test)]
mod tests {
    use super::dyadic_block;

    #[test]
    fn blocks() {
        assert_eq!(dyadic_block(1), None);
        assert_eq!(dyadic_block(2), Some(0));
        assert_eq!(dyadic_block(3), Some(1));
        assert_eq!(dyadic_block(4), Some(1));
        assert_eq!(dyadic_block(5), Some(2));
        assert_eq!(dyadic_block(64), Some(5));
        assert_eq!(dyadic_block(65), Some(6));
    }
}
