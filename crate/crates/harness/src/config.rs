//! Experiment configuration: a flat `key = value` file with `[section]`
//! headers, layered over per-experiment presets. Unknown sections and keys
//! are rejected.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ini::{Ini, ParseOption};

use crate::error::{HarnessError, Result};
use crate::output::fmt_g;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentId {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 6] =
        [ExperimentId::E1, ExperimentId::E2, ExperimentId::E3, ExperimentId::E4, ExperimentId::E5, ExperimentId::E6];

    pub fn label(&self) -> &'static str {
        match self {
            ExperimentId::E1 => "E1",
            ExperimentId::E2 => "E2",
            ExperimentId::E3 => "E3",
            ExperimentId::E4 => "E4",
            ExperimentId::E5 => "E5",
            ExperimentId::E6 => "E6",
        }
    }

    pub fn title(&self) -> &'static str {
        match self {
            ExperimentId::E1 => "cutpoint census on the layered graph",
            ExperimentId::E2 => "linking census on the layered line network",
            ExperimentId::E3 => "resistance profiles of the host graph and the walk's path",
            ExperimentId::E4 => "trace-network conductance bounds",
            ExperimentId::E5 => "return-probability minima and certified cut-times",
            ExperimentId::E6 => "conditioned walk oracle against its tail bounds",
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ExperimentId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentId::ALL
            .into_iter()
            .find(|id| id.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::Invalid(format!("unknown experiment '{s}' (expected E1..E6)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Layered,
    Disk,
    Path,
    Line,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Layered => "layered",
            Family::Disk => "disk",
            Family::Path => "path",
            Family::Line => "line",
        }
    }
}

impl FromStr for Family {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "layered" => Ok(Family::Layered),
            "disk" => Ok(Family::Disk),
            "path" => Ok(Family::Path),
            "line" => Ok(Family::Line),
            other => Err(HarnessError::Invalid(format!("unknown graph family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphParams {
    pub family: Family,
    pub alpha: f64,
    pub d: usize,
    pub j_max: u32,
    /// Disk radius.
    pub r: u32,
    /// Path length in vertices.
    pub n: usize,
    /// Line network length `L`.
    pub len: u32,
    /// Graph seed; derived from the master seed when absent.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkParams {
    pub beta: f64,
    pub m: u32,
    pub budget: u64,
    /// Lookahead window as a fraction of the horizon.
    pub window: f64,
    pub horizons: Vec<u64>,
    pub j_lo: u32,
    pub j_hi: u32,
    pub start: usize,
    /// Walks used for per-edge crossing means; 0 means the replica count.
    pub edge_walks: usize,
    /// Resistance-profile depths; empty means powers of two up to `j_max`.
    pub depths: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleParams {
    pub a: Vec<u32>,
    pub t_max: u64,
    /// Visit counts are swept up to `m_factor * a`.
    pub m_factor: u64,
    pub laziness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub id: ExperimentId,
    pub seed: u64,
    pub replicas: usize,
    pub out: PathBuf,
    pub graph: GraphParams,
    pub walk: WalkParams,
    pub oracle: OracleParams,
}

const SCHEMA: &[(&str, &[&str])] = &[
    ("experiment", &["id", "seed", "replicas", "out"]),
    ("graph", &["family", "alpha", "d", "j_max", "r", "n", "len", "seed"]),
    ("walk", &["beta", "m", "budget", "window", "horizons", "j_lo", "j_hi", "start", "edge_walks", "depths"]),
    ("oracle", &["a", "t_max", "m_factor", "laziness"]),
];

impl ExperimentConfig {
    /// Desk-scale defaults for each experiment.
    pub fn preset(id: ExperimentId) -> Self {
        let mut cfg = ExperimentConfig {
            id,
            seed: 1,
            replicas: 100,
            out: PathBuf::from(format!("out/{}", id.label().to_lowercase())),
            graph: GraphParams {
                family: Family::Layered,
                alpha: 2.0,
                d: 3,
                j_max: 160,
                r: 30,
                n: 3,
                len: 80,
                seed: None,
            },
            walk: WalkParams {
                beta: 0.7,
                m: 3,
                budget: 100_000_000,
                window: 0.1,
                horizons: vec![1_000, 10_000, 100_000],
                j_lo: 32,
                j_hi: 2048,
                start: 0,
                edge_walks: 0,
                depths: Vec::new(),
            },
            oracle: OracleParams { a: vec![8, 16, 32], t_max: 2000, m_factor: 10, laziness: 0.0 },
        };
        match id {
            ExperimentId::E1 => {}
            ExperimentId::E2 => {
                cfg.graph.family = Family::Line;
                cfg.graph.len = 8192;
                cfg.walk.budget = 1_000_000_000;
            }
            ExperimentId::E3 => {
                cfg.graph.j_max = 64;
                cfg.replicas = 20;
            }
            ExperimentId::E4 => {
                cfg.graph.family = Family::Disk;
                cfg.replicas = 500;
                cfg.walk.edge_walks = 200_000;
            }
            ExperimentId::E5 => {
                cfg.graph.family = Family::Line;
                cfg.graph.len = 5000;
            }
            ExperimentId::E6 => {
                cfg.replicas = 1;
            }
        }
        cfg
    }

    /// Preset for `id` overridden by the keys of a config file.
    pub fn from_file(id: ExperimentId, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_str_for(id, &text)
    }

    pub fn from_str_for(id: ExperimentId, text: &str) -> Result<Self> {
        let opt = ParseOption { enabled_quote: false, enabled_escape: false, ..Default::default() };
        let ini = Ini::load_from_str_opt(text, opt).map_err(|e| HarnessError::Config(e.to_string()))?;
        let mut cfg = Self::preset(id);
        let mut seen = HashSet::new();
        for (section, props) in ini.iter() {
            let Some(section) = section else {
                if let Some((k, _)) = props.iter().next() {
                    return Err(HarnessError::Config(format!("key '{k}' appears before any [section]")));
                }
                continue;
            };
            let Some((_, keys)) = SCHEMA.iter().find(|(s, _)| *s == section) else {
                return Err(HarnessError::Config(format!("unknown section [{section}]")));
            };
            for (key, value) in props.iter() {
                if !keys.contains(&key) {
                    return Err(HarnessError::Config(format!("unknown key '{key}' in [{section}]")));
                }
                if !seen.insert(format!("{section}.{key}")) {
                    return Err(HarnessError::Config(format!("duplicate key '{key}' in [{section}]")));
                }
                cfg.set(section, key, value.trim())?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, section: &str, key: &str, v: &str) -> Result<()> {
        let at = format!("{section}.{key}");
        match (section, key) {
            ("experiment", "id") => {
                let id: ExperimentId = v.parse()?;
                if id != self.id {
                    return Err(HarnessError::Config(format!("file is for {id}, but {} was requested", self.id)));
                }
            }
            ("experiment", "seed") => self.seed = num(&at, v)?,
            ("experiment", "replicas") => self.replicas = num(&at, v)?,
            ("experiment", "out") => self.out = PathBuf::from(v),
            ("graph", "family") => self.graph.family = v.parse()?,
            ("graph", "alpha") => self.graph.alpha = num(&at, v)?,
            ("graph", "d") => self.graph.d = num(&at, v)?,
            ("graph", "j_max") => self.graph.j_max = num(&at, v)?,
            ("graph", "r") => self.graph.r = num(&at, v)?,
            ("graph", "n") => self.graph.n = num(&at, v)?,
            ("graph", "len") => self.graph.len = num(&at, v)?,
            ("graph", "seed") => self.graph.seed = Some(num(&at, v)?),
            ("walk", "beta") => self.walk.beta = num(&at, v)?,
            ("walk", "m") => self.walk.m = num(&at, v)?,
            ("walk", "budget") => self.walk.budget = num(&at, v)?,
            ("walk", "window") => self.walk.window = num(&at, v)?,
            ("walk", "horizons") => self.walk.horizons = list(&at, v)?,
            ("walk", "j_lo") => self.walk.j_lo = num(&at, v)?,
            ("walk", "j_hi") => self.walk.j_hi = num(&at, v)?,
            ("walk", "start") => self.walk.start = num(&at, v)?,
            ("walk", "edge_walks") => self.walk.edge_walks = num(&at, v)?,
            ("walk", "depths") => self.walk.depths = list(&at, v)?,
            ("oracle", "a") => self.oracle.a = list(&at, v)?,
            ("oracle", "t_max") => self.oracle.t_max = num(&at, v)?,
            ("oracle", "m_factor") => self.oracle.m_factor = num(&at, v)?,
            ("oracle", "laziness") => self.oracle.laziness = num(&at, v)?,
            _ => unreachable!("schema and setter disagree on {at}"),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::Invalid(msg));
        if self.replicas == 0 {
            return bad("replicas must be at least 1".into());
        }
        let g = &self.graph;
        if !(g.alpha > 1.0 && g.alpha.is_finite()) {
            return bad(format!("graph.alpha must exceed 1, got {}", g.alpha));
        }
        if g.d < 3 {
            return bad(format!("graph.d must be at least 3, got {}", g.d));
        }
        let w = &self.walk;
        if !(w.beta > 0.0 && w.beta < 1.0) {
            return bad(format!("walk.beta must lie in (0, 1), got {}", w.beta));
        }
        if !(0.0..1.0).contains(&w.window) {
            return bad(format!("walk.window must lie in [0, 1), got {}", w.window));
        }
        if w.horizons.is_empty() || w.horizons.windows(2).any(|h| h[1] <= h[0]) || w.horizons[0] < 2 {
            return bad("walk.horizons must be increasing and at least 2".into());
        }
        if w.j_hi < w.j_lo || w.j_lo == 0 {
            return bad(format!("walk.j_lo..j_hi must be a nonempty range from 1, got {}..{}", w.j_lo, w.j_hi));
        }
        let o = &self.oracle;
        if o.a.is_empty() || o.a.iter().any(|&a| a < 2) {
            return bad("oracle.a must list values of at least 2".into());
        }
        if !(0.0..1.0).contains(&o.laziness) {
            return bad(format!("oracle.laziness must lie in [0, 1), got {}", o.laziness));
        }
        Ok(())
    }

    /// Parameter combinations that are allowed but fall outside the regime
    /// in which the linking argument applies.
    pub fn flags(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.id != ExperimentId::E2 {
            return out;
        }
        let w = &self.walk;
        if !(w.beta > 0.5 && w.beta < 1.0) {
            out.push(format!("beta = {} lies outside (1/2, 1)", fmt_g(w.beta)));
        }
        let m_min = 2.0 / (1.0 - w.beta) + 2.0;
        if (w.m as f64) <= m_min {
            out.push(format!("M = {} does not exceed 2/(1-beta)+2 = {}", w.m, fmt_g(m_min)));
        }
        out
    }

    pub fn graph_seed(&self) -> u64 {
        use cutpath_core::seed::{derive_seed, stream_id};
        self.graph.seed.unwrap_or_else(|| derive_seed(self.seed, stream_id("graph"), 0))
    }

    /// Every resolved parameter, one `section.key = value` per line.
    pub fn echo(&self) -> String {
        let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let join32 = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let g = &self.graph;
        let w = &self.walk;
        let o = &self.oracle;
        let lines = [
            format!("experiment.id = {}", self.id),
            format!("experiment.seed = {}", self.seed),
            format!("experiment.replicas = {}", self.replicas),
            format!("graph.family = {}", g.family.label()),
            format!("graph.alpha = {}", fmt_g(g.alpha)),
            format!("graph.d = {}", g.d),
            format!("graph.j_max = {}", g.j_max),
            format!("graph.r = {}", g.r),
            format!("graph.n = {}", g.n),
            format!("graph.len = {}", g.len),
            format!("graph.seed = {}", self.graph_seed()),
            format!("walk.beta = {}", fmt_g(w.beta)),
            format!("walk.m = {}", w.m),
            format!("walk.budget = {}", w.budget),
            format!("walk.window = {}", fmt_g(w.window)),
            format!("walk.horizons = {}", join(&w.horizons)),
            format!("walk.j_lo = {}", w.j_lo),
            format!("walk.j_hi = {}", w.j_hi),
            format!("walk.start = {}", w.start),
            format!("walk.edge_walks = {}", w.edge_walks),
            format!("walk.depths = {}", join32(&w.depths)),
            format!("oracle.a = {}", join32(&o.a)),
            format!("oracle.t_max = {}", o.t_max),
            format!("oracle.m_factor = {}", o.m_factor),
            format!("oracle.laziness = {}", fmt_g(o.laziness)),
        ];
        lines.join("\n")
    }
}

fn num<T: FromStr>(at: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| HarnessError::Config(format!("{at}: cannot parse '{v}'")))
}

fn list<T: FromStr>(at: &str, v: &str) -> Result<Vec<T>> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|x| num(at, x.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_rejections() {
        let cfg = ExperimentConfig::from_str_for(
            ExperimentId::E6,
            "[experiment]\nseed = 7\n\n[oracle]\na = 20\n; short sweep\nt_max = 10\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.oracle.a, vec![20]);
        assert_eq!(cfg.oracle.t_max, 10);

        let err = |text: &str| ExperimentConfig::from_str_for(ExperimentId::E6, text).unwrap_err().to_string();
        assert!(err("[oracle]\nbogus = 1\n").contains("unknown key"));
        assert!(err("[extra]\nx = 1\n").contains("unknown section"));
        assert!(err("seed = 1\n").contains("before any"));
        assert!(err("[experiment]\nid = E2\n").contains("requested"));
        assert!(err("[graph]\nalpha = 1\n").contains("alpha"));
        assert!(err("[walk]\nhorizons = 100,10\n").contains("increasing"));
        assert!(err("[experiment]\nseed = x\n").contains("cannot parse"));
    }

    #[test]
    fn flags_small_linking_threshold() {
        let cfg = ExperimentConfig::preset(ExperimentId::E2);
        assert_eq!(cfg.flags().len(), 1);
        let mut ok = cfg.clone();
        ok.walk.m = 9;
        assert!(ok.flags().is_empty());
    }

    #[test]
    fn echo_is_stable() {
        let a = ExperimentConfig::preset(ExperimentId::E4);
        assert_eq!(a.echo(), a.clone().echo());
        assert!(a.echo().contains("graph.family = disk"));
    }
}
