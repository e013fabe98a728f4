//! Experiment specifications and their flat `key = value` file format.
//!
//! ```text
//! # lines starting with '#' are comments
//! name = fig5
//! kind = partition            # partition | lower_bound | urn_suite
//! graph = planted             # planted | cycle
//! n = 400, 800, 1600          # every grid key takes a comma-separated list
//! k = 8
//! l = 100
//! p = 0.75
//! q = p/6kl                   # absolute values, or p/<c>kl, p/<c>l
//! epsilon = 0.1
//! algorithm = argmax_greedy
//! gamma = 1
//! runs = 25
//! master_seed = 2013
//! shared_graph = true         # one graph per cell, fresh order per run
//! record_timing = false       # wall_ms is 0 unless enabled
//! steps = 100000              # urn_suite only
//! note = free text copied into the CSV preamble (repeatable)
//! out = results/fig5.csv
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Partition,
    LowerBound,
    UrnSuite,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Partition => "partition",
            ExperimentKind::LowerBound => "lower_bound",
            ExperimentKind::UrnSuite => "urn_suite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Planted,
    Cycle,
}

/// Inter-cluster probability, absolute or relative to `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QValue {
    Absolute(f64),
    /// `p / (c k l)`
    PerKl(f64),
    /// `p / (c l)`
    PerL(f64),
}

impl QValue {
    pub fn resolve(self, p: f64, k: usize, l: usize) -> f64 {
        match self {
            QValue::Absolute(q) => q,
            QValue::PerKl(c) => p / (c * k as f64 * l as f64),
            QValue::PerL(c) => p / (c * l as f64),
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Absolute(q) => write!(f, "{q}"),
            QValue::PerKl(c) => write!(f, "p/{c}kl"),
            QValue::PerL(c) => write!(f, "p/{c}l"),
        }
    }
}

impl FromStr for QValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Spec(format!("bad q value `{s}`"));
        if let Some(rest) = s.strip_prefix("p/") {
            let (num, ctor): (&str, fn(f64) -> QValue) = if let Some(c) = rest.strip_suffix("kl") {
                (c, QValue::PerKl)
            } else if let Some(c) = rest.strip_suffix('l') {
                (c, QValue::PerL)
            } else {
                return Err(bad());
            };
            let c = if num.is_empty() { 1.0 } else { num.parse().map_err(|_| bad())? };
            return Ok(ctor(c));
        }
        s.parse().map(QValue::Absolute).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub kind: ExperimentKind,
    pub graph: GraphKind,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    pub p: Vec<f64>,
    pub q: Vec<QValue>,
    pub epsilon: Vec<f64>,
    pub algorithm: Vec<Algorithm>,
    pub gamma: Vec<f64>,
    pub runs_per_cell: usize,
    pub master_seed: u64,
    pub shared_graph: bool,
    pub record_timing: bool,
    /// Balls per urn run (urn_suite).
    pub steps: u64,
    /// Assumptions and parameter provenance, written into the CSV preamble.
    pub notes: Vec<String>,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            name: "experiment".into(),
            kind: ExperimentKind::Partition,
            graph: GraphKind::Planted,
            n: vec![1000],
            k: vec![2],
            l: vec![1],
            p: vec![0.1],
            q: vec![QValue::Absolute(0.0)],
            epsilon: vec![0.1],
            algorithm: vec![Algorithm::ArgmaxGreedy],
            gamma: vec![1.0],
            runs_per_cell: 1,
            master_seed: 0,
            shared_graph: false,
            record_timing: false,
            steps: 10_000,
            notes: Vec::new(),
            out: None,
        }
    }
}

/// One point of the parameter grid with `q` resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub p: f64,
    pub q: f64,
    pub epsilon: f64,
    pub algorithm: Algorithm,
    pub gamma: f64,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        let empty = [
            ("n", self.n.is_empty()),
            ("k", self.k.is_empty()),
            ("l", self.l.is_empty()),
            ("p", self.p.is_empty()),
            ("q", self.q.is_empty()),
            ("epsilon", self.epsilon.is_empty()),
            ("algorithm", self.algorithm.is_empty()),
            ("gamma", self.gamma.is_empty()),
        ];
        if let Some((key, _)) = empty.iter().find(|(_, e)| *e) {
            return Err(Error::Spec(format!("grid `{key}` is empty")));
        }
        if self.runs_per_cell == 0 {
            return Err(Error::Spec("runs must be at least 1".into()));
        }
        if self.kind == ExperimentKind::Partition {
            for cell in self.cells() {
                if cell.k == 0 || cell.n == 0 {
                    return Err(Error::Spec("n and k must be positive".into()));
                }
                if self.graph == GraphKind::Planted && (cell.l == 0 || cell.n % cell.l != 0) {
                    return Err(Error::Spec(format!("n={} is not divisible into l={} clusters", cell.n, cell.l)));
                }
                if !(0.0..=1.0).contains(&cell.p) || !(0.0..=1.0).contains(&cell.q) {
                    return Err(Error::Spec(format!("probabilities out of range in cell {}", cell.index)));
                }
                if cell.epsilon < 0.0 {
                    return Err(Error::Spec("epsilon must be >= 0".into()));
                }
                if cell.algorithm == Algorithm::GammaGreedy && cell.gamma <= 0.0 {
                    return Err(Error::Spec("gamma_greedy needs gamma > 0".into()));
                }
            }
        }
        if self.kind == ExperimentKind::LowerBound && self.n.iter().any(|&n| n < 4 || n % 2 != 0) {
            return Err(Error::Spec("lower_bound needs even n >= 4".into()));
        }
        Ok(())
    }

    /// Grid cells in row-major order over n, k, l, p, q, epsilon, algorithm, gamma.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &n in &self.n {
            for &k in &self.k {
                for &l in &self.l {
                    for &p in &self.p {
                        for &q in &self.q {
                            for &epsilon in &self.epsilon {
                                for &algorithm in &self.algorithm {
                                    for &gamma in &self.gamma {
                                        cells.push(Cell {
                                            index: cells.len(),
                                            n,
                                            k,
                                            l,
                                            p,
                                            q: q.resolve(p, k, l),
                                            epsilon,
                                            algorithm,
                                            gamma,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        cells
    }

    /// Parse the `key = value` format. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = ExperimentSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(a, _)| a).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Spec(format!("line {}: expected key = value", i + 1)))?;
            spec.set(key.trim(), value.trim())
                .map_err(|e| Error::Spec(format!("line {}: {e}", i + 1)))?;
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
            value
                .split(',')
                .map(|s| s.trim().parse::<T>().map_err(|_| Error::Spec(format!("bad value `{s}` for `{key}`"))))
                .collect()
        }
        fn one<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value.parse().map_err(|_| Error::Spec(format!("bad value `{value}` for `{key}`")))
        }
        match key {
            "name" => self.name = value.to_string(),
            "kind" => {
                self.kind = match value {
                    "partition" => ExperimentKind::Partition,
                    "lower_bound" => ExperimentKind::LowerBound,
                    "urn_suite" => ExperimentKind::UrnSuite,
                    _ => return Err(Error::Spec(format!("unknown kind `{value}`"))),
                }
            }
            "graph" => {
                self.graph = match value {
                    "planted" => GraphKind::Planted,
                    "cycle" => GraphKind::Cycle,
                    _ => return Err(Error::Spec(format!("unknown graph `{value}`"))),
                }
            }
            "n" => self.n = list(key, value)?,
            "k" => self.k = list(key, value)?,
            "l" => self.l = list(key, value)?,
            "p" => self.p = list(key, value)?,
            "q" => self.q = list(key, value)?,
            "epsilon" => self.epsilon = list(key, value)?,
            "algorithm" => self.algorithm = list(key, value)?,
            "gamma" => self.gamma = list(key, value)?,
            "runs" | "runs_per_cell" => self.runs_per_cell = one(key, value)?,
            "master_seed" | "seed" => self.master_seed = one(key, value)?,
            "shared_graph" => self.shared_graph = one(key, value)?,
            "record_timing" => self.record_timing = one(key, value)?,
            "steps" => self.steps = one(key, value)?,
            "note" => self.notes.push(value.to_string()),
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(Error::Spec(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Render back to the file format.
    pub fn to_text(&self) -> String {
        fn join<T: fmt::Display>(xs: &[T]) -> String {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        }
        let mut s = String::new();
        s += &format!("name = {}\n", self.name);
        s += &format!("kind = {}\n", self.kind.name());
        s += &format!("graph = {}\n", if self.graph == GraphKind::Cycle { "cycle" } else { "planted" });
        s += &format!("n = {}\n", join(&self.n));
        s += &format!("k = {}\n", join(&self.k));
        s += &format!("l = {}\n", join(&self.l));
        s += &format!("p = {}\n", join(&self.p));
        s += &format!("q = {}\n", join(&self.q));
        s += &format!("epsilon = {}\n", join(&self.epsilon));
        s += &format!("algorithm = {}\n", join(&self.algorithm));
        s += &format!("gamma = {}\n", join(&self.gamma));
        s += &format!("runs = {}\n", self.runs_per_cell);
        s += &format!("master_seed = {}\n", self.master_seed);
        s += &format!("shared_graph = {}\n", self.shared_graph);
        s += &format!("record_timing = {}\n", self.record_timing);
        s += &format!("steps = {}\n", self.steps);
        for note in &self.notes {
            s += &format!("note = {note}\n");
        }
        if let Some(out) = &self.out {
            s += &format!("out = {}\n", out.display());
        }
        s
    }
}
