//! Grid execution and CSV output.
//!
//! Seeds: the run seed is `mix(master_seed, [cell, run])`. A run draws its
//! graph from `mix(run_seed, [1])` (or `mix(master_seed, [cell, u64::MAX])`
//! with `shared_graph`), its order from `mix(run_seed, [2])` and partitioner
//! randomness from `mix(run_seed, [3])`. Growing `runs_per_cell` leaves the
//! seeds of existing runs untouched.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use super::lower_bound::{cycle_trial, OPTIMAL_CYCLE_CUT};
use super::spec::{Cell, ExperimentKind, ExperimentSpec, GraphKind};
use crate::analysis::{expected_no_edge_arrivals, regime_check, LogBase};
use crate::error::Result;
use crate::graph::{generate_cycle, generate_planted, random_order, Graph, PlantedParams};
use crate::metrics::RunMetrics;
use crate::partition::{run_partitioner, PartitionerConfig};
use crate::rng::{mix, RNG_ALGORITHM};
use crate::urn::{max_min_fraction, run_urn};

const GRAPH_TAG: u64 = 1;
const ORDER_TAG: u64 = 2;
const PARTITION_TAG: u64 = 3;
const SHARED_GRAPH_TAG: u64 = u64::MAX;

pub const PARTITION_COLUMNS: &str = "experiment,n,k,l,p,q,epsilon,algorithm,gamma,run,seed,edges_cut,cut_fraction,euclidean_error,full_fraction,regime_ok,wall_ms";
pub const LOWER_BOUND_COLUMNS: &str = "experiment,n,epsilon,run,seed,no_edge_arrivals,expected_no_edge,adversarial_cut,optimal_cut";
pub const URN_COLUMNS: &str = "experiment,k,gamma,steps,run,seed,max_fraction,min_fraction,first_fraction";

pub fn run_seed(master: u64, cell: usize, run: usize) -> u64 {
    mix(master, &[cell as u64, run as u64])
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionRecord {
    pub cell: Cell,
    pub run: usize,
    pub seed: u64,
    pub metrics: RunMetrics,
    pub regime_ok: bool,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundRecord {
    pub n: usize,
    pub epsilon: f64,
    pub run: usize,
    pub seed: u64,
    pub no_edge_arrivals: u64,
    pub expected_no_edge: f64,
    pub adversarial_cut: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UrnRecord {
    pub k: usize,
    pub gamma: f64,
    pub steps: u64,
    pub run: usize,
    pub seed: u64,
    pub max_fraction: f64,
    pub min_fraction: f64,
    pub first_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Records {
    Partition(Vec<PartitionRecord>),
    LowerBound(Vec<LowerBoundRecord>),
    Urn(Vec<UrnRecord>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    /// Cells outside the recovery regime. Not fatal.
    pub warnings: Vec<String>,
    pub records: Records,
}

impl ExperimentResult {
    pub fn len(&self) -> usize {
        match &self.records {
            Records::Partition(r) => r.len(),
            Records::LowerBound(r) => r.len(),
            Records::Urn(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Partition records, or an empty slice for the other kinds.
    pub fn partition_records(&self) -> &[PartitionRecord] {
        match &self.records {
            Records::Partition(r) => r,
            _ => &[],
        }
    }

    /// `#` preamble with the RNG, seed scheme, assumptions and spec (minus the
    /// output path), then the column header and one row per (cell, run).
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let spec = &self.spec;
        writeln!(out, "# experiment={}", spec.name)?;
        writeln!(out, "# rng={RNG_ALGORITHM}")?;
        writeln!(out, "# seeds=run:mix(master_seed,[cell,run]) graph:mix(run,[1]) shared_graph:mix(master_seed,[cell,2^64-1]) order:mix(run,[2]) partitioner:mix(run,[3])")?;
        writeln!(out, "# log_base={}", LogBase::Natural)?;
        writeln!(out, "# regime_ok=density, separation and cluster-count conditions with n0=1")?;
        for note in &spec.notes {
            writeln!(out, "# note={note}")?;
        }
        let content = ExperimentSpec { out: None, ..spec.clone() };
        for line in content.to_text().lines() {
            writeln!(out, "# spec {line}")?;
        }
        let name = &spec.name;
        match &self.records {
            Records::Partition(rows) => {
                writeln!(out, "{PARTITION_COLUMNS}")?;
                for r in rows {
                    let c = &r.cell;
                    writeln!(
                        out,
                        "{name},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                        c.n,
                        c.k,
                        c.l,
                        c.p,
                        c.q,
                        c.epsilon,
                        c.algorithm,
                        c.gamma,
                        r.run,
                        r.seed,
                        r.metrics.edges_cut,
                        r.metrics.cut_fraction,
                        r.metrics.euclidean_error.map(|e| e.to_string()).unwrap_or_default(),
                        r.metrics.full_fraction,
                        r.regime_ok,
                        r.wall_ms
                    )?;
                }
            }
            Records::LowerBound(rows) => {
                writeln!(out, "{LOWER_BOUND_COLUMNS}")?;
                for r in rows {
                    writeln!(
                        out,
                        "{name},{},{},{},{},{},{},{},{OPTIMAL_CYCLE_CUT}",
                        r.n, r.epsilon, r.run, r.seed, r.no_edge_arrivals, r.expected_no_edge, r.adversarial_cut
                    )?;
                }
            }
            Records::Urn(rows) => {
                writeln!(out, "{URN_COLUMNS}")?;
                for r in rows {
                    writeln!(
                        out,
                        "{name},{},{},{},{},{},{},{},{}",
                        r.k, r.gamma, r.steps, r.run, r.seed, r.max_fraction, r.min_fraction, r.first_fraction
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv is utf-8"))
    }
}

/// Run every (cell, run) pair on the current rayon pool. Rows come back in
/// (cell, run) order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let (records, warnings) = match spec.kind {
        ExperimentKind::Partition => {
            let (rows, warnings) = run_partition(spec)?;
            (Records::Partition(rows), warnings)
        }
        ExperimentKind::LowerBound => (Records::LowerBound(run_lower_bound(spec)?), Vec::new()),
        ExperimentKind::UrnSuite => (Records::Urn(run_urn_suite(spec)?), Vec::new()),
    };
    Ok(ExperimentResult { spec: spec.clone(), warnings, records })
}

fn cell_regime_ok(spec: &ExperimentSpec, cell: &Cell) -> bool {
    spec.graph == GraphKind::Planted
        && regime_check(cell.n, cell.k, cell.l, cell.p, cell.q, 1.0, LogBase::Natural)
            .map(|r| r.core_ok())
            .unwrap_or(false)
}

fn build_graph(spec: &ExperimentSpec, cell: &Cell, seed: u64) -> Result<Graph> {
    match spec.graph {
        GraphKind::Planted => generate_planted(&PlantedParams::equal(cell.n, cell.l, cell.p, cell.q)?, seed),
        GraphKind::Cycle => generate_cycle(cell.n),
    }
}

fn run_partition(spec: &ExperimentSpec) -> Result<(Vec<PartitionRecord>, Vec<String>)> {
    let mut rows = Vec::with_capacity(spec.cells().len() * spec.runs_per_cell);
    let mut warnings = Vec::new();
    for cell in spec.cells() {
        let regime_ok = cell_regime_ok(spec, &cell);
        if !regime_ok && spec.graph == GraphKind::Planted {
            warnings.push(format!(
                "cell {} (n={}, k={}, l={}, p={}, q={}) is outside the recovery regime",
                cell.index, cell.n, cell.k, cell.l, cell.p, cell.q
            ));
        }
        let shared = if spec.shared_graph {
            Some(build_graph(spec, &cell, mix(spec.master_seed, &[cell.index as u64, SHARED_GRAPH_TAG]))?)
        } else {
            None
        };
        let cell_rows = (0..spec.runs_per_cell)
            .into_par_iter()
            .map(|run| {
                let start = Instant::now();
                let seed = run_seed(spec.master_seed, cell.index, run);
                let owned;
                let graph = match &shared {
                    Some(g) => g,
                    None => {
                        owned = build_graph(spec, &cell, mix(seed, &[GRAPH_TAG]))?;
                        &owned
                    }
                };
                let order = random_order(cell.n, mix(seed, &[ORDER_TAG]))?;
                let config = PartitionerConfig::new(cell.algorithm, cell.k, cell.epsilon, mix(seed, &[PARTITION_TAG]))
                    .with_gamma(cell.gamma);
                let state = run_partitioner(graph, &order, &config)?;
                let metrics = RunMetrics::compute(graph, &state)?;
                let wall_ms = if spec.record_timing { start.elapsed().as_millis() as u64 } else { 0 };
                Ok(PartitionRecord { cell: cell.clone(), run, seed, metrics, regime_ok, wall_ms })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.extend(cell_rows);
    }
    Ok((rows, warnings))
}

fn run_lower_bound(spec: &ExperimentSpec) -> Result<Vec<LowerBoundRecord>> {
    let mut jobs = Vec::new();
    let mut index = 0;
    for &n in &spec.n {
        for &epsilon in &spec.epsilon {
            for run in 0..spec.runs_per_cell {
                jobs.push((index, n, epsilon, run));
            }
            index += 1;
        }
    }
    jobs.into_par_iter()
        .map(|(cell, n, epsilon, run)| {
            let seed = run_seed(spec.master_seed, cell, run);
            let graph = generate_cycle(n)?;
            let trial = cycle_trial(&graph, epsilon, seed)?;
            Ok(LowerBoundRecord {
                n,
                epsilon,
                run,
                seed,
                no_edge_arrivals: trial.no_edge_arrivals,
                expected_no_edge: expected_no_edge_arrivals(n)?,
                adversarial_cut: trial.adversarial_cut,
            })
        })
        .collect()
}

fn run_urn_suite(spec: &ExperimentSpec) -> Result<Vec<UrnRecord>> {
    let mut jobs = Vec::new();
    let mut index = 0;
    for &k in &spec.k {
        for &gamma in &spec.gamma {
            for run in 0..spec.runs_per_cell {
                jobs.push((index, k, gamma, run));
            }
            index += 1;
        }
    }
    jobs.into_par_iter()
        .map(|(cell, k, gamma, run)| {
            let seed = run_seed(spec.master_seed, cell, run);
            let urn = run_urn(vec![1; k], gamma, spec.steps, seed)?;
            let (max_fraction, min_fraction) = max_min_fraction(urn.state.loads());
            let first_fraction = urn.state.fractions()[0];
            Ok(UrnRecord { k, gamma, steps: spec.steps, run, seed, max_fraction, min_fraction, first_fraction })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::spec::QValue;
    use crate::partition::Algorithm;

    fn tiny() -> ExperimentSpec {
        ExperimentSpec {
            name: "tiny".into(),
            n: vec![200],
            k: vec![2],
            l: vec![4],
            p: vec![0.5],
            q: vec![QValue::Absolute(0.01)],
            epsilon: vec![0.1],
            algorithm: vec![Algorithm::ArgmaxGreedy],
            runs_per_cell: 2,
            master_seed: 11,
            ..ExperimentSpec::default()
        }
    }

    #[test]
    fn one_cell_two_runs_is_byte_identical() {
        let spec = tiny();
        let a = run_experiment(&spec).unwrap().to_csv_string().unwrap();
        let b = run_experiment(&spec).unwrap().to_csv_string().unwrap();
        assert_eq!(a, b);
        let data: Vec<&str> = a.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], PARTITION_COLUMNS);
        assert_eq!(data.len(), 3);
        assert!(a.contains(RNG_ALGORITHM));
    }

    #[test]
    fn more_runs_keep_earlier_seeds() {
        let mut spec = tiny();
        let a = run_experiment(&spec).unwrap();
        spec.runs_per_cell = 4;
        let b = run_experiment(&spec).unwrap();
        assert_eq!(a.partition_records(), &b.partition_records()[..2]);
    }

    #[test]
    fn record_count_is_cells_times_runs() {
        let mut spec = tiny();
        spec.epsilon = vec![0.05, 0.1, 0.2];
        spec.algorithm = vec![Algorithm::ArgmaxGreedy, Algorithm::ProportionalGreedy];
        let result = run_experiment(&spec).unwrap();
        assert_eq!(result.len(), 12);
        let cells: Vec<usize> = result.partition_records().iter().map(|r| r.cell.index).collect();
        assert!(cells.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn shared_graph_fixes_edge_count() {
        let mut spec = tiny();
        spec.shared_graph = true;
        spec.runs_per_cell = 3;
        spec.algorithm = vec![Algorithm::RandomBaseline];
        let rows = run_experiment(&spec).unwrap();
        let rows = rows.partition_records();
        let m: Vec<f64> = rows.iter().map(|r| r.metrics.edges_cut as f64 / r.metrics.cut_fraction).collect();
        assert!(m.iter().all(|&x| (x - m[0]).abs() < 1e-6));
    }

    #[test]
    fn regime_flag_and_warnings() {
        let mut spec = tiny();
        spec.p = vec![0.01];
        let result = run_experiment(&spec).unwrap();
        assert!(result.partition_records().iter().all(|r| !r.regime_ok));
        assert_eq!(result.warnings.len(), 1);
    }

    #[test]
    fn other_kinds_write_their_own_columns() {
        let spec = ExperimentSpec {
            kind: ExperimentKind::UrnSuite,
            k: vec![2, 3],
            gamma: vec![0.5, 2.0],
            steps: 500,
            runs_per_cell: 2,
            ..ExperimentSpec::default()
        };
        let result = run_experiment(&spec).unwrap();
        assert_eq!(result.len(), 8);
        assert!(result.to_csv_string().unwrap().contains(URN_COLUMNS));

        let spec = ExperimentSpec {
            kind: ExperimentKind::LowerBound,
            graph: GraphKind::Cycle,
            n: vec![100],
            epsilon: vec![0.0],
            runs_per_cell: 3,
            ..ExperimentSpec::default()
        };
        let result = run_experiment(&spec).unwrap();
        assert_eq!(result.len(), 3);
        assert!(result.to_csv_string().unwrap().contains(LOWER_BOUND_COLUMNS));
    }
}
