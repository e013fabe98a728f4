//! Cycle constructions behind the lower bounds.

use serde::Serialize;

use crate::analysis::expected_no_edge_arrivals;
use crate::error::{Error, Result};
use crate::graph::{adversarial_cycle_order, generate_cycle, random_order, stream_events, Graph, StreamOrder};
use crate::metrics::edges_cut;
use crate::partition::{run_partitioner, Algorithm, PartitionerConfig};
use crate::rng::mix;
use crate::stats;

/// Cut of any balanced bisection of an even cycle into two paths.
pub const OPTIMAL_CYCLE_CUT: u64 = 2;

const ORDER_TAG: u64 = 2;
const PARTITION_TAG: u64 = 3;

/// Arrivals that see none of their neighbors already placed.
pub fn count_no_edge_arrivals(graph: &Graph, order: &StreamOrder) -> Result<u64> {
    Ok(stream_events(graph, order)?.filter(|e| e.revealed.is_empty()).count() as u64)
}

/// One replication of both constructions on an `n`-cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleTrial {
    pub no_edge_arrivals: u64,
    pub adversarial_cut: u64,
}

/// Random-order arrival count and argmax greedy (k = 2) cut under the
/// odd-then-even order, both driven by `seed`.
pub fn cycle_trial(graph: &Graph, epsilon: f64, seed: u64) -> Result<CycleTrial> {
    let n = graph.n();
    let order = random_order(n, mix(seed, &[ORDER_TAG]))?;
    let no_edge_arrivals = count_no_edge_arrivals(graph, &order)?;
    let adversarial = adversarial_cycle_order(n)?;
    let config = PartitionerConfig::new(Algorithm::ArgmaxGreedy, 2, epsilon, mix(seed, &[PARTITION_TAG]));
    let state = run_partitioner(graph, &adversarial, &config)?;
    Ok(CycleTrial { no_edge_arrivals, adversarial_cut: edges_cut(graph, &state, false)? })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub n: usize,
    pub runs: usize,
    pub seed: u64,
    pub expected_no_edge: f64,
    pub no_edge_mean: f64,
    pub no_edge_sd: f64,
    /// `|mean - expected| / (sd / sqrt(runs))`.
    pub no_edge_z: f64,
    pub adversarial_cuts: Vec<u64>,
    pub adversarial_cut_mean: f64,
    pub optimal_cut: u64,
    pub cut_per_n: f64,
}

/// Run `runs` replications on an `n`-cycle with slack 0.
pub fn lower_bound_demo(n: usize, runs: usize, seed: u64) -> Result<LowerBoundReport> {
    if n < 100 || n % 2 != 0 {
        return Err(Error::param("lower bound demo needs an even cycle length >= 100"));
    }
    if runs < 2 {
        return Err(Error::param("lower bound demo needs at least 2 runs"));
    }
    let graph = generate_cycle(n)?;
    let trials = (0..runs)
        .map(|r| cycle_trial(&graph, 0.0, mix(seed, &[r as u64])))
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<f64> = trials.iter().map(|t| t.no_edge_arrivals as f64).collect();
    let expected = expected_no_edge_arrivals(n)?;
    let mean = stats::mean(&counts);
    let sd = stats::sample_sd(&counts);
    let se = sd / (runs as f64).sqrt();
    let cuts: Vec<u64> = trials.iter().map(|t| t.adversarial_cut).collect();
    let cut_mean = cuts.iter().sum::<u64>() as f64 / runs as f64;
    Ok(LowerBoundReport {
        n,
        runs,
        seed,
        expected_no_edge: expected,
        no_edge_mean: mean,
        no_edge_sd: sd,
        no_edge_z: if se > 0.0 { (mean - expected).abs() / se } else { f64::INFINITY },
        adversarial_cuts: cuts,
        adversarial_cut_mean: cut_mean,
        optimal_cut: OPTIMAL_CYCLE_CUT,
        cut_per_n: cut_mean / n as f64,
    })
}
