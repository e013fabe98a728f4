//! Reductions over partition records.

use std::collections::BTreeMap;

use super::runner::PartitionRecord;
use crate::stats;

/// Values of `metric` grouped by `key`, keys ascending under `f64::total_cmp`.
pub fn group_by(
    records: &[PartitionRecord],
    key: impl Fn(&PartitionRecord) -> f64,
    metric: impl Fn(&PartitionRecord) -> f64,
) -> Vec<(f64, Vec<f64>)> {
    let mut groups: BTreeMap<OrdKey, Vec<f64>> = BTreeMap::new();
    for r in records {
        groups.entry(OrdKey(key(r))).or_default().push(metric(r));
    }
    groups.into_iter().map(|(k, v)| (k.0, v)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct OrdKey(f64);

impl Eq for OrdKey {}

impl PartialOrd for OrdKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Median Euclidean error per value of `key`.
pub fn median_error_by(records: &[PartitionRecord], key: impl Fn(&PartitionRecord) -> f64) -> Vec<(f64, f64)> {
    group_by(records, key, |r| r.metrics.euclidean_error.unwrap_or(f64::NAN))
        .into_iter()
        .map(|(k, v)| (k, stats::median(&v)))
        .collect()
}

/// Level at which load-balance thresholds are read off full-fraction
/// curves. Fixed from a pilot of the fig1 grid, where the curves sit near
/// 0.3 below the knee and under 0.1 above it.
pub const FULL_FRACTION_LEVEL: f64 = 0.2;

/// Smallest epsilon whose mean full-partition fraction is at most `level`,
/// among records with `n` vertices.
pub fn full_fraction_threshold(records: &[PartitionRecord], n: usize, level: f64) -> Option<f64> {
    let at_n: Vec<PartitionRecord> = records.iter().filter(|r| r.cell.n == n).cloned().collect();
    group_by(&at_n, |r| r.cell.epsilon, |r| r.metrics.full_fraction)
        .into_iter()
        .find(|(_, v)| stats::mean(v) <= level)
        .map(|(eps, _)| eps)
}

/// Adjacent pairs that move against the expected direction.
pub fn monotone_violations(values: &[f64], increasing: bool) -> usize {
    values
        .windows(2)
        .filter(|w| if increasing { w[1] < w[0] } else { w[1] > w[0] })
        .count()
}
