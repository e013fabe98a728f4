//! Quality and balance of a finished partitioning.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::PartitionState;

/// Undirected edges whose endpoints sit in different partitions. With
/// `count_multiplicity` each pair counts its multiplicity, otherwise once.
pub fn edges_cut(graph: &Graph, state: &PartitionState, count_multiplicity: bool) -> Result<u64> {
    let assignment = state.assignment()?;
    if assignment.len() != graph.n() {
        return Err(Error::SizeMismatch { order: assignment.len(), graph: graph.n() });
    }
    Ok(graph
        .edges()
        .filter(|&(u, v, _)| assignment[u as usize] != assignment[v as usize])
        .map(|(_, _, m)| if count_multiplicity { m as u64 } else { 1 })
        .sum())
}

/// `r_i = max_j |C_i ∩ P_j| / |C_i|` for every cluster.
pub fn recovery_vector(graph: &Graph, state: &PartitionState) -> Result<Vec<f64>> {
    let labels = graph.labels().ok_or(Error::MissingLabels)?;
    let assignment = state.assignment()?;
    let (l, k) = (graph.num_clusters(), state.k());
    let mut overlap = vec![0u64; l * k];
    let mut sizes = vec![0u64; l];
    for (v, &c) in labels.iter().enumerate() {
        overlap[c as usize * k + assignment[v]] += 1;
        sizes[c as usize] += 1;
    }
    Ok(overlap
        .chunks(k)
        .zip(&sizes)
        .map(|(row, &size)| *row.iter().max().expect("k >= 1") as f64 / size as f64)
        .collect())
}

/// Distance from the recovery vector to the all-ones vector.
pub fn euclidean_error(recovery: &[f64]) -> f64 {
    recovery.iter().map(|r| (1.0 - r).powi(2)).sum::<f64>().sqrt()
}

/// Share of partitions at capacity.
pub fn full_partition_fraction(state: &PartitionState) -> f64 {
    let full = (0..state.k()).filter(|&i| state.is_full(i)).count();
    full as f64 / state.k() as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetrics {
    pub edges_cut: u64,
    pub cut_fraction: f64,
    /// Empty for unlabelled graphs.
    pub recovery: Vec<f64>,
    /// `None` for unlabelled graphs.
    pub euclidean_error: Option<f64>,
    pub full_partitions: usize,
    pub full_fraction: f64,
    pub loads: Vec<u64>,
}

impl RunMetrics {
    pub fn compute(graph: &Graph, state: &PartitionState) -> Result<Self> {
        let cut = edges_cut(graph, state, false)?;
        let m = graph.edge_count();
        let (recovery, euclid) = match graph.labels() {
            Some(_) => {
                let r = recovery_vector(graph, state)?;
                let e = euclidean_error(&r);
                (r, Some(e))
            }
            None => (Vec::new(), None),
        };
        let full_partitions = (0..state.k()).filter(|&i| state.is_full(i)).count();
        Ok(Self {
            edges_cut: cut,
            cut_fraction: if m == 0 { 0.0 } else { cut as f64 / m as f64 },
            recovery,
            euclidean_error: euclid,
            full_partitions,
            full_fraction: full_partition_fraction(state),
            loads: state.loads().to_vec(),
        })
    }

    pub const CSV_HEADER: &'static str = "edges_cut,cut_fraction,euclidean_error,full_partitions,full_fraction,loads";

    /// One CSV row in [`Self::CSV_HEADER`] order. Loads are `;`-separated;
    /// a missing euclidean error is an empty field.
    pub fn csv_row(&self) -> String {
        let loads: Vec<String> = self.loads.iter().map(|l| l.to_string()).collect();
        format!(
            "{},{},{},{},{},{}",
            self.edges_cut,
            self.cut_fraction,
            self.euclidean_error.map(|e| e.to_string()).unwrap_or_default(),
            self.full_partitions,
            self.full_fraction,
            loads.join(";")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_cycle, Graph};

    fn state_from(assignment: &[usize], k: usize, capacity: u64) -> PartitionState {
        let mut s = PartitionState::new(assignment.len(), k, capacity);
        for (v, &p) in assignment.iter().enumerate() {
            s.assign(v as u32, p).unwrap();
        }
        s
    }

    #[test]
    fn cut_counts() {
        let square = generate_cycle(4).unwrap();
        assert_eq!(edges_cut(&square, &state_from(&[0, 0, 0, 0], 2, 4), false).unwrap(), 0);
        assert_eq!(edges_cut(&square, &state_from(&[0, 0, 1, 1], 2, 2), false).unwrap(), 2);
        let tri = generate_cycle(3).unwrap();
        assert_eq!(edges_cut(&tri, &state_from(&[0, 1, 1], 2, 2), false).unwrap(), 2);
    }

    #[test]
    fn cut_with_multiplicity() {
        let g = Graph::from_edges(3, [(0, 1, 3), (1, 2, 1)]).unwrap();
        let s = state_from(&[0, 1, 1], 2, 3);
        assert_eq!(edges_cut(&g, &s, false).unwrap(), 1);
        assert_eq!(edges_cut(&g, &s, true).unwrap(), 3);
    }

    #[test]
    fn cut_needs_full_assignment() {
        let g = generate_cycle(3).unwrap();
        let mut s = PartitionState::new(3, 2, 3);
        s.assign(0, 0).unwrap();
        assert!(matches!(edges_cut(&g, &s, false), Err(Error::Unassigned(1))));
    }

    #[test]
    fn recovery_values() {
        let g = Graph::from_edges(8, std::iter::empty()).unwrap().with_labels(vec![0, 0, 0, 0, 1, 1, 1, 1]).unwrap();
        let perfect = recovery_vector(&g, &state_from(&[0, 0, 0, 0, 1, 1, 1, 1], 2, 4)).unwrap();
        assert_eq!(perfect, vec![1.0, 1.0]);
        assert_eq!(euclidean_error(&perfect), 0.0);
        let split = recovery_vector(&g, &state_from(&[0, 0, 1, 1, 0, 0, 0, 1], 2, 5)).unwrap();
        assert_eq!(split, vec![0.5, 0.75]);
        let unlabelled = generate_cycle(4).unwrap();
        assert!(matches!(recovery_vector(&unlabelled, &state_from(&[0, 0, 1, 1], 2, 2)), Err(Error::MissingLabels)));
    }

    #[test]
    fn euclidean_values() {
        assert_eq!(euclidean_error(&[1.0; 10]), 0.0);
        assert!((euclidean_error(&[0.9; 100]) - 1.0).abs() < 1e-12);
        assert!((euclidean_error(&[0.125; 64]) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn full_fraction_values() {
        assert_eq!(full_partition_fraction(&state_from(&[0, 1], 2, 2)), 0.0);
        assert_eq!(full_partition_fraction(&state_from(&[0, 0, 1, 1], 2, 2)), 1.0);
        let quarter = state_from(&[0, 0, 1, 1, 2, 3], 8, 2);
        assert_eq!(full_partition_fraction(&quarter), 0.25);
    }

    #[test]
    fn run_metrics_row() {
        let g = generate_cycle(4).unwrap();
        let m = RunMetrics::compute(&g, &state_from(&[0, 0, 1, 1], 2, 2)).unwrap();
        assert_eq!(m.csv_row(), "2,0.5,,2,1,2;2");
        assert_eq!(RunMetrics::CSV_HEADER.split(',').count(), m.csv_row().split(',').count());
    }
}
