//! One-pass streaming partitioners.
//!
//! Every algorithm scores partition `i` by the number of already-placed
//! neighbors it holds (counted with multiplicity). Full partitions score 0.
//! When every score is 0 the vertex goes to a least-loaded non-full
//! partition chosen uniformly at random; otherwise the algorithm's rule
//! picks among the scored partitions.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{stream_events, Graph, StreamEvent, StreamOrder};
use crate::rng::{self, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Uniform among the partitions with the highest score.
    ArgmaxGreedy,
    /// Partition `i` with probability `S_i / sum S`.
    ProportionalGreedy,
    /// Partition `i` with probability `S_i^gamma / sum S^gamma`.
    GammaGreedy,
    /// Arg max of `S_i (1 - load_i / C)`.
    WeightedArgmax,
    /// Proportional to `S_i (1 - load_i / C)`.
    WeightedProportional,
    /// Uniform among non-full partitions; ignores edges.
    RandomBaseline,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::ArgmaxGreedy,
        Algorithm::ProportionalGreedy,
        Algorithm::GammaGreedy,
        Algorithm::WeightedArgmax,
        Algorithm::WeightedProportional,
        Algorithm::RandomBaseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ArgmaxGreedy => "argmax_greedy",
            Algorithm::ProportionalGreedy => "proportional_greedy",
            Algorithm::GammaGreedy => "gamma_greedy",
            Algorithm::WeightedArgmax => "weighted_argmax",
            Algorithm::WeightedProportional => "weighted_proportional",
            Algorithm::RandomBaseline => "random_baseline",
        }
    }

    fn is_weighted(self) -> bool {
        matches!(self, Algorithm::WeightedArgmax | Algorithm::WeightedProportional)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alg = match s {
            "argmax" | "argmax_greedy" => Algorithm::ArgmaxGreedy,
            "proportional" | "proportional_greedy" => Algorithm::ProportionalGreedy,
            "gamma" | "gamma_greedy" => Algorithm::GammaGreedy,
            "ldg" | "weighted_argmax" => Algorithm::WeightedArgmax,
            "lrg" | "weighted_proportional" => Algorithm::WeightedProportional,
            "random" | "random_baseline" => Algorithm::RandomBaseline,
            other => return Err(Error::param(format!("unknown algorithm `{other}`"))),
        };
        Ok(alg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionerConfig {
    pub algorithm: Algorithm,
    /// Score exponent, used by [`Algorithm::GammaGreedy`] only.
    pub gamma: f64,
    pub k: usize,
    /// Capacity slack: `C = ceil((1 + epsilon) n / k)`.
    pub epsilon: f64,
    pub seed: u64,
}

impl PartitionerConfig {
    pub fn new(algorithm: Algorithm, k: usize, epsilon: f64, seed: u64) -> Self {
        Self { algorithm, gamma: 1.0, k, epsilon, seed }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::param("k must be at least 1"));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::param(format!("epsilon {} must be >= 0", self.epsilon)));
        }
        if self.algorithm == Algorithm::GammaGreedy && !(self.gamma > 0.0) {
            return Err(Error::param("gamma_greedy requires gamma > 0"));
        }
        Ok(())
    }
}

/// `ceil((1 + epsilon) n / k)`, ignoring float noise below 1e-9.
pub fn capacity(n: usize, k: usize, epsilon: f64) -> u64 {
    let exact = (1.0 + epsilon) * n as f64 / k as f64;
    ((exact - 1e-9).ceil().max(0.0) as u64).max(1)
}

const UNASSIGNED: u32 = u32::MAX;

/// The evolving output of a streaming partitioner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionState {
    capacity: u64,
    loads: Vec<u64>,
    members: Vec<Vec<u32>>,
    assignment: Vec<u32>,
    placed: usize,
}

impl PartitionState {
    pub fn new(n: usize, k: usize, capacity: u64) -> Self {
        Self {
            capacity,
            loads: vec![0; k],
            members: vec![Vec::new(); k],
            assignment: vec![UNASSIGNED; n],
            placed: 0,
        }
    }

    pub fn for_config(n: usize, config: &PartitionerConfig) -> Self {
        Self::new(n, config.k, capacity(n, config.k, config.epsilon))
    }

    pub fn k(&self) -> usize {
        self.loads.len()
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn loads(&self) -> &[u64] {
        &self.loads
    }

    pub fn members(&self, partition: usize) -> &[u32] {
        &self.members[partition]
    }

    pub fn placed(&self) -> usize {
        self.placed
    }

    pub fn is_full(&self, partition: usize) -> bool {
        self.loads[partition] >= self.capacity
    }

    pub fn partition_of(&self, v: u32) -> Option<usize> {
        match self.assignment[v as usize] {
            UNASSIGNED => None,
            p => Some(p as usize),
        }
    }

    /// Every vertex's partition, or the first unassigned vertex.
    pub fn assignment(&self) -> Result<Vec<usize>> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(v, &p)| if p == UNASSIGNED { Err(Error::Unassigned(v as u32)) } else { Ok(p as usize) })
            .collect()
    }

    pub fn assign(&mut self, v: u32, partition: usize) -> Result<()> {
        if self.assignment[v as usize] != UNASSIGNED {
            return Err(Error::AlreadyAssigned(v));
        }
        if self.is_full(partition) {
            return Err(Error::AllPartitionsFull { capacity: self.capacity });
        }
        self.assignment[v as usize] = partition as u32;
        self.loads[partition] += 1;
        self.members[partition].push(v);
        self.placed += 1;
        Ok(())
    }

    /// Indices of the non-full partitions with the smallest load.
    pub fn least_loaded(&self) -> Vec<usize> {
        let min = (0..self.k()).filter(|&i| !self.is_full(i)).map(|i| self.loads[i]).min();
        match min {
            None => Vec::new(),
            Some(m) => (0..self.k()).filter(|&i| !self.is_full(i) && self.loads[i] == m).collect(),
        }
    }

    /// Text export: a summary line then `v partition` per vertex (1-based).
    pub fn write_assignment<W: Write>(&self, mut out: W) -> Result<()> {
        let loads: Vec<String> = self.loads.iter().map(|l| l.to_string()).collect();
        writeln!(out, "# k={} C={} loads={}", self.k(), self.capacity, loads.join(","))?;
        for (v, p) in self.assignment()?.into_iter().enumerate() {
            writeln!(out, "{} {}", v + 1, p + 1)?;
        }
        Ok(())
    }
}

/// Per-partition scores for one arrival.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreVector {
    /// Neighbor multiplicity per partition; 0 for full partitions.
    pub counts: Vec<u64>,
    /// `counts[i] * (C - load_i)` for the load-weighted algorithms, which is
    /// the weighted score scaled by `C`. `None` otherwise.
    pub scaled: Option<Vec<u64>>,
    pub capacity: u64,
}

impl ScoreVector {
    /// Score as used by the algorithm, as a real number.
    pub fn value(&self, i: usize) -> f64 {
        match &self.scaled {
            Some(s) => s[i] as f64 / self.capacity as f64,
            None => self.counts[i] as f64,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|i| self.value(i)).collect()
    }

    /// Integer keys that order partitions exactly like [`Self::value`].
    fn keys(&self) -> &[u64] {
        self.scaled.as_deref().unwrap_or(&self.counts)
    }

    pub fn all_zero(&self) -> bool {
        self.keys().iter().all(|&s| s == 0)
    }
}

pub fn compute_scores(event: &StreamEvent, state: &PartitionState, config: &PartitionerConfig) -> ScoreVector {
    let mut counts = vec![0u64; state.k()];
    for &(u, m) in &event.revealed {
        if let Some(p) = state.partition_of(u) {
            counts[p] += m as u64;
        }
    }
    for (i, c) in counts.iter_mut().enumerate() {
        if state.is_full(i) {
            *c = 0;
        }
    }
    let scaled = config.algorithm.is_weighted().then(|| {
        counts
            .iter()
            .zip(&state.loads)
            .map(|(&c, &load)| c * state.capacity.saturating_sub(load))
            .collect()
    });
    ScoreVector { counts, scaled, capacity: state.capacity }
}

/// The placement rule resolved to a distribution over partitions.
#[derive(Debug, Clone, PartialEq)]
pub enum Choice {
    Uniform(Vec<usize>),
    Integer(Vec<u64>),
    Real(Vec<f64>),
}

impl Choice {
    pub fn probabilities(&self, k: usize) -> Vec<f64> {
        let mut probs = vec![0.0; k];
        match self {
            Choice::Uniform(set) => set.iter().for_each(|&i| probs[i] = 1.0 / set.len() as f64),
            Choice::Integer(w) => {
                let total: u64 = w.iter().sum();
                probs.iter_mut().zip(w).for_each(|(p, &x)| *p = x as f64 / total as f64);
            }
            Choice::Real(w) => {
                let total: f64 = w.iter().sum();
                probs.iter_mut().zip(w).for_each(|(p, &x)| *p = x / total);
            }
        }
        probs
    }

    pub fn sample(&self, rng: &mut Rng) -> usize {
        match self {
            Choice::Uniform(set) if set.len() == 1 => set[0],
            Choice::Uniform(set) => set[rng.random_range(0..set.len())],
            Choice::Integer(w) => {
                let total: u64 = w.iter().sum();
                let mut r = rng.random_range(0..total);
                for (i, &x) in w.iter().enumerate() {
                    if r < x {
                        return i;
                    }
                    r -= x;
                }
                unreachable!("r < total")
            }
            Choice::Real(w) => {
                let total: f64 = w.iter().sum();
                let mut r = rng.random::<f64>() * total;
                let mut last = 0;
                for (i, &x) in w.iter().enumerate() {
                    if x > 0.0 {
                        if r < x {
                            return i;
                        }
                        r -= x;
                        last = i;
                    }
                }
                last
            }
        }
    }
}

/// Resolve the placement distribution for the given scores.
pub fn decide(scores: &ScoreVector, state: &PartitionState, config: &PartitionerConfig) -> Result<Choice> {
    let fallback = || {
        let set = state.least_loaded();
        if set.is_empty() {
            Err(Error::AllPartitionsFull { capacity: state.capacity })
        } else {
            Ok(Choice::Uniform(set))
        }
    };
    if config.algorithm == Algorithm::RandomBaseline {
        let open: Vec<usize> = (0..state.k()).filter(|&i| !state.is_full(i)).collect();
        if open.is_empty() {
            return Err(Error::AllPartitionsFull { capacity: state.capacity });
        }
        return Ok(Choice::Uniform(open));
    }
    if scores.all_zero() {
        return fallback();
    }
    let keys = scores.keys();
    let choice = match config.algorithm {
        Algorithm::ArgmaxGreedy | Algorithm::WeightedArgmax => {
            let best = *keys.iter().max().expect("k >= 1");
            Choice::Uniform((0..keys.len()).filter(|&i| keys[i] == best).collect())
        }
        Algorithm::ProportionalGreedy | Algorithm::WeightedProportional => Choice::Integer(keys.to_vec()),
        Algorithm::GammaGreedy => {
            Choice::Real(keys.iter().map(|&s| if s == 0 { 0.0 } else { (s as f64).powf(config.gamma) }).collect())
        }
        Algorithm::RandomBaseline => unreachable!(),
    };
    Ok(choice)
}

/// Score, choose and record the placement of one arrival.
pub fn place_vertex(
    event: &StreamEvent,
    state: &mut PartitionState,
    config: &PartitionerConfig,
    rng: &mut Rng,
) -> Result<usize> {
    let scores = compute_scores(event, state, config);
    let target = decide(&scores, state, config)?.sample(rng);
    state.assign(event.vertex, target)?;
    Ok(target)
}

/// Stream the whole graph through the configured partitioner.
pub fn run_partitioner(graph: &Graph, order: &StreamOrder, config: &PartitionerConfig) -> Result<PartitionState> {
    config.validate()?;
    let mut state = PartitionState::for_config(graph.n(), config);
    let mut rng = rng::seeded(config.seed);
    for event in stream_events(graph, order)? {
        place_vertex(&event, &mut state, config, &mut rng)?;
    }
    Ok(state)
}

/// Hash-style baseline: every vertex uniformly among non-full partitions.
pub fn random_baseline(graph: &Graph, order: &StreamOrder, k: usize, epsilon: f64, seed: u64) -> Result<PartitionState> {
    run_partitioner(graph, order, &PartitionerConfig::new(Algorithm::RandomBaseline, k, epsilon, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_cycle, generate_gnp, Graph};

    fn event(vertex: u32, revealed: &[u32]) -> StreamEvent {
        StreamEvent {
            vertex,
            revealed: revealed.iter().map(|&u| (u, 1)).collect(),
            full_degree: revealed.len() as u64,
        }
    }

    /// State with `loads` where partition `i` holds vertices listed in `groups[i]`.
    fn state_with(n: usize, capacity: u64, groups: &[&[u32]]) -> PartitionState {
        let mut s = PartitionState::new(n, groups.len(), capacity);
        for (p, g) in groups.iter().enumerate() {
            for &v in *g {
                s.assign(v, p).unwrap();
            }
        }
        s
    }

    fn scores(counts: &[u64]) -> ScoreVector {
        ScoreVector { counts: counts.to_vec(), scaled: None, capacity: 100 }
    }

    fn cfg(alg: Algorithm, k: usize) -> PartitionerConfig {
        PartitionerConfig::new(alg, k, 0.0, 1)
    }

    #[test]
    fn capacity_is_ceiling() {
        assert_eq!(capacity(10, 2, 0.0), 5);
        assert_eq!(capacity(10, 3, 0.0), 4);
        assert_eq!(capacity(100, 8, 0.1), 14);
        assert_eq!(capacity(1000, 10, 0.1), 110);
    }

    #[test]
    fn scores_count_neighbors_per_partition() {
        let s = state_with(10, 5, &[&[0, 1], &[2]]);
        let sc = compute_scores(&event(3, &[0, 1, 2]), &s, &cfg(Algorithm::ArgmaxGreedy, 2));
        assert_eq!(sc.counts, vec![2, 1]);
    }

    #[test]
    fn scores_count_multiplicity() {
        let s = state_with(10, 5, &[&[0], &[1]]);
        let e = StreamEvent { vertex: 2, revealed: vec![(0, 3), (1, 1)], full_degree: 4 };
        assert_eq!(compute_scores(&e, &s, &cfg(Algorithm::ArgmaxGreedy, 2)).counts, vec![3, 1]);
    }

    #[test]
    fn full_partition_scores_zero() {
        let s = state_with(10, 2, &[&[0, 1], &[]]);
        let sc = compute_scores(&event(3, &[0, 1]), &s, &cfg(Algorithm::ArgmaxGreedy, 2));
        assert_eq!(sc.counts, vec![0, 0]);
        // falls back to the only non-full partition
        assert_eq!(decide(&sc, &s, &cfg(Algorithm::ArgmaxGreedy, 2)).unwrap(), Choice::Uniform(vec![1]));
    }

    #[test]
    fn weighted_scores() {
        // C = 8, loads (4, 2), S = (4, 4) -> (4 * 1/2, 4 * 3/4) = (2, 3)
        let s = state_with(20, 8, &[&[0, 1, 2, 3], &[4, 5]]);
        let e = StreamEvent {
            vertex: 9,
            revealed: vec![(0, 1), (1, 1), (2, 1), (3, 1), (4, 2), (5, 2)],
            full_degree: 8,
        };
        let sc = compute_scores(&e, &s, &cfg(Algorithm::WeightedArgmax, 2));
        assert_eq!(sc.counts, vec![4, 4]);
        assert_eq!(sc.values(), vec![2.0, 3.0]);
        let choice = decide(&sc, &s, &cfg(Algorithm::WeightedArgmax, 2)).unwrap();
        assert_eq!(choice, Choice::Uniform(vec![1]));
    }

    #[test]
    fn weighted_full_partition_reaches_zero() {
        let s = state_with(10, 2, &[&[0, 1], &[2]]);
        let sc = compute_scores(&event(3, &[0, 1, 2]), &s, &cfg(Algorithm::WeightedProportional, 2));
        assert_eq!(sc.scaled, Some(vec![0, 1]));
    }

    #[test]
    fn choice_distributions() {
        let s = state_with(10, 10, &[&[], &[]]);
        let probs = |alg, c: &[u64]| decide(&scores(c), &s, &cfg(alg, c.len())).unwrap().probabilities(c.len());
        assert_eq!(probs(Algorithm::ArgmaxGreedy, &[3, 1]), vec![1.0, 0.0]);
        assert_eq!(probs(Algorithm::ArgmaxGreedy, &[2, 2]), vec![0.5, 0.5]);
        assert_eq!(probs(Algorithm::ProportionalGreedy, &[3, 1]), vec![0.75, 0.25]);
    }

    #[test]
    fn zero_scores_pick_least_loaded() {
        let s = state_with(10, 10, &[&[0, 1], &[2]]);
        let c = decide(&scores(&[0, 0]), &s, &cfg(Algorithm::ProportionalGreedy, 2)).unwrap();
        assert_eq!(c, Choice::Uniform(vec![1]));
    }

    #[test]
    fn all_full_is_an_error() {
        let s = state_with(4, 2, &[&[0, 1], &[2, 3]]);
        assert!(matches!(
            decide(&scores(&[0, 0]), &s, &cfg(Algorithm::ArgmaxGreedy, 2)),
            Err(Error::AllPartitionsFull { capacity: 2 })
        ));
    }

    #[test]
    fn scale_invariance_of_choice() {
        let s = state_with(10, 10, &[&[], &[], &[]]);
        for alg in [Algorithm::ArgmaxGreedy, Algorithm::ProportionalGreedy] {
            for base in [[1u64, 2, 3], [5, 5, 0], [0, 7, 7]] {
                let p1 = decide(&scores(&base), &s, &cfg(alg, 3)).unwrap().probabilities(3);
                for c in [2u64, 3, 17] {
                    let scaled: Vec<u64> = base.iter().map(|x| x * c).collect();
                    let p2 = decide(&scores(&scaled), &s, &cfg(alg, 3)).unwrap().probabilities(3);
                    assert_eq!(p1, p2);
                }
            }
        }
    }

    #[test]
    fn gamma_one_equals_proportional() {
        let s = state_with(10, 10, &[&[], &[], &[], &[]]);
        for counts in [[1u64, 2, 3, 4], [0, 0, 9, 1], [5, 5, 5, 5], [0, 1, 0, 0]] {
            let prop = decide(&scores(&counts), &s, &cfg(Algorithm::ProportionalGreedy, 4)).unwrap();
            let gamma = decide(&scores(&counts), &s, &cfg(Algorithm::GammaGreedy, 4).with_gamma(1.0)).unwrap();
            let (a, b) = (prop.probabilities(4), gamma.probabilities(4));
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn argmax_tie_break_is_fair() {
        let s = state_with(10, 10, &[&[], &[]]);
        let choice = decide(&scores(&[2, 2]), &s, &cfg(Algorithm::ArgmaxGreedy, 2)).unwrap();
        let mut rng = rng::seeded(5);
        let ones = (0..10_000).filter(|_| choice.sample(&mut rng) == 0).count() as f64;
        assert!((ones - 5000.0).abs() <= 200.0, "{ones}");
    }

    #[test]
    fn proportional_sampling_frequency() {
        let s = state_with(10, 10, &[&[], &[]]);
        let choice = decide(&scores(&[3, 1]), &s, &cfg(Algorithm::ProportionalGreedy, 2)).unwrap();
        let mut rng = rng::seeded(6);
        let hits = (0..20_000).filter(|_| choice.sample(&mut rng) == 0).count() as f64;
        let sd = (20_000.0 * 0.75 * 0.25f64).sqrt();
        assert!((hits - 15_000.0).abs() <= 4.0 * sd);
    }

    #[test]
    fn empty_graph_balances_perfectly() {
        let g = generate_gnp(10, 0.0, false, 1).unwrap();
        let order = StreamOrder::identity(10);
        for alg in Algorithm::ALL {
            let st = run_partitioner(&g, &order, &PartitionerConfig::new(alg, 2, 0.0, 3)).unwrap();
            assert_eq!(st.capacity(), 5);
            if alg != Algorithm::RandomBaseline {
                assert_eq!(st.loads(), &[5, 5]);
            }
        }
    }

    #[test]
    fn triangle_hand_trace() {
        let g = generate_cycle(3).unwrap();
        // k=2, C=2 -> epsilon = 1/3
        let config = PartitionerConfig::new(Algorithm::ArgmaxGreedy, 2, 1.0 / 3.0, 11);
        let st = run_partitioner(&g, &StreamOrder::identity(3), &config).unwrap();
        assert_eq!(st.capacity(), 2);
        assert_eq!(st.partition_of(0), st.partition_of(1));
        assert_ne!(st.partition_of(0), st.partition_of(2));
        let mut loads = st.loads().to_vec();
        loads.sort();
        assert_eq!(loads, vec![1, 2]);
    }

    #[test]
    fn disjoint_triangles_are_kept_whole() {
        let g = Graph::from_edges(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]).unwrap();
        for seed in 0..20 {
            let st = run_partitioner(&g, &StreamOrder::identity(6), &PartitionerConfig::new(Algorithm::ArgmaxGreedy, 2, 0.0, seed)).unwrap();
            let a = st.assignment().unwrap();
            assert!(a[0] == a[1] && a[1] == a[2] && a[3] == a[4] && a[4] == a[5] && a[0] != a[3]);
        }
    }

    #[test]
    fn run_is_deterministic_and_total() {
        let g = generate_gnp(500, 0.02, false, 4).unwrap();
        let order = crate::graph::random_order(500, 8).unwrap();
        for alg in Algorithm::ALL {
            let config = PartitionerConfig::new(alg, 4, 0.05, 99).with_gamma(2.0);
            let a = run_partitioner(&g, &order, &config).unwrap();
            let b = run_partitioner(&g, &order, &config).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.placed(), 500);
            assert!(a.loads().iter().all(|&l| l <= a.capacity()));
            assert_eq!(a.loads().iter().sum::<u64>(), 500);
            let assignment = a.assignment().unwrap();
            for p in 0..4 {
                assert_eq!(a.members(p).len() as u64, a.loads()[p]);
                assert!(a.members(p).iter().all(|&v| assignment[v as usize] == p));
            }
        }
    }

    #[test]
    fn random_baseline_single_partition() {
        let g = generate_cycle(20).unwrap();
        let st = random_baseline(&g, &StreamOrder::identity(20), 1, 0.0, 3).unwrap();
        assert_eq!(st.loads(), &[20]);
    }

    #[test]
    fn config_validation() {
        assert!(PartitionerConfig::new(Algorithm::GammaGreedy, 2, 0.0, 1).with_gamma(0.0).validate().is_err());
        assert!(PartitionerConfig::new(Algorithm::ArgmaxGreedy, 2, -0.1, 1).validate().is_err());
        assert!(PartitionerConfig::new(Algorithm::ArgmaxGreedy, 0, 0.0, 1).validate().is_err());
        assert!("ldg".parse::<Algorithm>().is_ok());
        assert!("nope".parse::<Algorithm>().is_err());
    }

    #[test]
    fn assignment_export() {
        let g = generate_cycle(4).unwrap();
        let st = run_partitioner(&g, &StreamOrder::identity(4), &PartitionerConfig::new(Algorithm::ArgmaxGreedy, 2, 0.0, 1)).unwrap();
        let mut buf = Vec::new();
        st.write_assignment(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# k=2 C=2 loads="));
        assert_eq!(text.lines().count(), 5);
    }
}
