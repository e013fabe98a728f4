//! Finite Polya urns and the coupled generate-while-partitioning processes.
//!
//! In the coupled processes vertex `t` draws, for every partition `i`
//! independently, an edge count `E_i ~ Binomial(load_i, p)`. With no edges it
//! goes to a least-loaded partition; otherwise the arg max variant picks
//! uniformly among the maxima of `E` and the proportional variant picks `i`
//! with probability `E_i / sum E`. This is the law of the concrete streaming
//! partitioners run on a fresh G(n,p) graph in random order.

use std::io::Write;

use rand::Rng as _;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::partition::PartitionState;
use crate::rng::{self, Rng};

/// Bin loads of a finite Polya urn with attachment exponent `gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct UrnState {
    loads: Vec<u64>,
    gamma: f64,
    thrown: u64,
    initial: u64,
}

impl UrnState {
    /// `k` bins holding one ball each.
    pub fn uniform(k: usize, gamma: f64) -> Result<Self> {
        Self::new(vec![1; k], gamma)
    }

    pub fn new(loads: Vec<u64>, gamma: f64) -> Result<Self> {
        if loads.is_empty() {
            return Err(Error::param("urn needs at least one bin"));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::param(format!("gamma {gamma} must be a finite value >= 0")));
        }
        let initial = loads.iter().sum();
        Ok(Self { loads, gamma, thrown: 0, initial })
    }

    pub fn loads(&self) -> &[u64] {
        &self.loads
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Balls thrown since construction.
    pub fn thrown(&self) -> u64 {
        self.thrown
    }

    pub fn total(&self) -> u64 {
        self.initial + self.thrown
    }

    pub fn fractions(&self) -> Vec<f64> {
        let total = self.total() as f64;
        self.loads.iter().map(|&m| m as f64 / total).collect()
    }

    /// Attachment weight `m^gamma`; empty bins never receive balls.
    fn weight(&self, m: u64) -> f64 {
        if m == 0 {
            0.0
        } else {
            (m as f64).powf(self.gamma)
        }
    }

    /// Probability that the next ball lands in each bin.
    pub fn attachment_probabilities(&self) -> Result<Vec<f64>> {
        let weights: Vec<f64> = self.loads.iter().map(|&m| self.weight(m)).collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::EmptyUrn);
        }
        Ok(weights.into_iter().map(|w| w / total).collect())
    }

    /// Throw one ball; returns the bin it landed in.
    pub fn step(&mut self, rng: &mut Rng) -> Result<usize> {
        let weights: Vec<f64> = self.loads.iter().map(|&m| self.weight(m)).collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::EmptyUrn);
        }
        let mut r = rng.random::<f64>() * total;
        let mut bin = 0;
        for (i, &w) in weights.iter().enumerate() {
            if w > 0.0 {
                bin = i;
                if r < w {
                    break;
                }
                r -= w;
            }
        }
        self.loads[bin] += 1;
        self.thrown += 1;
        Ok(bin)
    }
}

/// Load snapshots taken every `stride` steps, plus the exact final state.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadTrajectory {
    pub stride: u64,
    /// `(step, loads)`; always starts at step 0 and ends at the last step.
    pub records: Vec<(u64, Vec<u64>)>,
}

impl LoadTrajectory {
    /// Snapshot stride used for a run of `steps` steps: `ceil(steps / 1000)`.
    pub fn stride_for(steps: u64) -> u64 {
        steps.div_ceil(1000).max(1)
    }

    fn new(steps: u64, initial: &[u64]) -> Self {
        Self { stride: Self::stride_for(steps), records: vec![(0, initial.to_vec())] }
    }

    fn observe(&mut self, step: u64, loads: &[u64], last: bool) {
        if step % self.stride == 0 || last {
            self.records.push((step, loads.to_vec()));
        }
    }

    pub fn final_loads(&self) -> &[u64] {
        &self.records.last().expect("trajectory has a record").1
    }

    /// CSV with columns `step,load_1..load_k`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let k = self.records[0].1.len();
        let header: Vec<String> = (1..=k).map(|i| format!("load_{i}")).collect();
        writeln!(out, "step,{}", header.join(","))?;
        for (step, loads) in &self.records {
            let row: Vec<String> = loads.iter().map(|l| l.to_string()).collect();
            writeln!(out, "{step},{}", row.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UrnRun {
    pub state: UrnState,
    pub trajectory: LoadTrajectory,
}

/// Throw `steps` balls into an urn starting from `initial`.
pub fn run_urn(initial: Vec<u64>, gamma: f64, steps: u64, seed: u64) -> Result<UrnRun> {
    let mut state = UrnState::new(initial, gamma)?;
    let mut trajectory = LoadTrajectory::new(steps, state.loads());
    let mut rng = rng::seeded(seed);
    for s in 1..=steps {
        state.step(&mut rng)?;
        trajectory.observe(s, state.loads(), s == steps);
    }
    Ok(UrnRun { state, trajectory })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoupledVariant {
    Argmax,
    Proportional,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoupledProcessConfig {
    /// Number of vertices (steps).
    pub n: usize,
    pub p: f64,
    pub k: usize,
    pub variant: CoupledVariant,
    pub seed: u64,
}

impl CoupledProcessConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::param(format!("probability {} outside [0,1]", self.p)));
        }
        if self.k < 2 {
            return Err(Error::param("coupled process needs k >= 2"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoupledRun {
    /// Vertex `t` is the `t`-th arrival; capacity is `n` (unconstrained).
    pub state: PartitionState,
    pub trajectory: LoadTrajectory,
}

fn binomial(rng: &mut Rng, trials: u64, p: f64) -> u64 {
    if trials == 0 || p <= 0.0 {
        0
    } else if p >= 1.0 {
        trials
    } else {
        Binomial::new(trials, p).expect("valid binomial").sample(rng)
    }
}

fn uniform_pick(rng: &mut Rng, set: &[usize]) -> usize {
    if set.len() == 1 {
        set[0]
    } else {
        set[rng.random_range(0..set.len())]
    }
}

pub fn run_coupled(config: &CoupledProcessConfig) -> Result<CoupledRun> {
    config.validate()?;
    let k = config.k;
    let mut state = PartitionState::new(config.n, k, config.n.max(1) as u64);
    let mut trajectory = LoadTrajectory::new(config.n as u64, state.loads());
    let mut rng = rng::seeded(config.seed);
    let mut edges = vec![0u64; k];
    let mut ties = Vec::with_capacity(k);
    for t in 0..config.n {
        for (e, &m) in edges.iter_mut().zip(state.loads()) {
            *e = binomial(&mut rng, m, config.p);
        }
        let total: u64 = edges.iter().sum();
        let target = if total == 0 {
            let min = *state.loads().iter().min().expect("k >= 2");
            ties.clear();
            ties.extend((0..k).filter(|&i| state.loads()[i] == min));
            uniform_pick(&mut rng, &ties)
        } else {
            match config.variant {
                CoupledVariant::Argmax => {
                    let best = *edges.iter().max().expect("k >= 2");
                    ties.clear();
                    ties.extend((0..k).filter(|&i| edges[i] == best));
                    uniform_pick(&mut rng, &ties)
                }
                CoupledVariant::Proportional => {
                    let mut r = rng.random_range(0..total);
                    let mut pick = 0;
                    for (i, &e) in edges.iter().enumerate() {
                        if r < e {
                            pick = i;
                            break;
                        }
                        r -= e;
                    }
                    pick
                }
            }
        };
        state.assign(t as u32, target)?;
        trajectory.observe(t as u64 + 1, state.loads(), t + 1 == config.n);
    }
    Ok(CoupledRun { state, trajectory })
}

/// Share of the largest bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceReport {
    /// Lowest-indexed bin among those with the maximum load.
    pub dominant_bin: Option<usize>,
    pub fraction: f64,
    /// `1 - fraction`.
    pub delta: f64,
}

pub fn dominance(loads: &[u64]) -> DominanceReport {
    let total: u64 = loads.iter().sum();
    if total == 0 {
        return DominanceReport { dominant_bin: None, fraction: 0.0, delta: 1.0 };
    }
    let (mut bin, mut best) = (0, loads[0]);
    for (i, &m) in loads.iter().enumerate().skip(1) {
        if m > best {
            bin = i;
            best = m;
        }
    }
    let fraction = best as f64 / total as f64;
    DominanceReport { dominant_bin: Some(bin), fraction, delta: 1.0 - fraction }
}

/// Largest and smallest load share.
pub fn max_min_fraction(loads: &[u64]) -> (f64, f64) {
    let total = loads.iter().sum::<u64>() as f64;
    let max = *loads.iter().max().unwrap_or(&0) as f64;
    let min = *loads.iter().min().unwrap_or(&0) as f64;
    (max / total, min / total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attachment_probabilities_follow_the_exponent() {
        let p = |loads: Vec<u64>, g: f64| UrnState::new(loads, g).unwrap().attachment_probabilities().unwrap();
        for g in [0.0, 0.5, 1.0, 3.0] {
            assert_eq!(p(vec![1, 1], g), vec![0.5, 0.5]);
        }
        assert_eq!(p(vec![3, 1], 1.0), vec![0.75, 0.25]);
        let sq = p(vec![3, 1], 2.0);
        assert!((sq[0] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn step_frequencies_match_probabilities() {
        let mut rng = rng::seeded(3);
        let trials = 20_000;
        let mut hits = 0;
        for _ in 0..trials {
            let mut urn = UrnState::new(vec![3, 1], 2.0).unwrap();
            if urn.step(&mut rng).unwrap() == 0 {
                hits += 1;
            }
        }
        let sd = (trials as f64 * 0.9 * 0.1).sqrt();
        assert!((hits as f64 - 18_000.0).abs() <= 4.0 * sd);
    }

    #[test]
    fn empty_urn_is_an_error() {
        let mut urn = UrnState::new(vec![0, 0], 1.0).unwrap();
        assert!(matches!(urn.step(&mut rng::seeded(1)), Err(Error::EmptyUrn)));
        assert!(UrnState::new(vec![], 1.0).is_err());
        assert!(UrnState::new(vec![1], -1.0).is_err());
    }

    #[test]
    fn ball_count_is_conserved() {
        let run = run_urn(vec![2, 0, 5], 1.5, 3000, 9).unwrap();
        assert_eq!(run.state.loads().iter().sum::<u64>(), 3007);
        assert_eq!(run.state.total(), 3007);
        assert_eq!(run.state.loads()[1], 0, "empty bins stay empty");
        assert_eq!(run.trajectory.stride, 3);
        assert_eq!(run.trajectory.records.first().unwrap().0, 0);
        assert_eq!(run.trajectory.records.last().unwrap().0, 3000);
        assert_eq!(run.trajectory.final_loads(), run.state.loads());
    }

    #[test]
    fn uniform_placement_when_gamma_is_zero() {
        let run = run_urn(vec![1, 1], 0.0, 100_000, 17).unwrap();
        let x = run.state.fractions()[0];
        let sd = (0.25f64 / 100_000.0).sqrt();
        assert!((x - 0.5).abs() <= 4.0 * sd, "{x}");
    }

    #[test]
    fn urn_is_deterministic() {
        assert_eq!(run_urn(vec![1; 3], 1.0, 500, 4).unwrap(), run_urn(vec![1; 3], 1.0, 500, 4).unwrap());
    }

    #[test]
    fn coupled_without_edges_balances() {
        for variant in [CoupledVariant::Argmax, CoupledVariant::Proportional] {
            let run = run_coupled(&CoupledProcessConfig { n: 10, p: 0.0, k: 2, variant, seed: 5 }).unwrap();
            assert_eq!(run.state.loads(), &[5, 5]);
        }
    }

    #[test]
    fn coupled_with_p_one_is_winner_take_all() {
        // E_i = load_i exactly, so the second vertex already follows the first
        // and the larger bin wins every later vertex.
        for seed in 0..20 {
            let run = run_coupled(&CoupledProcessConfig { n: 200, p: 1.0, k: 2, variant: CoupledVariant::Argmax, seed }).unwrap();
            assert_eq!(*run.state.loads().iter().max().unwrap(), 200);
        }
    }

    #[test]
    fn coupled_validation() {
        let bad = CoupledProcessConfig { n: 10, p: 1.5, k: 2, variant: CoupledVariant::Argmax, seed: 1 };
        assert!(run_coupled(&bad).is_err());
        let bad_k = CoupledProcessConfig { n: 10, p: 0.5, k: 1, variant: CoupledVariant::Argmax, seed: 1 };
        assert!(run_coupled(&bad_k).is_err());
    }

    #[test]
    fn dominance_reports() {
        let d = dominance(&[10, 0, 0]);
        assert_eq!((d.dominant_bin, d.fraction, d.delta), (Some(0), 1.0, 0.0));
        let d = dominance(&[5, 5]);
        assert_eq!((d.dominant_bin, d.fraction, d.delta), (Some(0), 0.5, 0.5));
        let d = dominance(&[90, 7, 3]);
        assert_eq!(d.dominant_bin, Some(0));
        assert!((d.fraction - 0.9).abs() < 1e-12 && (d.delta - 0.1).abs() < 1e-12);
        let d = dominance(&[1, 4, 4]);
        assert_eq!(d.dominant_bin, Some(1));
    }

    #[test]
    fn trajectory_csv() {
        let run = run_urn(vec![1, 1], 1.0, 3, 1).unwrap();
        let mut buf = Vec::new();
        run.trajectory.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "step,load_1,load_2");
        assert_eq!(lines[1], "0,1,1");
        assert_eq!(lines.len(), 5);
    }
}
