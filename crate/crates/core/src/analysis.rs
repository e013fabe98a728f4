//! Closed-form bounds and thresholds for greedy streaming partitioning on
//! planted-partition graphs.
//!
//! Logarithms default to the natural log; every calculator that takes a
//! logarithm accepts a [`LogBase`] for sensitivity runs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Constant in the ball-count estimate for feedback exponent 2, used by
/// [`appendix_q_bound`].
pub const APPENDIX_BALL_CONSTANT: f64 = 9127.0;

/// Exponent on `0.1 k` in the same estimate.
pub const APPENDIX_K_EXPONENT: f64 = 2.4;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Natural => "e",
            LogBase::Two => "2",
            LogBase::Ten => "10",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "ln" | "natural" => Ok(LogBase::Natural),
            "2" => Ok(LogBase::Two),
            "10" => Ok(LogBase::Ten),
            other => Err(Error::param(format!("unknown log base `{other}`"))),
        }
    }
}

/// `sum_{t=1}^{n} ((n-t)/n) ((n-t-1)/(n-1))`, the closed form used for the
/// expected number of random-order cycle arrivals that reveal no edge.
///
/// This equals `(n-2)/3`. The exact expectation for a random arrival order on
/// an `n`-cycle is `n/3`; both are `n/3` to leading order.
pub fn expected_no_edge_arrivals(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::param("cycle needs n >= 3"));
    }
    let nf = n as f64;
    let sum = (1..=n)
        .map(|t| {
            let rest = (n - t) as f64;
            (rest / nf) * ((rest - 1.0).max(0.0) / (nf - 1.0))
        })
        .sum();
    Ok(sum)
}

/// `sum_{i=lo}^{j} C(j,i) a^i b^(j-i)` accumulated in log space.
fn binomial_upper_tail(j: u64, lo: u64, a: f64, b: f64) -> f64 {
    if lo > j {
        return 0.0;
    }
    if b == 0.0 {
        return 1.0;
    }
    if a == 0.0 {
        return 0.0;
    }
    let (la, lb) = (a.ln(), b.ln());
    // log term for i = 0, then the ratio recurrence up to lo
    let mut log_term = j as f64 * lb;
    for i in 1..=lo {
        log_term += ((j - i + 1) as f64 / i as f64).ln() + la - lb;
    }
    let mut terms = Vec::with_capacity((j - lo + 1) as usize);
    terms.push(log_term);
    for i in lo + 1..=j {
        log_term += ((j - i + 1) as f64 / i as f64).ln() + la - lb;
        terms.push(log_term);
    }
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (max.exp() * terms.iter().map(|t| (t - max).exp()).sum::<f64>()).min(1.0)
}

fn check_advantage(j: u64, delta: f64) -> Result<()> {
    if j == 0 {
        return Err(Error::param("j must be at least 1"));
    }
    if !(0.0..0.5).contains(&delta) {
        return Err(Error::param(format!("delta {delta} must lie in [0, 1/2)")));
    }
    Ok(())
}

/// Probability that the favored bin receives strictly more of `j` edges when
/// each edge lands there with probability `1/2 + delta`.
pub fn lemma2_exact_prob(j: u64, delta: f64) -> Result<f64> {
    check_advantage(j, delta)?;
    Ok(binomial_upper_tail(j, j / 2 + 1, 0.5 + delta, 0.5 - delta))
}

/// Same event for the disadvantaged bin.
pub fn lemma2_mirrored_prob(j: u64, delta: f64) -> Result<f64> {
    check_advantage(j, delta)?;
    Ok(binomial_upper_tail(j, j / 2 + 1, 0.5 - delta, 0.5 + delta))
}

/// Win probability of the favored bin with ties excluded.
pub fn lemma2_tie_excluded_odds(j: u64, delta: f64) -> Result<f64> {
    let win = lemma2_exact_prob(j, delta)?;
    let lose = lemma2_mirrored_prob(j, delta)?;
    Ok(win / (win + lose))
}

/// `a^g / (a^g + b^g)` with `a = 1/2 + delta`, `b = 1/2 - delta`,
/// `g = floor(j/2) + 1`: the attachment probability of a two-bin urn with
/// exponent `g` at the same load split.
pub fn lemma2_lower_bound(j: u64, delta: f64) -> Result<f64> {
    if (delta - 0.5).abs() < f64::EPSILON {
        return Err(Error::param("delta = 1/2 is degenerate"));
    }
    check_advantage(j, delta)?;
    let g = (j / 2 + 1) as i32;
    let (a, b) = ((0.5 + delta).powi(g), (0.5 - delta).powi(g));
    Ok(a / (a + b))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition {
    pub holds: bool,
    /// Positive exactly when the condition holds (zero counts as holding for
    /// non-strict conditions).
    pub margin: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl Condition {
    fn strict(lhs: f64, rhs: f64) -> Self {
        Self { holds: lhs > rhs, margin: lhs - rhs, lhs, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeCheck {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub p: f64,
    pub q: f64,
    pub n0: f64,
    pub cluster_size: usize,
    pub log_base: LogBase,
    /// `p > 2 log n / |C_i|`
    pub density: Condition,
    /// `p > 3 (k + sqrt(k) + 1) l q`
    pub separation: Condition,
    /// `l > k log k`
    pub cluster_count: Condition,
    /// `q <= q_bound(k, l, n0)`. Stated with a loose constant.
    pub q_bound: Condition,
}

impl RegimeCheck {
    /// The density, separation and cluster-count conditions. The q-bound is
    /// reported separately since its constant is far from tight.
    pub fn core_ok(&self) -> bool {
        self.density.holds && self.separation.holds && self.cluster_count.holds
    }

    pub fn all_ok(&self) -> bool {
        self.core_ok() && self.q_bound.holds
    }
}

/// Evaluate the recovery regime for `l` equal clusters.
pub fn regime_check(n: usize, k: usize, l: usize, p: f64, q: f64, n0: f64, base: LogBase) -> Result<RegimeCheck> {
    if l == 0 || n % l != 0 {
        return Err(Error::param(format!("n={n} does not split into {l} equal clusters")));
    }
    if k < 2 {
        return Err(Error::param("k must be at least 2"));
    }
    let cluster_size = n / l;
    let kf = k as f64;
    let density = Condition::strict(p, 2.0 * base.log(n as f64) / cluster_size as f64);
    let separation = Condition::strict(p, 3.0 * (kf + kf.sqrt() + 1.0) * l as f64 * q);
    let cluster_count = Condition::strict(l as f64, kf * base.log(kf));
    let bound = appendix_q_bound(k, l, n0, base)?;
    let q_bound = Condition { holds: q <= bound, margin: bound - q, lhs: q, rhs: bound };
    Ok(RegimeCheck {
        n,
        k,
        l,
        p,
        q,
        n0,
        cluster_size,
        log_base: base,
        density,
        separation,
        cluster_count,
        q_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceParams {
    /// Feedback exponent, > 1.
    pub lambda: f64,
    /// Initial separation between the two bins, in (0,1).
    pub epsilon0: f64,
    /// Target dominance gap, in (0,1).
    pub delta: f64,
    /// Balls in the system when the separation is measured.
    pub n0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceBalls {
    /// Doublings to reach all-but-0.1 dominance.
    pub x: f64,
    /// Further doublings to reach all-but-delta dominance; 0 when delta >= 0.1.
    pub z: f64,
    /// `2^(x+z) n0`.
    pub balls: f64,
}

/// Balls after which one of two feedback bins is all-but-`delta` dominant.
pub fn convergence_balls(params: &ConvergenceParams) -> Result<ConvergenceBalls> {
    let ConvergenceParams { lambda, epsilon0, delta, n0 } = *params;
    if !(lambda > 1.0) {
        return Err(Error::param("lambda must be > 1"));
    }
    if !(epsilon0 > 0.0 && epsilon0 < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("epsilon0 and delta must lie in (0,1)"));
    }
    let growth = 1.0 + (lambda - 1.0) / (5.0 + 4.0 * (lambda - 1.0));
    let x = (0.4 / epsilon0).ln() / growth.ln();
    let z = ((0.1 / delta).ln() / (2.0 * lambda / (lambda + 1.0)).ln()).max(0.0);
    Ok(ConvergenceBalls { x, z, balls: (x + z).exp2() * n0 })
}

/// `n0 + 2 log k + log l`.
pub fn effective_n0(k: usize, l: usize, n0: f64, base: LogBase) -> f64 {
    n0 + 2.0 * base.log(k as f64) + base.log(l as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallEstimate {
    pub n0_effective: f64,
    /// `(2 lambda)^(1 / log2(5 lambda / (1 + 4 lambda)))`
    pub separation_factor: f64,
    /// `1 / log2(2 lambda / (lambda + 1))`
    pub k_exponent: f64,
    pub balls: f64,
}

/// The closed form with `epsilon0 = 1/(5 lambda)` and `delta = 1/k`:
/// `(2 lambda)^(1/log2(5 lambda/(1+4 lambda))) (0.1 k)^(1/log2(2 lambda/(lambda+1))) n0'`.
pub fn appendix_ball_estimate(lambda: f64, k: usize, l: usize, n0: f64, base: LogBase) -> Result<BallEstimate> {
    if !(lambda > 1.0) {
        return Err(Error::param("lambda must be > 1"));
    }
    let n0_effective = effective_n0(k, l, n0, base);
    let separation_factor = (2.0 * lambda).powf(1.0 / (5.0 * lambda / (1.0 + 4.0 * lambda)).log2());
    let k_exponent = 1.0 / (2.0 * lambda / (lambda + 1.0)).log2();
    let balls = separation_factor * (0.1 * k as f64).powf(k_exponent) * n0_effective;
    Ok(BallEstimate { n0_effective, separation_factor, k_exponent, balls })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Pairwise gap `delta` to k-bin dominance `gamma`.
    DeltaToGamma,
    GammaToDelta,
}

/// `gamma = delta / (delta + (1 - delta)/(k - 1))`
pub fn gamma_from_delta(delta: f64, k: usize) -> Result<f64> {
    check_unit(delta, k)?;
    Ok(delta / (delta + (1.0 - delta) / (k as f64 - 1.0)))
}

/// `delta = gamma / (k - 1 - (k - 2) gamma)`
pub fn delta_from_gamma(gamma: f64, k: usize) -> Result<f64> {
    check_unit(gamma, k)?;
    let kf = k as f64;
    let denom = kf - 1.0 - (kf - 2.0) * gamma;
    if denom == 0.0 {
        return Err(Error::param("k - 1 = (k - 2) gamma"));
    }
    Ok(gamma / denom)
}

pub fn gamma_delta_convert(value: f64, k: usize, direction: Direction) -> Result<f64> {
    match direction {
        Direction::DeltaToGamma => gamma_from_delta(value, k),
        Direction::GammaToDelta => delta_from_gamma(value, k),
    }
}

fn check_unit(x: f64, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::param("k must be at least 2"));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::param(format!("{x} must lie in (0,1)")));
    }
    Ok(())
}

/// `1 / (9127 n0' (0.1 k)^2.4)` with `n0' = n0 + 2 log k + log l`.
pub fn appendix_q_bound(k: usize, l: usize, n0: f64, base: LogBase) -> Result<f64> {
    if k < 2 || l < 2 || !(n0 >= 1.0) {
        return Err(Error::param("q bound needs k >= 2, l >= 2, n0 >= 1"));
    }
    Ok(q_bound_for_effective(k, effective_n0(k, l, n0, base)))
}

/// The q bound for an already-computed `n0'`.
pub fn q_bound_for_effective(k: usize, n0_effective: f64) -> f64 {
    1.0 / (APPENDIX_BALL_CONSTANT * n0_effective * (0.1 * k as f64).powf(APPENDIX_K_EXPONENT))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdInputs {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub q: f64,
    pub l: usize,
    pub cluster_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// Arrivals after which good edges beat `k` with the target probability.
    pub t_good: f64,
    /// Arrivals before which bad edges stay below 1; infinite when `q = 0`.
    pub t_bad: f64,
    pub feasible: bool,
}

impl Thresholds {
    fn new(t_good: f64, t_bad: f64) -> Self {
        Self { t_good, t_bad, feasible: t_good < t_bad }
    }
}

/// Thresholds at confidence `1 - delta`:
///
/// * `t_good = n/(p|C|) (k + L/2 + sqrt(k L + L^2/4))`
/// * `t_bad  = n/(q l |C|) (1 + L/2 - sqrt(L + L^2/4))`
///
/// with `L = log(1/delta)`. These solve `x - sqrt(L x) = k` and
/// `y + sqrt(L y) = 1` exactly.
pub fn appendix_t_thresholds(inputs: &ThresholdInputs, delta: f64, base: LogBase) -> Result<Thresholds> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta must lie in (0,1)"));
    }
    let ThresholdInputs { n, k, p, q, l, cluster_size } = *inputs;
    if !(p > 0.0 && p <= 1.0) || !(0.0..=1.0).contains(&q) || cluster_size == 0 {
        return Err(Error::param("need p in (0,1], q in [0,1], |C| >= 1"));
    }
    let big_l = base.log(1.0 / delta);
    let (nf, kf, c) = (n as f64, k as f64, cluster_size as f64);
    let t_good = nf / (p * c) * (kf + big_l / 2.0 + (kf * big_l + big_l * big_l / 4.0).sqrt());
    let t_bad = if q == 0.0 {
        f64::INFINITY
    } else {
        nf / (q * l as f64 * c) * (1.0 + big_l / 2.0 - (big_l + big_l * big_l / 4.0).sqrt())
    };
    Ok(Thresholds::new(t_good, t_bad))
}

/// Constant-probability thresholds with the rounded constants
/// `t_good = (k + sqrt(k+1)) n/(p|C|)` and `t_bad = ((3 - sqrt 5)/2) n/(q l |C|)`.
pub fn concentration_thresholds(inputs: &ThresholdInputs) -> Thresholds {
    let ThresholdInputs { n, k, p, q, l, cluster_size } = *inputs;
    let (nf, kf, c) = (n as f64, k as f64, cluster_size as f64);
    let t_good = (kf + (kf + 1.0).sqrt()) * nf / (p * c);
    let t_bad = if q == 0.0 { f64::INFINITY } else { 0.5 * (3.0 - 5f64.sqrt()) * nf / (q * l as f64 * c) };
    Thresholds::new(t_good, t_bad)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Separation {
    /// Required advantage `x` of the leading partition over one half.
    Finite { x: f64 },
    /// `p/(q l) > 2`: one bad edge can never overturn the good-edge arg max.
    Vacuous { ratio: f64 },
}

/// Positive root of `x^2 = (2 r^3 - r^4) / (4 r^4)` with `r = p/(q l)`.
pub fn appendix_x_separation(p: f64, q: f64, l: usize) -> Result<Separation> {
    let ratio = p / (q * l as f64);
    if !(ratio > 0.0) || !ratio.is_finite() {
        return Err(Error::param("p/(q l) must be positive and finite"));
    }
    let radicand = (2.0 * ratio.powi(3) - ratio.powi(4)) / (4.0 * ratio.powi(4));
    if radicand < 0.0 {
        Ok(Separation::Vacuous { ratio })
    } else {
        Ok(Separation::Finite { x: radicand.sqrt() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadRegime {
    /// `l >= k log k`: max load is `l/k + sqrt(2 (l/k) log k)`.
    Dense,
    /// `l < k log k`: the `log k / log log k` law governs instead.
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxLoadPrediction {
    pub bound: f64,
    pub regime: LoadRegime,
}

/// Predicted maximum bin load for `balls` thrown uniformly into `bins`.
pub fn max_load_prediction(balls: usize, bins: usize) -> Result<MaxLoadPrediction> {
    if balls == 0 || bins == 0 {
        return Err(Error::param("need at least one ball and one bin"));
    }
    let (l, k) = (balls as f64, bins as f64);
    let mean = l / k;
    let bound = mean + (2.0 * mean * k.ln()).sqrt();
    let regime = if l >= k * k.ln() { LoadRegime::Dense } else { LoadRegime::Sparse };
    Ok(MaxLoadPrediction { bound, regime })
}
