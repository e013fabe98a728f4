//! Graph instances, stream orders and the one-pass vertex stream.
//!
//! Vertices and cluster labels are 0-based in memory. The text formats
//! ([`Graph::write_edge_list`], [`StreamOrder::to_one_based`]) use 1-based ids.

use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::rng::{self, Rng};

/// Below this probability pair sampling switches from per-pair Bernoulli
/// draws to geometric skipping.
pub const SKIP_SAMPLING_THRESHOLD: f64 = 0.1;

/// Undirected graph in compressed adjacency form.
///
/// Each unordered pair is stored once per endpoint with an integer
/// multiplicity. The graph is immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    /// `None` when every multiplicity is 1.
    mult: Option<Vec<u32>>,
    labels: Option<Vec<u32>>,
    num_clusters: usize,
    edge_count: usize,
    total_multiplicity: u64,
    multi_edge: bool,
}

impl Graph {
    /// Build from an arbitrary list of `(u, v, multiplicity)` triples.
    /// Duplicate pairs are merged by summing multiplicities.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("graph needs at least one vertex"));
        }
        let mut list = Vec::new();
        for (u, v, m) in edges {
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::param(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if m == 0 {
                return Err(Error::param(format!("edge ({u},{v}) has multiplicity 0")));
            }
            list.push((u.min(v), u.max(v), m));
        }
        list.sort_unstable();
        let mut merged: Vec<(u32, u32, u32)> = Vec::with_capacity(list.len());
        for (u, v, m) in list {
            match merged.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += m,
                _ => merged.push((u, v, m)),
            }
        }
        let simple = merged.iter().all(|e| e.2 == 1);
        let pairs: Vec<(u32, u32)> = merged.iter().map(|e| (e.0, e.1)).collect();
        let mults = if simple {
            None
        } else {
            Some(merged.iter().map(|e| e.2).collect::<Vec<_>>())
        };
        Ok(Self::from_canonical(n, &pairs, mults.as_deref()))
    }

    /// `pairs` must be sorted, unique and have `u < v`.
    fn from_canonical(n: usize, pairs: &[(u32, u32)], mults: Option<&[u32]>) -> Self {
        let mut degree = vec![0usize; n + 1];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for d in &degree[..n] {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);

        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; acc];
        let mut mult = mults.map(|_| vec![0u32; acc]);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            for (a, b) in [(u, v), (v, u)] {
                let slot = fill[a as usize];
                targets[slot] = b;
                if let (Some(out), Some(src)) = (mult.as_mut(), mults) {
                    out[slot] = src[i];
                }
                fill[a as usize] += 1;
            }
        }
        let total_multiplicity = mults.map_or(pairs.len() as u64, |m| m.iter().map(|&x| x as u64).sum());
        Graph {
            offsets,
            targets,
            mult,
            labels: None,
            num_clusters: 0,
            edge_count: pairs.len(),
            total_multiplicity,
            multi_edge: false,
        }
    }

    /// Attach 0-based cluster labels. Ids must cover `0..l` contiguously.
    pub fn with_labels(mut self, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::param(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        let l = labels.iter().max().map_or(0, |&m| m as usize + 1);
        let mut seen = vec![false; l];
        for &c in &labels {
            seen[c as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::param("cluster ids are not contiguous"));
        }
        self.labels = Some(labels);
        self.num_clusters = l;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of distinct undirected pairs.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sum of multiplicities over distinct pairs.
    pub fn total_multiplicity(&self) -> u64 {
        self.total_multiplicity
    }

    /// Whether the graph came from a generator in multi-edge mode.
    pub fn is_multi_edge(&self) -> bool {
        self.multi_edge
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    pub fn num_clusters(&self) -> usize {
        self.num_clusters
    }

    /// `(neighbor, multiplicity)` pairs of `v`.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        let range = self.offsets[v as usize]..self.offsets[v as usize + 1];
        let mult = self.mult.as_deref();
        range.map(move |i| (self.targets[i], mult.map_or(1, |m| m[i])))
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    /// Degree counted with multiplicity.
    pub fn weighted_degree(&self, v: u32) -> u64 {
        match &self.mult {
            None => self.degree(v) as u64,
            Some(m) => m[self.offsets[v as usize]..self.offsets[v as usize + 1]]
                .iter()
                .map(|&x| x as u64)
                .sum(),
        }
    }

    pub fn multiplicity(&self, u: u32, v: u32) -> u32 {
        let range = self.offsets[u as usize]..self.offsets[u as usize + 1];
        match self.targets[range.clone()].binary_search(&v) {
            Ok(i) => self.mult.as_ref().map_or(1, |m| m[range.start + i]),
            Err(_) => 0,
        }
    }

    /// Each undirected pair once, with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, m)| (u, v, m))
        })
    }

    /// Write the edge-list text format.
    ///
    /// ```text
    /// n l
    /// u v mult        (one line per pair, u < v, 1-based)
    /// label v c       (only when labelled, 1-based)
    /// ```
    ///
    /// `l` is 0 for an unlabelled graph.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.n(), self.num_clusters)?;
        for (u, v, m) in self.edges() {
            writeln!(out, "{} {} {}", u + 1, v + 1, m)?;
        }
        if let Some(labels) = &self.labels {
            for (v, &c) in labels.iter().enumerate() {
                writeln!(out, "label {} {}", v + 1, c + 1)?;
            }
        }
        Ok(())
    }

    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut labels: Vec<Option<u32>> = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let parse_err = |msg: &str| Error::Parse { line: lineno, msg: msg.to_string() };
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err("expected an integer"));
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(parse_err("header must be `n l`"));
                    }
                    let n = num(fields[0])?;
                    header = Some((n, num(fields[1])?));
                    labels = vec![None; n];
                }
                Some((n, l)) => {
                    if fields[0] == "label" {
                        if fields.len() != 3 {
                            return Err(parse_err("label line must be `label v c`"));
                        }
                        let (v, c) = (num(fields[1])?, num(fields[2])?);
                        if v == 0 || v > n || c == 0 || c > l {
                            return Err(parse_err("label out of range"));
                        }
                        labels[v - 1] = Some((c - 1) as u32);
                    } else {
                        if fields.len() != 3 {
                            return Err(parse_err("edge line must be `u v mult`"));
                        }
                        let (u, v, m) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
                        if u == 0 || v == 0 || u > n || v > n {
                            return Err(parse_err("vertex out of range"));
                        }
                        edges.push(((u - 1) as u32, (v - 1) as u32, m as u32));
                    }
                }
            }
        }
        let (n, l) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        let graph = Graph::from_edges(n, edges)?;
        if l == 0 {
            return Ok(graph);
        }
        let labels: Option<Vec<u32>> = labels.into_iter().collect();
        let labels = labels.ok_or(Error::Parse { line: 0, msg: "some vertices have no label".into() })?;
        let graph = graph.with_labels(labels)?;
        if graph.num_clusters != l {
            return Err(Error::Parse { line: 1, msg: format!("header declares {l} clusters") });
        }
        Ok(graph)
    }
}

/// Two-value planted partition: intra-cluster probability `p`, inter-cluster `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedParams {
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub sizes: Vec<usize>,
}

impl PlantedParams {
    /// `l` clusters of equal size; `n` must be divisible by `l`.
    pub fn equal(n: usize, l: usize, p: f64, q: f64) -> Result<Self> {
        if l == 0 || n % l != 0 {
            return Err(Error::param(format!("n={n} is not divisible into {l} equal clusters")));
        }
        Ok(Self { n, p, q, sizes: vec![n / l; l] })
    }

    pub fn l(&self) -> usize {
        self.sizes.len()
    }

    pub fn validate(&self) -> Result<()> {
        check_probability(self.p)?;
        check_probability(self.q)?;
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::param("every cluster needs at least one vertex"));
        }
        let total: usize = self.sizes.iter().sum();
        if total != self.n {
            return Err(Error::param(format!("cluster sizes sum to {total}, expected n={}", self.n)));
        }
        Ok(())
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(format!("probability {p} outside [0,1]")))
    }
}

/// Call `hit(i)` for each `i` in `0..len` independently with probability `p`.
fn sample_range(rng: &mut Rng, len: usize, p: f64, mut hit: impl FnMut(usize)) {
    if len == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        (0..len).for_each(hit);
    } else if p < SKIP_SAMPLING_THRESHOLD {
        let skip = Geometric::new(p).expect("p in (0,1)");
        let mut pos: u64 = 0;
        loop {
            pos = pos.saturating_add(skip.sample(rng));
            if pos >= len as u64 {
                break;
            }
            hit(pos as usize);
            pos += 1;
        }
    } else {
        for i in 0..len {
            if rng.random::<f64>() < p {
                hit(i);
            }
        }
    }
}

/// Erdős–Rényi G(n,p). Simple in both modes; `multi_edge` only tags the graph.
pub fn generate_gnp(n: usize, p: f64, multi_edge: bool, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("n must be at least 1"));
    }
    check_probability(p)?;
    let mut rng = rng::seeded(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        sample_range(&mut rng, n - u - 1, p, |i| pairs.push((u as u32, (u + 1 + i) as u32)));
    }
    let mut g = Graph::from_canonical(n, &pairs, None);
    g.multi_edge = multi_edge;
    Ok(g)
}

/// Planted partition graph. Cluster `c` holds a contiguous block of vertices
/// in the order given by `sizes`.
pub fn generate_planted(params: &PlantedParams, seed: u64) -> Result<Graph> {
    params.validate()?;
    let n = params.n;
    let mut rng = rng::seeded(seed);
    let mut labels = Vec::with_capacity(n);
    let mut ends = Vec::with_capacity(params.l());
    for (c, &s) in params.sizes.iter().enumerate() {
        labels.extend(std::iter::repeat_n(c as u32, s));
        ends.push(labels.len());
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        let end = ends[labels[u] as usize];
        let base = u + 1;
        sample_range(&mut rng, end - base, params.p, |i| pairs.push((u as u32, (base + i) as u32)));
        sample_range(&mut rng, n - end, params.q, |i| pairs.push((u as u32, (end + i) as u32)));
    }
    Graph::from_canonical(n, &pairs, None).with_labels(labels)
}

/// Cycle `0-1-2-…-(n-1)-0`.
pub fn generate_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param("a cycle needs at least 3 vertices"));
    }
    let n32 = n as u32;
    Graph::from_edges(n, (0..n32).map(|i| (i, (i + 1) % n32, 1)))
}

/// A permutation of the vertices giving their arrival order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StreamOrder(Vec<u32>);

impl StreamOrder {
    pub fn new(order: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            match seen.get_mut(v as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::param(format!("order is not a permutation (vertex {v})"))),
            }
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.0.iter().map(|v| v + 1).collect()
    }

    /// `positions()[v]` is the arrival index of `v`.
    pub fn positions(&self) -> Vec<u32> {
        let mut pos = vec![0u32; self.0.len()];
        for (t, &v) in self.0.iter().enumerate() {
            pos[v as usize] = t as u32;
        }
        pos
    }
}

/// Uniformly random arrival order.
pub fn random_order(n: usize, seed: u64) -> Result<StreamOrder> {
    if n == 0 {
        return Err(Error::param("n must be at least 1"));
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut rng::seeded(seed));
    Ok(StreamOrder(order))
}

/// Odd-labelled cycle vertices first, then even ones (1-based labels), so no
/// edge is revealed until half the cycle has arrived.
pub fn adversarial_cycle_order(n: usize) -> Result<StreamOrder> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::param("adversarial cycle order needs an even n >= 4"));
    }
    let n = n as u32;
    Ok(StreamOrder((0..n).step_by(2).chain((1..n).step_by(2)).collect()))
}

/// One vertex arrival.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamEvent {
    pub vertex: u32,
    /// Neighbors that arrived earlier, with multiplicity.
    pub revealed: Vec<(u32, u32)>,
    /// Degree in the whole graph, counted with multiplicity.
    pub full_degree: u64,
}

impl StreamEvent {
    /// Revealed edges counted with multiplicity.
    pub fn revealed_multiplicity(&self) -> u64 {
        self.revealed.iter().map(|&(_, m)| m as u64).sum()
    }
}

/// Iterator over the arrivals of a graph in a given order.
pub struct VertexStream<'g> {
    graph: &'g Graph,
    order: &'g StreamOrder,
    positions: Vec<u32>,
    t: usize,
}

impl Iterator for VertexStream<'_> {
    type Item = StreamEvent;

    fn next(&mut self) -> Option<StreamEvent> {
        let &v = self.order.0.get(self.t)?;
        let t = self.t as u32;
        self.t += 1;
        let revealed = self
            .graph
            .neighbors(v)
            .filter(|&(u, _)| self.positions[u as usize] < t)
            .collect();
        Some(StreamEvent { vertex: v, revealed, full_degree: self.graph.weighted_degree(v) })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.order.len() - self.t;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for VertexStream<'_> {}

pub fn stream_events<'g>(graph: &'g Graph, order: &'g StreamOrder) -> Result<VertexStream<'g>> {
    if order.len() != graph.n() {
        return Err(Error::SizeMismatch { order: order.len(), graph: graph.n() });
    }
    Ok(VertexStream { graph, order, positions: order.positions(), t: 0 })
}
