use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{EstimateReport, EstimatorParams};
use crate::error::{Error, Result};
use crate::graph::{Edge, GraphStream, Label, StreamKind, VertexId};
use crate::oracle::PredictionOracle;
use crate::seed::mix64;
use crate::sketch::Reservoir;

/// Sampling-based estimate of a sum of bounded values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumEstimatorConfig {
    pub eta: f64,
    pub delta: f64,
    pub a: f64,
    pub b: f64,
    /// Constant in front of `eta^-2 ln(1/delta)`.
    pub c: f64,
}

impl SumEstimatorConfig {
    pub fn new(eta: f64, delta: f64, a: f64, b: f64) -> Self {
        SumEstimatorConfig {
            eta,
            delta,
            a,
            b,
            c: 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::Domain(format!("eta must be in (0, 1), got {}", self.eta)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Domain(format!("delta must be in (0, 1), got {}", self.delta)));
        }
        if self.a >= self.b || self.a.is_nan() || self.b.is_nan() {
            return Err(Error::Domain(format!("need a < b, got [{}, {}]", self.a, self.b)));
        }
        if self.c.is_nan() || self.c <= 0.0 {
            return Err(Error::Domain(format!(
                "sample constant must be positive, got {}",
                self.c
            )));
        }
        Ok(())
    }

    /// `ceil(c * eta^-2 * ln(1/delta))`, at least 1.
    pub fn sample_count(&self) -> usize {
        ((self.c * (1.0 / self.delta).ln() / (self.eta * self.eta)).ceil() as usize).max(1)
    }
}

/// `(n / t) * sum of t values drawn uniformly with replacement`.
pub fn estimate_sum_by_sampling<R: Rng + ?Sized>(values: &[f64], cfg: &SumEstimatorConfig, rng: &mut R) -> Result<f64> {
    cfg.validate()?;
    if values.is_empty() {
        return Err(Error::Domain("cannot estimate the sum of an empty collection".into()));
    }
    if let Some(x) = values.iter().find(|&&x| !(x >= cfg.a && x <= cfg.b)) {
        return Err(Error::Domain(format!("value {x} outside [{}, {}]", cfg.a, cfg.b)));
    }
    let t = cfg.sample_count();
    let n = values.len();
    let total: f64 = (0..t).map(|_| values[rng.gen_range(0..n)]).sum();
    Ok(total * n as f64 / t as f64)
}

fn sample_count(params: &EstimatorParams, eta: f64) -> usize {
    SumEstimatorConfig::new(eta, params.delta, 0.0, 1.0).sample_count()
}

/// Largest number of distinct oracle queries [`alg2_constant_query_run`] can make.
///
/// `2 t_s` for the low-side edge sample plus `1 + t_s` per candidate hub, with at
/// most `2 t` candidates; none of it depends on `n`.
pub fn constant_query_budget(params: &EstimatorParams, eta: Option<f64>) -> usize {
    let eta = eta.unwrap_or(params.eps * params.eps / 64.0);
    let ts = sample_count(params, eta);
    2 * ts + 2 * params.sample_size() * (1 + ts)
}

struct Candidate {
    /// Exact `e(v, V \ H~)`.
    outside: u64,
    neighbours: Reservoir<VertexId>,
}

/// Random-order estimator that queries the oracle for a bounded number of vertices.
///
/// The hubs-versus-rest value is exact and needs no labels. The greedy value is
/// assembled from the cut inside the low side (estimated from an edge sample),
/// the cut inside the demoted candidates (exact), and each candidate's split of
/// low-side neighbours (estimated from a per-candidate neighbour sample).
pub fn alg2_constant_query_run<O: PredictionOracle>(
    stream: &GraphStream,
    oracle: &mut O,
    params: &EstimatorParams,
    eta: Option<f64>,
    seed: u64,
) -> Result<EstimateReport> {
    params.validate()?;
    stream.require_kind(StreamKind::InsertionRandomOrder, "a random-order insertion stream")?;
    let eta = eta.unwrap_or(params.eps * params.eps / 64.0);
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain(format!("eta must be in (0, 1), got {eta}")));
    }
    let t = params.sample_size();
    let ts = sample_count(params, eta);

    let mut f: Vec<Edge> = Vec::new();
    let mut slot: HashMap<VertexId, usize> = HashMap::new();
    let mut h_tilde: Vec<VertexId> = Vec::new();
    let mut cands: Vec<Candidate> = Vec::new();
    let mut low_edges = Reservoir::new(ts, mix64(seed ^ 0x10));
    let mut m = 0u64;

    for (i, ev) in stream.events.iter().enumerate() {
        let e = ev.edge;
        oracle.observe_edge(e);
        m += 1;
        if i < t {
            f.push(e);
            for x in [e.u, e.v] {
                slot.entry(x).or_insert_with(|| {
                    h_tilde.push(x);
                    h_tilde.len() - 1
                });
            }
            if i + 1 == t || i + 1 == stream.events.len() {
                cands = (0..h_tilde.len())
                    .map(|k| Candidate {
                        outside: 0,
                        neighbours: Reservoir::new(ts, mix64(seed ^ mix64(k as u64 + 0x100))),
                    })
                    .collect();
            }
            continue;
        }
        match (slot.get(&e.u).copied(), slot.get(&e.v).copied()) {
            (Some(_), Some(_)) => f.push(e),
            (Some(a), None) => {
                cands[a].outside += 1;
                cands[a].neighbours.offer(e.v);
            }
            (None, Some(b)) => {
                cands[b].outside += 1;
                cands[b].neighbours.offer(e.u);
            }
            (None, None) => low_edges.offer(e),
        }
    }

    let theta = params.theta(m);
    let k = h_tilde.len();
    let mut f_degree = vec![0u64; k];
    for e in &f {
        f_degree[slot[&e.u]] += 1;
        f_degree[slot[&e.v]] += 1;
    }
    let is_hub: Vec<bool> = (0..k)
        .map(|i| (f_degree[i] + cands[i].outside) as f64 >= theta)
        .collect();

    // Hubs-versus-rest, exact.
    let mut to_demoted = vec![0u64; k];
    for e in &f {
        let (a, b) = (slot[&e.u], slot[&e.v]);
        if is_hub[a] && !is_hub[b] {
            to_demoted[a] += 1;
        } else if is_hub[b] && !is_hub[a] {
            to_demoted[b] += 1;
        }
    }
    let alg2: u64 = (0..k)
        .filter(|&i| is_hub[i])
        .map(|i| cands[i].outside + to_demoted[i])
        .sum();

    // (I) cut inside the low side.
    let mut total = 0.0;
    if !low_edges.is_empty() {
        let mut crossing = 0u64;
        for e in low_edges.items() {
            if oracle.query(e.u)? != oracle.query(e.v)? {
                crossing += 1;
            }
        }
        total += low_edges.seen() as f64 / low_edges.len() as f64 * crossing as f64;
    }

    // Split of each candidate's low-side neighbours, scaled from its sample.
    let mut low_split = vec![(0.0f64, 0.0f64); k];
    for i in 0..k {
        let r = &cands[i].neighbours;
        if r.is_empty() {
            continue;
        }
        let (mut minus, mut plus) = (0u64, 0u64);
        for &w in r.items() {
            match oracle.query(w)? {
                Label::Minus => minus += 1,
                Label::Plus => plus += 1,
            }
        }
        let scale = cands[i].outside as f64 / r.len() as f64;
        low_split[i] = (scale * minus as f64, scale * plus as f64);
    }

    // (II) exact cut inside the demoted candidates, and hub counts towards them.
    let mut hub_to_demoted = vec![(0u64, 0u64); k];
    for e in &f {
        let (a, b) = (slot[&e.u], slot[&e.v]);
        match (is_hub[a], is_hub[b]) {
            (false, false) => {
                if oracle.query(e.u)? != oracle.query(e.v)? {
                    total += 1.0;
                }
            }
            (true, false) => add_side(&mut hub_to_demoted[a], oracle.query(e.v)?),
            (false, true) => add_side(&mut hub_to_demoted[b], oracle.query(e.u)?),
            (true, true) => {}
        }
    }

    let mut hubs: Vec<(VertexId, usize)> = Vec::new();
    for (i, &v) in h_tilde.iter().enumerate() {
        if is_hub[i] {
            hubs.push((v, i));
        } else {
            // (III)
            total += match oracle.query(v)? {
                Label::Plus => low_split[i].0,
                Label::Minus => low_split[i].1,
            };
        }
    }
    // (IV)
    hubs.sort_unstable();
    for &(_, i) in &hubs {
        let (dm, dp) = hub_to_demoted[i];
        let (lm, lp) = low_split[i];
        total += (dm as f64 + lm).max(dp as f64 + lp);
    }

    let mut report = EstimateReport::new(total.round() as u64, alg2);
    report.h_tilde_size = k;
    report.words_used = 2 * f.len() + (2 + ts) * k + 2 * ts + 2;
    report.oracle_queries = oracle.distinct_queries();
    report.params = Some(params.resolved());
    Ok(report)
}

fn add_side(counts: &mut (u64, u64), label: Label) {
    match label {
        Label::Minus => counts.0 += 1,
        Label::Plus => counts.1 += 1,
    }
}
