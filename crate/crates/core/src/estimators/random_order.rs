use std::collections::HashMap;

use super::{greedy_extension, EstimateReport, EstimatorParams};
use crate::error::Result;
use crate::graph::{Edge, GraphStream, Label, StreamKind, VertexId};
use crate::oracle::PredictionOracle;

/// Exact per-candidate counters kept during the pass.
#[derive(Debug, Clone, Copy, Default)]
struct Counters {
    /// Edges to vertices outside the candidate set.
    outside: u64,
    to_plus: u64,
    to_minus: u64,
}

impl Counters {
    fn add(&mut self, label: Label) {
        match label {
            Label::Plus => self.to_plus += 1,
            Label::Minus => self.to_minus += 1,
        }
    }
}

/// Random-order estimator: the stream prefix nominates candidate hubs whose
/// incidences are then counted exactly.
pub fn alg2_run<O: PredictionOracle>(
    stream: &GraphStream,
    oracle: &mut O,
    params: &EstimatorParams,
) -> Result<EstimateReport> {
    params.validate()?;
    stream.require_kind(StreamKind::InsertionRandomOrder, "a random-order insertion stream")?;
    let t = params.sample_size();

    let mut f: Vec<Edge> = Vec::new();
    let mut slot: HashMap<VertexId, usize> = HashMap::new();
    let mut h_tilde: Vec<VertexId> = Vec::new();
    let mut counters: Vec<Counters> = Vec::new();
    let mut cross = 0u64;
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
                counters = vec![Counters::default(); h_tilde.len()];
            }
            continue;
        }
        match (slot.get(&e.u).copied(), slot.get(&e.v).copied()) {
            (Some(_), Some(_)) => f.push(e),
            (Some(a), None) => {
                counters[a].outside += 1;
                counters[a].add(oracle.query(e.v)?);
            }
            (None, Some(b)) => {
                counters[b].outside += 1;
                counters[b].add(oracle.query(e.u)?);
            }
            (None, None) => {
                if oracle.query(e.u)? != oracle.query(e.v)? {
                    cross += 1;
                }
            }
        }
    }

    let theta = params.theta(m);
    let mut f_degree = vec![0u64; h_tilde.len()];
    for e in &f {
        f_degree[slot[&e.u]] += 1;
        f_degree[slot[&e.v]] += 1;
    }
    let is_hub: Vec<bool> = (0..h_tilde.len())
        .map(|i| (f_degree[i] + counters[i].outside) as f64 >= theta)
        .collect();

    for e in &f {
        let (a, b) = (slot[&e.u], slot[&e.v]);
        match (is_hub[a], is_hub[b]) {
            (true, false) => counters[a].add(oracle.query(e.v)?),
            (false, true) => counters[b].add(oracle.query(e.u)?),
            (false, false) => {
                if oracle.query(e.u)? != oracle.query(e.v)? {
                    cross += 1;
                }
            }
            (true, true) => {}
        }
    }

    let mut hubs: Vec<(VertexId, (u64, u64))> = Vec::new();
    for (i, &v) in h_tilde.iter().enumerate() {
        let c = counters[i];
        if is_hub[i] {
            hubs.push((v, (c.to_minus, c.to_plus)));
        } else {
            cross += match oracle.query(v)? {
                Label::Plus => c.to_minus,
                Label::Minus => c.to_plus,
            };
        }
    }
    hubs.sort_unstable_by_key(|&(v, _)| v);
    let hub_counts: Vec<(u64, u64)> = hubs.iter().map(|&(_, c)| c).collect();

    let alg1 = greedy_extension(cross, &hub_counts).value;
    let alg2 = hub_counts.iter().map(|&(a, b)| a + b).sum();
    let mut report = EstimateReport::new(alg1, alg2);
    report.h_tilde_size = h_tilde.len();
    report.words_used = 2 * f.len() + 3 * h_tilde.len() + 1;
    report.oracle_queries = oracle.distinct_queries();
    report.params = Some(params.resolved());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::estimators::offline_best_of_two;
    use crate::graph::{build_final_graph, gen_hub_instance, gen_planted_bipartite, shuffle_to_random_order};
    use crate::oracle::NoisyOracle;

    #[test]
    fn rejects_other_kinds() {
        let s = GraphStream::new(2, StreamKind::InsertionArbitrary, vec![]);
        let mut o = NoisyOracle::new(vec![Label::Plus; 2], 0.3, 0).unwrap();
        let r = alg2_run(&s, &mut o, &EstimatorParams::default());
        assert!(matches!(r, Err(Error::StreamKind { .. })));
    }

    #[test]
    fn short_stream_matches_offline_static_value() {
        for seed in 0..10 {
            let inst = gen_hub_instance(2000, 20_000, 2, 800, seed).unwrap();
            let s = shuffle_to_random_order(&inst.stream, seed).unwrap();
            let g = build_final_graph(&s).unwrap();
            let params = EstimatorParams::new(0.5, 0.9).with_sample_size(1_000_000);
            let x = inst.opt_assignment.clone().unwrap();
            let mut o = NoisyOracle::new(x.clone(), 0.3, seed).unwrap();
            let r = alg2_run(&s, &mut o, &params).unwrap();
            let mut o2 = NoisyOracle::new(x, 0.3, seed).unwrap();
            let off = offline_best_of_two(&g, &mut o2, &params).unwrap();
            assert_eq!(r.alg1_value, off.static_value);
            assert_eq!(r.alg2_value, off.hubs_vs_rest);
        }
    }

    #[test]
    fn perfect_predictions_on_low_degree_instance() {
        let inst = gen_planted_bipartite(3000, 3000, 5000, 4).unwrap();
        let s = shuffle_to_random_order(&inst.stream, 1).unwrap();
        let mut o = NoisyOracle::new(inst.opt_assignment.unwrap(), 0.5, 0).unwrap();
        let params = EstimatorParams::new(0.5, 0.5).with_sample_size(100);
        let r = alg2_run(&s, &mut o, &params).unwrap();
        assert_eq!(r.estimate, 5000);
        assert!(r.words_used > 2 * 100 + 3 * r.h_tilde_size);
    }

    #[test]
    fn perfect_predictions_with_a_hub() {
        let inst = gen_hub_instance(10_000, 3000, 1, 150, 2).unwrap();
        let m = inst.stream.len() as u64;
        let s = shuffle_to_random_order(&inst.stream, 5).unwrap();
        let mut o = NoisyOracle::new(inst.opt_assignment.unwrap(), 0.5, 0).unwrap();
        let params = EstimatorParams::new(0.5, 0.5).with_sample_size(200);
        let r = alg2_run(&s, &mut o, &params).unwrap();
        assert_eq!(r.alg1_value, m);
    }
}
