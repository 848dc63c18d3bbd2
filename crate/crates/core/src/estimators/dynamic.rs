use std::collections::BTreeSet;

use super::arbitrary_order::{count_min_pair, sketch_values};
use super::{CrossCounterMode, EstimatorParams, SketchOutcome};
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeEvent, GraphStream, Label, StreamKind, VertexId};
use crate::oracle::PredictionOracle;
use crate::seed::mix64;
use crate::sketch::{CountMin, FrequencySketch, L0Sample, L0Sampler, SupportSampler};

/// One-pass state of the dynamic-stream estimator.
#[derive(Debug, Clone)]
pub struct DynamicEstimator<S, L> {
    n: u32,
    plus: S,
    minus: S,
    cross: i64,
    mode: CrossCounterMode,
    samplers: Vec<L>,
}

impl<S: FrequencySketch, L: SupportSampler> DynamicEstimator<S, L> {
    /// Edges of an `n`-vertex graph are sampled by their index `u * n + v`.
    pub fn new(n: u32, plus: S, minus: S, samplers: Vec<L>, mode: CrossCounterMode) -> Self {
        DynamicEstimator {
            n,
            plus,
            minus,
            cross: 0,
            mode,
            samplers,
        }
    }

    pub fn process<O: PredictionOracle>(&mut self, ev: EdgeEvent, oracle: &mut O) -> Result<()> {
        let e = ev.edge;
        oracle.observe_edge(e);
        let (yu, yv) = (oracle.query(e.u)?, oracle.query(e.v)?);
        if yu != yv {
            self.cross += match self.mode {
                CrossCounterMode::Net => ev.delta,
                CrossCounterMode::LiteralIncrement => 1,
            };
        }
        self.side(yu).update(e.v as u64, ev.delta);
        self.side(yv).update(e.u as u64, ev.delta);
        let index = e.index(self.n);
        for s in &mut self.samplers {
            s.update(index, ev.delta);
        }
        Ok(())
    }

    fn side(&mut self, label: Label) -> &mut S {
        match label {
            Label::Plus => &mut self.plus,
            Label::Minus => &mut self.minus,
        }
    }

    pub fn words(&self) -> usize {
        self.plus.words() + self.minus.words() + self.samplers.iter().map(|s| s.words()).sum::<usize>() + 1
    }

    pub fn finish<O: PredictionOracle>(mut self, oracle: &mut O) -> Result<SketchOutcome<S>> {
        let words = self.words();
        let mut f: BTreeSet<Edge> = BTreeSet::new();
        for s in &mut self.samplers {
            if let L0Sample::Index(i) = s.sample() {
                let e = Edge::from_index(i, self.n)
                    .ok_or_else(|| Error::Format(format!("sampled index {i} is not an edge")))?;
                f.insert(e);
            }
        }
        let h_tilde: Vec<VertexId> = f
            .iter()
            .flat_map(|e| [e.u, e.v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let (alg1, alg2) = sketch_values(&h_tilde, &self.plus, &self.minus, self.cross, oracle)?;
        let mut report = super::EstimateReport::new(alg1, alg2);
        report.h_tilde_size = h_tilde.len();
        report.words_used = words;
        report.oracle_queries = oracle.distinct_queries();
        Ok(SketchOutcome {
            report,
            h_tilde,
            plus: self.plus,
            minus: self.minus,
            cross_counter: self.cross,
        })
    }
}

/// Dynamic-stream estimator with CountMin tables and l0-sampled edges.
///
/// With the same `seed`, the CountMin hashes match those of
/// [`alg3_run`](super::alg3_run), so equal net streams leave equal tables.
pub fn alg4_run<O: PredictionOracle>(
    stream: &GraphStream,
    oracle: &mut O,
    params: &EstimatorParams,
    seed: u64,
) -> Result<SketchOutcome<CountMin>> {
    params.validate()?;
    let (plus, minus) = count_min_pair(params, seed)?;
    let domain = stream.n as u64 * stream.n as u64;
    let fail = params.l0_fail_prob();
    alg4_run_with(stream, oracle, params, plus, minus, |i| {
        L0Sampler::new(domain.max(1), fail, mix64(seed ^ mix64(i as u64 + 2)))
    })
}

/// [`alg4_run`] over caller-supplied sketches; `sampler(i)` builds the `i`-th edge sampler.
pub fn alg4_run_with<S, L, O, F>(
    stream: &GraphStream,
    oracle: &mut O,
    params: &EstimatorParams,
    plus: S,
    minus: S,
    sampler: F,
) -> Result<SketchOutcome<S>>
where
    S: FrequencySketch,
    L: SupportSampler,
    O: PredictionOracle,
    F: FnMut(usize) -> L,
{
    params.validate()?;
    stream.require_kind(StreamKind::Dynamic, "a dynamic stream")?;
    let samplers = (0..params.sample_size()).map(sampler).collect();
    let mut est = DynamicEstimator::new(stream.n, plus, minus, samplers, params.cross_counter);
    for &ev in &stream.events {
        est.process(ev, oracle)?;
    }
    let mut out = est.finish(oracle)?;
    out.report.params = Some(params.resolved());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::alg3_run;
    use crate::graph::{gen_dynamic_stream, gen_planted_bipartite};
    use crate::oracle::NoisyOracle;
    use crate::sketch::ExactL0;

    fn params() -> EstimatorParams {
        EstimatorParams::new(0.4, 1.0 / 3.0)
            .with_cm(300, 4)
            .with_sample_size(20)
    }

    #[test]
    fn insert_then_delete_everything_is_zero() {
        let e = Edge::new(0, 1).unwrap();
        let f = Edge::new(1, 2).unwrap();
        let s = GraphStream::new(
            3,
            StreamKind::Dynamic,
            vec![
                EdgeEvent::insert(e),
                EdgeEvent::insert(f),
                EdgeEvent::delete(e),
                EdgeEvent::delete(f),
            ],
        );
        let mut o = NoisyOracle::new(vec![Label::Plus, Label::Minus, Label::Plus], 0.5, 0).unwrap();
        let out = alg4_run(&s, &mut o, &params(), 4).unwrap();
        assert!(out.plus.is_zero() && out.minus.is_zero());
        assert_eq!(out.cross_counter, 0);
        assert_eq!(out.report.estimate, 0);
        assert!(out.h_tilde.is_empty());
    }

    #[test]
    fn literal_increment_overcounts_deletions() {
        let e = Edge::new(0, 1).unwrap();
        let s = GraphStream::new(2, StreamKind::Dynamic, vec![EdgeEvent::insert(e), EdgeEvent::delete(e)]);
        let mut o = NoisyOracle::new(vec![Label::Plus, Label::Minus], 0.5, 0).unwrap();
        let mut p = params();
        p.cross_counter = CrossCounterMode::LiteralIncrement;
        assert_eq!(alg4_run(&s, &mut o, &p, 4).unwrap().cross_counter, 2);
    }

    #[test]
    fn singleton_final_graph() {
        let e = Edge::new(0, 1).unwrap();
        let s = GraphStream::new(2, StreamKind::Dynamic, vec![EdgeEvent::insert(e)]);
        let mut o = NoisyOracle::new(vec![Label::Plus, Label::Minus], 0.5, 0).unwrap();
        let out = alg4_run(&s, &mut o, &params(), 9).unwrap();
        assert_eq!(out.h_tilde, vec![0, 1]);
        assert!(out.minus.query(0) >= 1 && out.plus.query(1) >= 1);
        assert_eq!(out.report.estimate, 2);
    }

    #[test]
    fn matches_insertion_only_tables() {
        let base = gen_planted_bipartite(40, 40, 300, 7).unwrap();
        let churned = gen_dynamic_stream(&base, 200, 8).unwrap();
        let x = base.opt_assignment.clone().unwrap();
        let mut o3 = NoisyOracle::new(x.clone(), 0.3, 2).unwrap();
        let a = alg3_run(&base.stream, &mut o3, &params(), 11).unwrap();
        let mut o4 = NoisyOracle::new(x, 0.3, 2).unwrap();
        let exact = alg4_run_with(
            &churned.stream,
            &mut o4,
            &params(),
            crate::sketch::ExactFrequencies::new(),
            crate::sketch::ExactFrequencies::new(),
            |i| ExactL0::new(i as u64),
        )
        .unwrap();
        assert_eq!(exact.cross_counter, a.cross_counter);
        let mut o4 = NoisyOracle::new(base.opt_assignment.unwrap(), 0.3, 2).unwrap();
        let c = alg4_run(&churned.stream, &mut o4, &params(), 11).unwrap();
        assert_eq!(c.plus, a.plus);
        assert_eq!(c.minus, a.minus);
        assert_eq!(c.cross_counter, a.cross_counter);
    }
}
