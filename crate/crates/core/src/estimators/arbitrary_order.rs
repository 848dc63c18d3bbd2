use std::collections::BTreeSet;

use super::{EstimateReport, EstimatorParams};
use crate::error::Result;
use crate::graph::{Edge, GraphStream, Label, VertexId};
use crate::oracle::PredictionOracle;
use crate::seed::{mix64, rng_from_seed};
use crate::sketch::{CountMin, FrequencySketch, HashFamily, Reservoir};

/// Final sketch state together with the report built from it.
#[derive(Debug, Clone)]
pub struct SketchOutcome<S> {
    pub report: EstimateReport,
    /// Candidate hubs in ascending id order.
    pub h_tilde: Vec<VertexId>,
    /// Per-vertex count of neighbours predicted `+`.
    pub plus: S,
    /// Per-vertex count of neighbours predicted `-`.
    pub minus: S,
    /// Net number of stream edges whose endpoint predictions differ.
    pub cross_counter: i64,
}

/// Postprocessing shared by the arbitrary-order and dynamic estimators.
///
/// Returns `(ALG1, ALG2)`. Both frequency estimates are read as nonnegative.
pub(super) fn sketch_values<S: FrequencySketch, O: PredictionOracle>(
    h_tilde: &[VertexId],
    plus: &S,
    minus: &S,
    cross_counter: i64,
    oracle: &mut O,
) -> Result<(u64, u64)> {
    let mut low_cross = cross_counter;
    let mut hub_part = 0i64;
    let mut alg2 = 0i64;
    for &v in h_tilde {
        let fp = plus.query(v as u64).max(0);
        let fm = minus.query(v as u64).max(0);
        low_cross -= match oracle.query(v)? {
            Label::Plus => fm,
            Label::Minus => fp,
        };
        hub_part += fp.max(fm);
        alg2 += fp + fm;
    }
    let alg1 = low_cross.max(0) + hub_part;
    Ok((alg1 as u64, alg2 as u64))
}

/// One-pass state of the arbitrary-order estimator.
#[derive(Debug, Clone)]
pub struct ArbitraryOrderEstimator<S> {
    plus: S,
    minus: S,
    cross: i64,
    sample: Reservoir<Edge>,
}

impl<S: FrequencySketch> ArbitraryOrderEstimator<S> {
    /// `plus` and `minus` must start empty; `sample_size` edges are kept.
    pub fn new(plus: S, minus: S, sample_size: usize, reservoir_seed: u64) -> Self {
        ArbitraryOrderEstimator {
            plus,
            minus,
            cross: 0,
            sample: Reservoir::new(sample_size, reservoir_seed),
        }
    }

    pub fn process<O: PredictionOracle>(&mut self, e: Edge, oracle: &mut O) -> Result<()> {
        oracle.observe_edge(e);
        let (yu, yv) = (oracle.query(e.u)?, oracle.query(e.v)?);
        if yu != yv {
            self.cross += 1;
        }
        self.side(yu).update(e.v as u64, 1);
        self.side(yv).update(e.u as u64, 1);
        self.sample.offer(e);
        Ok(())
    }

    fn side(&mut self, label: Label) -> &mut S {
        match label {
            Label::Plus => &mut self.plus,
            Label::Minus => &mut self.minus,
        }
    }

    pub fn words(&self) -> usize {
        self.plus.words() + self.minus.words() + 2 * self.sample.capacity() + 2
    }

    pub fn finish<O: PredictionOracle>(self, oracle: &mut O) -> Result<SketchOutcome<S>> {
        let words = self.words();
        let h_tilde: Vec<VertexId> = self
            .sample
            .items()
            .iter()
            .flat_map(|e| [e.u, e.v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let (alg1, alg2) = sketch_values(&h_tilde, &self.plus, &self.minus, self.cross, oracle)?;
        let mut report = EstimateReport::new(alg1, alg2);
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

/// The pair of CountMin tables used by the sketch estimators; both share one hash family.
pub(super) fn count_min_pair(params: &EstimatorParams, seed: u64) -> Result<(CountMin, CountMin)> {
    params.check_cm_size()?;
    let hashes = HashFamily::new(params.cm_depth(), params.cm_width(), &mut rng_from_seed(seed));
    Ok((CountMin::with_hashes(hashes.clone()), CountMin::with_hashes(hashes)))
}

/// Arbitrary-order estimator with CountMin tables and a reservoir edge sample.
pub fn alg3_run<O: PredictionOracle>(
    stream: &GraphStream,
    oracle: &mut O,
    params: &EstimatorParams,
    seed: u64,
) -> Result<SketchOutcome<CountMin>> {
    params.validate()?;
    let (plus, minus) = count_min_pair(params, seed)?;
    alg3_run_with(stream, oracle, params, plus, minus, mix64(seed ^ 1))
}

/// [`alg3_run`] over caller-supplied frequency sketches.
pub fn alg3_run_with<S: FrequencySketch, O: PredictionOracle>(
    stream: &GraphStream,
    oracle: &mut O,
    params: &EstimatorParams,
    plus: S,
    minus: S,
    reservoir_seed: u64,
) -> Result<SketchOutcome<S>> {
    params.validate()?;
    stream.require_insertion_only()?;
    let mut est = ArbitraryOrderEstimator::new(plus, minus, params.sample_size(), reservoir_seed);
    for ev in &stream.events {
        est.process(ev.edge, oracle)?;
    }
    let mut out = est.finish(oracle)?;
    out.report.params = Some(params.resolved());
    Ok(out)
}
