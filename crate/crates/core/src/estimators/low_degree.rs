use super::EstimateReport;
use crate::error::Result;
use crate::graph::GraphStream;
use crate::oracle::PredictionOracle;

/// Counts the edges whose endpoints are predicted on opposite sides.
///
/// One counter of state. Accurate when every degree is small relative to `m`.
pub fn alg1_run<O: PredictionOracle>(stream: &GraphStream, oracle: &mut O) -> Result<u64> {
    stream.require_insertion_only()?;
    let mut crossing = 0u64;
    for ev in &stream.events {
        oracle.observe_edge(ev.edge);
        if oracle.query(ev.edge.u)? != oracle.query(ev.edge.v)? {
            crossing += 1;
        }
    }
    Ok(crossing)
}

pub fn alg1_report<O: PredictionOracle>(stream: &GraphStream, oracle: &mut O) -> Result<EstimateReport> {
    let x = alg1_run(stream, oracle)?;
    let mut report = EstimateReport::new(x, 0);
    report.words_used = 1;
    report.oracle_queries = oracle.distinct_queries();
    Ok(report)
}
