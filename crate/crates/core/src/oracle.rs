//! The eps-accurate prediction oracle.
//!
//! Each vertex's prediction agrees with a reference optimal assignment `x*` with
//! probability `1/2 + eps`, independently across vertices. The draw for vertex `v`
//! is a pure hash of `(seed, v)`, so labels do not depend on query order and the
//! oracle behaves as if every prediction had been fixed up front.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Label, VertexId};
use crate::seed::mix64;

/// Label access used by the estimators.
pub trait PredictionOracle {
    fn n(&self) -> u32;

    fn query(&mut self, v: VertexId) -> Result<Label>;

    /// Called for every stream event before the estimator touches its endpoints.
    fn observe_edge(&mut self, _edge: Edge) {}

    fn distinct_queries(&self) -> usize;
}

#[derive(Debug, Clone)]
pub struct NoisyOracle {
    x_star: Vec<Label>,
    eps: f64,
    seed: u64,
    memo: Vec<Option<Label>>,
    distinct_queries: usize,
}

/// Uniform draw in `[0, 1)` for vertex `v` under `seed`.
#[inline]
fn unit_draw(seed: u64, v: VertexId) -> f64 {
    let bits = mix64(seed ^ mix64(v as u64 ^ 0xA076_1D64_78BD_642F));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The prediction for a vertex as a pure function of its inputs.
pub fn predicted_label(seed: u64, v: VertexId, truth: Label, eps: f64) -> Label {
    if unit_draw(seed, v) < 0.5 + eps {
        truth
    } else {
        truth.flip()
    }
}

impl NoisyOracle {
    pub fn new(x_star: Vec<Label>, eps: f64, seed: u64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 0.5) {
            return Err(Error::Domain(format!("oracle bias must be in (0, 1/2], got {eps}")));
        }
        let n = x_star.len();
        Ok(NoisyOracle {
            x_star,
            eps,
            seed,
            memo: vec![None; n],
            distinct_queries: 0,
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn x_star(&self) -> &[Label] {
        &self.x_star
    }

    /// Same `x*` and bias, fresh seed and empty memo.
    pub fn reseeded(&self, seed: u64) -> Self {
        NoisyOracle {
            x_star: self.x_star.clone(),
            eps: self.eps,
            seed,
            memo: vec![None; self.x_star.len()],
            distinct_queries: 0,
        }
    }

    pub fn distinct_query_count(&self) -> usize {
        self.distinct_queries
    }
}

impl PredictionOracle for NoisyOracle {
    fn n(&self) -> u32 {
        self.x_star.len() as u32
    }

    fn query(&mut self, v: VertexId) -> Result<Label> {
        let slot = self
            .memo
            .get_mut(v as usize)
            .ok_or_else(|| Error::Domain(format!("vertex {v} out of range for n = {}", self.x_star.len())))?;
        if let Some(label) = *slot {
            return Ok(label);
        }
        let label = predicted_label(self.seed, v, self.x_star[v as usize], self.eps);
        *slot = Some(label);
        self.distinct_queries += 1;
        Ok(label)
    }

    fn distinct_queries(&self) -> usize {
        self.distinct_queries
    }
}

/// Restricts access to predictions carried by edges that have already arrived.
///
/// Any query for a vertex that has not appeared as an endpoint faults with
/// [`Error::OutOfBandQuery`].
#[derive(Debug, Clone)]
pub struct EdgeAnnotatedOracle<O> {
    inner: O,
    arrived: HashSet<VertexId>,
}

impl<O: PredictionOracle> EdgeAnnotatedOracle<O> {
    pub fn new(inner: O) -> Self {
        EdgeAnnotatedOracle {
            inner,
            arrived: HashSet::new(),
        }
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: PredictionOracle> PredictionOracle for EdgeAnnotatedOracle<O> {
    fn n(&self) -> u32 {
        self.inner.n()
    }

    fn query(&mut self, v: VertexId) -> Result<Label> {
        if !self.arrived.contains(&v) {
            return Err(Error::OutOfBandQuery(v));
        }
        self.inner.query(v)
    }

    fn observe_edge(&mut self, edge: Edge) {
        self.arrived.insert(edge.u);
        self.arrived.insert(edge.v);
        self.inner.observe_edge(edge);
    }

    fn distinct_queries(&self) -> usize {
        self.inner.distinct_queries()
    }
}

impl<O: PredictionOracle + ?Sized> PredictionOracle for &mut O {
    fn n(&self) -> u32 {
        (**self).n()
    }

    fn query(&mut self, v: VertexId) -> Result<Label> {
        (**self).query(v)
    }

    fn observe_edge(&mut self, edge: Edge) {
        (**self).observe_edge(edge)
    }

    fn distinct_queries(&self) -> usize {
        (**self).distinct_queries()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating(n: u32) -> Vec<Label> {
        (0..n)
            .map(|v| if v % 2 == 0 { Label::Plus } else { Label::Minus })
            .collect()
    }

    #[test]
    fn perfect_bias_returns_truth() {
        let x = alternating(500);
        let mut o = NoisyOracle::new(x.clone(), 0.5, 17).unwrap();
        for v in 0..500 {
            assert_eq!(o.query(v).unwrap(), x[v as usize]);
        }
    }

    #[test]
    fn memoized_and_counted_once() {
        let mut o = NoisyOracle::new(alternating(10), 0.1, 3).unwrap();
        assert_eq!(o.distinct_query_count(), 0);
        let a = o.query(2).unwrap();
        let b = o.query(2).unwrap();
        assert_eq!(a, b);
        assert_eq!(o.distinct_query_count(), 1);
        for v in [1, 2, 2, 5] {
            o.query(v).unwrap();
        }
        assert_eq!(o.distinct_query_count(), 3);
    }

    #[test]
    fn out_of_range_and_bad_bias() {
        let mut o = NoisyOracle::new(alternating(4), 0.2, 0).unwrap();
        assert!(matches!(o.query(4), Err(Error::Domain(_))));
        assert!(NoisyOracle::new(alternating(4), 0.0, 0).is_err());
        assert!(NoisyOracle::new(alternating(4), 0.51, 0).is_err());
    }

    #[test]
    fn order_independent() {
        let x = alternating(200);
        let mut fwd = NoisyOracle::new(x.clone(), 0.2, 99).unwrap();
        let mut rev = NoisyOracle::new(x, 0.2, 99).unwrap();
        let a: Vec<_> = (0..200).map(|v| fwd.query(v).unwrap()).collect();
        let mut b: Vec<_> = (0..200).rev().map(|v| rev.query(v).unwrap()).collect();
        b.reverse();
        assert_eq!(a, b);
    }

    #[test]
    fn agreement_rate_within_three_sigma() {
        let n = 100_000u32;
        let x = alternating(n);
        let mut o = NoisyOracle::new(x.clone(), 0.3, 2024).unwrap();
        let agree = (0..n).filter(|&v| o.query(v).unwrap() == x[v as usize]).count();
        let rate = agree as f64 / n as f64;
        // sigma = sqrt(0.8 * 0.2 / 1e5) ~ 0.00126
        assert!((rate - 0.8).abs() <= 0.005, "rate {rate}");
    }

    #[test]
    fn edge_annotated_faults_out_of_band() {
        let inner = NoisyOracle::new(alternating(5), 0.5, 1).unwrap();
        let mut o = EdgeAnnotatedOracle::new(inner);
        assert!(matches!(o.query(1), Err(Error::OutOfBandQuery(1))));
        o.observe_edge(Edge { u: 1, v: 3 });
        assert_eq!(o.query(1).unwrap(), Label::Minus);
        assert!(o.query(2).is_err());
        assert_eq!(o.distinct_queries(), 1);
    }
}
