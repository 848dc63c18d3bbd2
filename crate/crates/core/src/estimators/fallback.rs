use serde::{Deserialize, Serialize};

use super::EstimatorParams;
use crate::error::Result;
use crate::graph::{brute_force_maxcut_capped, build_final_graph, GraphStream, Label};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FallbackOutcome {
    /// The stream was small enough to store and solve exactly.
    Exact { value: u64, assignment: Vec<Label> },
    /// Hand the stream to a streaming estimator.
    PassThrough { reason: String },
}

impl FallbackOutcome {
    pub fn exact_value(&self) -> Option<u64> {
        match self {
            FallbackOutcome::Exact { value, .. } => Some(*value),
            FallbackOutcome::PassThrough { .. } => None,
        }
    }
}

/// Solves short streams exactly; everything else passes through.
///
/// A stream qualifies when its final edge count is below the small-m threshold
/// and it has at most `n_exact` vertices.
pub fn small_m_fallback(stream: &GraphStream, params: &EstimatorParams, n_exact: u32) -> Result<FallbackOutcome> {
    params.validate()?;
    let g = build_final_graph(stream)?;
    let limit = params.small_m_threshold();
    if g.m() as u64 >= limit {
        return Ok(FallbackOutcome::PassThrough {
            reason: format!("m = {} is not below the small-m threshold {limit}", g.m()),
        });
    }
    if g.n > n_exact {
        return Ok(FallbackOutcome::PassThrough {
            reason: format!(
                "m = {} is small but n = {} exceeds the exact-solver cap {n_exact}",
                g.m(),
                g.n
            ),
        });
    }
    let cut = brute_force_maxcut_capped(&g, n_exact)?;
    Ok(FallbackOutcome::Exact {
        value: cut.value as u64,
        assignment: cut.assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_force_maxcut, Edge, Graph, DEFAULT_N_EXACT};
    use crate::seed::rng_from_seed;
    use rand::Rng;

    #[test]
    fn triangle_is_solved_exactly() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)].map(|(u, v)| Edge { u, v })).unwrap();
        let r = small_m_fallback(&g.to_stream(), &EstimatorParams::default(), DEFAULT_N_EXACT).unwrap();
        assert_eq!(r.exact_value(), Some(2));
    }

    #[test]
    fn large_m_passes_through() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)].map(|(u, v)| Edge { u, v })).unwrap();
        let p = EstimatorParams {
            small_m_threshold: Some(3),
            ..EstimatorParams::default()
        };
        let r = small_m_fallback(&g.to_stream(), &p, DEFAULT_N_EXACT).unwrap();
        assert!(matches!(r, FallbackOutcome::PassThrough { .. }));
    }

    #[test]
    fn too_many_vertices_passes_through() {
        let g = Graph::new(40, [Edge { u: 0, v: 39 }]).unwrap();
        let r = small_m_fallback(&g.to_stream(), &EstimatorParams::default(), DEFAULT_N_EXACT).unwrap();
        match r {
            FallbackOutcome::PassThrough { reason } => assert!(reason.contains("exceeds")),
            other => panic!("expected pass-through, got {other:?}"),
        }
    }

    #[test]
    fn random_small_graphs_match_brute_force() {
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let mut edges = std::collections::BTreeSet::new();
            while edges.len() < 10 {
                let (a, b) = (rng.gen_range(0..8u32), rng.gen_range(0..8u32));
                if a != b {
                    edges.insert(Edge::new(a, b).unwrap());
                }
            }
            let g = Graph::new(8, edges).unwrap();
            let r = small_m_fallback(&g.to_stream(), &EstimatorParams::default(), DEFAULT_N_EXACT).unwrap();
            assert_eq!(r.exact_value(), Some(brute_force_maxcut(&g).unwrap().value as u64));
        }
    }
}
