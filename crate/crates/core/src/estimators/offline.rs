use serde::{Deserialize, Serialize};

use super::EstimatorParams;
use crate::error::Result;
use crate::graph::{Graph, Label, VertexId};
use crate::oracle::PredictionOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutChoice {
    Greedy,
    HubsVsRest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OfflineBestOfTwo {
    pub value: u64,
    pub which: CutChoice,
    /// Oracle cut on the low-degree side, extended hub by hub in ascending id
    /// order; each hub sees the hubs placed before it.
    pub greedy_value: u64,
    /// `e(L+, L-) + sum over hubs of max(e(v, L-), e(v, L+))` with `L` fixed.
    pub static_value: u64,
    /// `e(H, L)`.
    pub hubs_vs_rest: u64,
    pub high_degree: Vec<VertexId>,
}

/// Best of the greedy-extended oracle cut and the hubs-versus-rest cut,
/// computed with exact degrees on a materialized graph.
pub fn offline_best_of_two<O: PredictionOracle>(
    g: &Graph,
    oracle: &mut O,
    params: &EstimatorParams,
) -> Result<OfflineBestOfTwo> {
    params.validate()?;
    let theta = params.theta(g.m() as u64);
    let degrees = g.degrees();
    let is_high: Vec<bool> = degrees.iter().map(|&d| d as f64 >= theta).collect();
    let high_degree: Vec<VertexId> = (0..g.n).filter(|&v| is_high[v as usize]).collect();

    let mut side: Vec<Option<Label>> = vec![None; g.n as usize];
    for v in 0..g.n {
        if !is_high[v as usize] && degrees[v as usize] > 0 {
            side[v as usize] = Some(oracle.query(v)?);
        }
    }

    let mut low_cut = 0u64;
    for e in g.edges() {
        if let (Some(a), Some(b)) = (side[e.u as usize], side[e.v as usize]) {
            if a != b {
                low_cut += 1;
            }
        }
    }

    let adj = g.adjacency();
    let count_sides = |v: VertexId, side: &[Option<Label>]| {
        let (mut minus, mut plus) = (0u64, 0u64);
        for &w in &adj[v as usize] {
            match side[w as usize] {
                Some(Label::Minus) => minus += 1,
                Some(Label::Plus) => plus += 1,
                None => {}
            }
        }
        (minus, plus)
    };

    let mut static_value = low_cut;
    let mut hubs_vs_rest = 0u64;
    for &v in &high_degree {
        let (minus, plus) = count_sides(v, &side);
        static_value += minus.max(plus);
        hubs_vs_rest += minus + plus;
    }

    let mut greedy_value = low_cut;
    for &v in &high_degree {
        let (minus, plus) = count_sides(v, &side);
        greedy_value += minus.max(plus);
        side[v as usize] = Some(if minus >= plus { Label::Plus } else { Label::Minus });
    }

    let (value, which) = if greedy_value >= hubs_vs_rest {
        (greedy_value, CutChoice::Greedy)
    } else {
        (hubs_vs_rest, CutChoice::HubsVsRest)
    };
    Ok(OfflineBestOfTwo {
        value,
        which,
        greedy_value,
        static_value,
        hubs_vs_rest,
        high_degree,
    })
}
