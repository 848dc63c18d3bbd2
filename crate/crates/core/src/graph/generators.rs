//! Planted instances whose optimal cut value is known by construction.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{build_final_graph, Edge, EdgeEvent, GraphStream, Label, StreamKind, VertexId};
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub stream: GraphStream,
    pub opt_value: u64,
    pub opt_assignment: Option<Vec<Label>>,
    pub opt_is_exact: bool,
}

/// JSON sidecar carrying the planted optimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedMetadata {
    pub opt_value: u64,
    pub opt_is_exact: bool,
    pub opt_assignment: Option<Vec<Label>>,
}

impl PlantedInstance {
    pub fn metadata(&self) -> PlantedMetadata {
        PlantedMetadata {
            opt_value: self.opt_value,
            opt_is_exact: self.opt_is_exact,
            opt_assignment: self.opt_assignment.clone(),
        }
    }

    pub fn from_parts(stream: GraphStream, meta: PlantedMetadata) -> Self {
        PlantedInstance {
            stream,
            opt_value: meta.opt_value,
            opt_assignment: meta.opt_assignment,
            opt_is_exact: meta.opt_is_exact,
        }
    }
}

/// `m` distinct edges drawn without replacement from `left x right`, sorted.
fn sample_bipartite_edges<R: Rng>(
    rng: &mut R,
    left: std::ops::Range<VertexId>,
    right: std::ops::Range<VertexId>,
    m: usize,
) -> Vec<Edge> {
    let nr = right.len();
    let capacity = left.len() * nr;
    let mut edges: Vec<Edge> = index::sample(rng, capacity, m)
        .into_iter()
        .map(|k| {
            let a = left.start + (k / nr) as VertexId;
            let b = right.start + (k % nr) as VertexId;
            Edge {
                u: a.min(b),
                v: a.max(b),
            }
        })
        .collect();
    edges.sort_unstable();
    edges
}

fn bipartite_assignment(n: u32, n_left: u32) -> Vec<Label> {
    (0..n)
        .map(|v| if v < n_left { Label::Plus } else { Label::Minus })
        .collect()
}

/// Vertices `[0, n_left)` form the left side and `[n_left, n_left + n_right)` the right.
pub fn gen_planted_bipartite(n_left: u32, n_right: u32, m: usize, seed: u64) -> Result<PlantedInstance> {
    let capacity = n_left as usize * n_right as usize;
    if m > capacity {
        return Err(Error::Capacity(format!(
            "{m} edges requested but K({n_left},{n_right}) has only {capacity}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let n = n_left + n_right;
    let edges = sample_bipartite_edges(&mut rng, 0..n_left, n_left..n, m);
    Ok(PlantedInstance {
        stream: GraphStream::new(
            n,
            StreamKind::InsertionArbitrary,
            edges.into_iter().map(EdgeEvent::insert).collect(),
        ),
        opt_value: m as u64,
        opt_assignment: Some(bipartite_assignment(n, n_left)),
        opt_is_exact: true,
    })
}

/// Bipartite base of `m_low` edges plus `hubs` left vertices, each joined to
/// `hub_degree` distinct right vertices.
///
/// The left side is `[0, n/2)` and the hubs are its first `hubs` vertices; base
/// edges never touch a hub, so every hub has degree exactly `hub_degree`.
pub fn gen_hub_instance(n: u32, m_low: usize, hubs: u32, hub_degree: u32, seed: u64) -> Result<PlantedInstance> {
    let n_left = n / 2;
    let n_right = n - n_left;
    if hubs > n_left {
        return Err(Error::Capacity(format!(
            "{hubs} hubs requested but the left side has only {n_left} vertices"
        )));
    }
    let base_capacity = (n_left - hubs) as usize * n_right as usize;
    if m_low > base_capacity {
        return Err(Error::Capacity(format!(
            "{m_low} base edges requested but only {base_capacity} non-hub pairs exist"
        )));
    }
    if hubs > 0 && hub_degree > n_right {
        return Err(Error::Capacity(format!(
            "hub degree {hub_degree} exceeds the {n_right} vertices on the opposite side"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = sample_bipartite_edges(&mut rng, hubs..n_left, n_left..n, m_low);
    for hub in 0..hubs {
        let mut nbrs: Vec<VertexId> = index::sample(&mut rng, n_right as usize, hub_degree as usize)
            .into_iter()
            .map(|k| n_left + k as VertexId)
            .collect();
        nbrs.sort_unstable();
        edges.extend(nbrs.into_iter().map(|w| Edge { u: hub, v: w }));
    }
    let m = edges.len();
    Ok(PlantedInstance {
        stream: GraphStream::new(
            n,
            StreamKind::InsertionArbitrary,
            edges.into_iter().map(EdgeEvent::insert).collect(),
        ),
        opt_value: m as u64,
        opt_assignment: Some(bipartite_assignment(n, n_left)),
        opt_is_exact: true,
    })
}

/// Uniform permutation of an insertion-only stream (Fisher-Yates).
pub fn shuffle_to_random_order(stream: &GraphStream, seed: u64) -> Result<GraphStream> {
    stream.require_insertion_only()?;
    let mut events = stream.events.clone();
    events.shuffle(&mut rng_from_seed(seed));
    Ok(GraphStream::new(stream.n, StreamKind::InsertionRandomOrder, events))
}

/// Interleaves `churn_edges` insert-then-delete pairs of fresh edges into the
/// base stream. The final graph and the planted optimum are unchanged.
pub fn gen_dynamic_stream(base: &PlantedInstance, churn_edges: usize, seed: u64) -> Result<PlantedInstance> {
    let n = base.stream.n;
    let touched: HashSet<Edge> = base.stream.events.iter().map(|e| e.edge).collect();
    let all_pairs = n as usize * n.saturating_sub(1) as usize / 2;
    let capacity = all_pairs - touched.len();
    if churn_edges > capacity {
        return Err(Error::Capacity(format!(
            "{churn_edges} churn edges requested but only {capacity} unused vertex pairs exist"
        )));
    }
    let mut rng = rng_from_seed(seed);

    let churn: Vec<Edge> = if churn_edges.saturating_mul(2) > capacity {
        let mut free = Vec::with_capacity(capacity);
        for u in 0..n {
            for v in u + 1..n {
                let e = Edge { u, v };
                if !touched.contains(&e) {
                    free.push(e);
                }
            }
        }
        index::sample(&mut rng, free.len(), churn_edges)
            .into_iter()
            .map(|k| free[k])
            .collect()
    } else {
        let mut chosen = HashSet::with_capacity(churn_edges);
        let mut out = Vec::with_capacity(churn_edges);
        while out.len() < churn_edges {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b {
                continue;
            }
            let e = Edge {
                u: a.min(b),
                v: a.max(b),
            };
            if !touched.contains(&e) && chosen.insert(e) {
                out.push(e);
            }
        }
        out
    };

    enum Slot {
        Base,
        Churn(usize),
    }
    let mut slots: Vec<Slot> = Vec::with_capacity(base.stream.len() + 2 * churn.len());
    slots.extend(base.stream.events.iter().map(|_| Slot::Base));
    for j in 0..churn.len() {
        slots.push(Slot::Churn(j));
        slots.push(Slot::Churn(j));
    }
    slots.shuffle(&mut rng);

    let mut base_events = base.stream.events.iter();
    let mut inserted = vec![false; churn.len()];
    let events = slots
        .into_iter()
        .map(|slot| match slot {
            Slot::Base => *base_events.next().expect("one base slot per base event"),
            Slot::Churn(j) if !inserted[j] => {
                inserted[j] = true;
                EdgeEvent::insert(churn[j])
            }
            Slot::Churn(j) => EdgeEvent::delete(churn[j]),
        })
        .collect();

    let stream = GraphStream::new(n, StreamKind::Dynamic, events);
    debug_assert_eq!(build_final_graph(&stream).ok(), build_final_graph(&base.stream).ok());
    Ok(PlantedInstance {
        stream,
        opt_value: base.opt_value,
        opt_assignment: base.opt_assignment.clone(),
        opt_is_exact: base.opt_is_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_force_maxcut, build_final_graph};
    use proptest::prelude::*;

    #[test]
    fn complete_bipartite_and_single_edge() {
        let inst = gen_planted_bipartite(2, 3, 6, 1).unwrap();
        let g = build_final_graph(&inst.stream).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(inst.opt_value, 6);
        assert_eq!(brute_force_maxcut(&g).unwrap().value, 6);

        let inst = gen_planted_bipartite(1, 1, 1, 9).unwrap();
        assert_eq!(inst.stream.events, vec![EdgeEvent::insert(Edge { u: 0, v: 1 })]);
        assert_eq!(inst.opt_value, 1);
    }

    #[test]
    fn bipartite_capacity_error() {
        assert!(matches!(gen_planted_bipartite(2, 3, 7, 0), Err(Error::Capacity(_))));
    }

    #[test]
    fn large_bipartite_is_simple_and_cut_by_planted_sides() {
        let inst = gen_planted_bipartite(100, 100, 5000, 4).unwrap();
        let g = build_final_graph(&inst.stream).unwrap();
        assert_eq!(g.m(), 5000);
        let planted = inst.opt_assignment.as_ref().unwrap();
        assert_eq!(g.cut_value(planted), 5000);
        // n = 16 downscale, checked by exhaustive search.
        let small = gen_planted_bipartite(8, 8, 40, 4).unwrap();
        let gs = build_final_graph(&small.stream).unwrap();
        assert_eq!(brute_force_maxcut(&gs).unwrap().value as u64, small.opt_value);
    }

    #[test]
    fn hub_instance_shape() {
        let inst = gen_hub_instance(20, 10, 1, 8, 3).unwrap();
        let g = build_final_graph(&inst.stream).unwrap();
        assert_eq!(g.m(), 18);
        assert_eq!(inst.opt_value, 18);
        assert!(g.max_degree() >= 8);
        assert_eq!(g.degrees()[0], 8);
        assert_eq!(brute_force_maxcut(&g).unwrap().value, 18);
    }

    #[test]
    fn hub_degenerate_cases() {
        let star = gen_hub_instance(12, 0, 1, 5, 2).unwrap();
        let g = build_final_graph(&star.stream).unwrap();
        assert_eq!(g.m(), 5);
        assert_eq!(g.degrees()[0], 5);
        assert_eq!(star.opt_value, 5);

        let a = gen_hub_instance(40, 30, 0, 0, 11).unwrap();
        let b = gen_planted_bipartite(20, 20, 30, 11).unwrap();
        assert_eq!(a, b);

        assert!(matches!(gen_hub_instance(10, 0, 1, 6, 0), Err(Error::Capacity(_))));
        assert!(matches!(gen_hub_instance(10, 21, 1, 1, 0), Err(Error::Capacity(_))));
    }

    #[test]
    fn shuffle_degenerate_and_deterministic() {
        let empty = GraphStream::new(4, StreamKind::InsertionArbitrary, vec![]);
        assert!(shuffle_to_random_order(&empty, 1).unwrap().events.is_empty());

        let one = gen_planted_bipartite(1, 1, 1, 0).unwrap().stream;
        assert_eq!(shuffle_to_random_order(&one, 5).unwrap().events, one.events);

        let three = gen_planted_bipartite(2, 2, 3, 0).unwrap().stream;
        let a = shuffle_to_random_order(&three, 42).unwrap();
        let b = shuffle_to_random_order(&three, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.kind, StreamKind::InsertionRandomOrder);

        let dynamic = GraphStream::new(2, StreamKind::Dynamic, vec![]);
        assert!(matches!(
            shuffle_to_random_order(&dynamic, 0),
            Err(Error::StreamKind { .. })
        ));
    }

    #[test]
    fn dynamic_churn_examples() {
        let base = gen_planted_bipartite(2, 2, 3, 1).unwrap();
        let d = gen_dynamic_stream(&base, 0, 5).unwrap();
        assert_eq!(d.stream.kind, StreamKind::Dynamic);
        assert_eq!(d.stream.events, base.stream.events);

        // Only (0, 2) is free on three vertices with edge (0, 1) and (1, 2) used.
        let single = PlantedInstance {
            stream: GraphStream::new(
                3,
                StreamKind::InsertionArbitrary,
                vec![
                    EdgeEvent::insert(Edge { u: 0, v: 1 }),
                    EdgeEvent::insert(Edge { u: 1, v: 2 }),
                ],
            ),
            opt_value: 2,
            opt_assignment: None,
            opt_is_exact: true,
        };
        let d = gen_dynamic_stream(&single, 1, 0).unwrap();
        let e02 = Edge { u: 0, v: 2 };
        assert!(d.stream.events.contains(&EdgeEvent::insert(e02)));
        assert!(d.stream.events.contains(&EdgeEvent::delete(e02)));
        assert_eq!(
            build_final_graph(&d.stream).unwrap(),
            build_final_graph(&single.stream).unwrap()
        );
        assert!(matches!(gen_dynamic_stream(&single, 2, 0), Err(Error::Capacity(_))));
    }

    proptest! {
        #[test]
        fn churn_preserves_final_graph(seed in any::<u64>(), churn in 0usize..=58) {
            let base = gen_planted_bipartite(6, 7, 20, seed).unwrap();
            let d = gen_dynamic_stream(&base, churn, seed ^ 1).unwrap();
            prop_assert_eq!(d.stream.len(), 20 + 2 * churn);
            prop_assert_eq!(build_final_graph(&d.stream).unwrap(), build_final_graph(&base.stream).unwrap());
        }

        #[test]
        fn shuffle_preserves_multiset(seed in any::<u64>()) {
            let s = gen_planted_bipartite(5, 5, 12, 3).unwrap().stream;
            let mut a = shuffle_to_random_order(&s, seed).unwrap().events;
            let mut b = s.events.clone();
            a.sort_by_key(|e| e.edge);
            b.sort_by_key(|e| e.edge);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn small_planted_instances_match_brute_force(seed in any::<u64>(), m in 0usize..30, hubs in 0u32..3) {
            let inst = gen_hub_instance(16, m.min(40), hubs, if hubs > 0 { 4 } else { 0 }, seed).unwrap();
            let g = build_final_graph(&inst.stream).unwrap();
            prop_assert_eq!(brute_force_maxcut(&g).unwrap().value as u64, inst.opt_value);
        }
    }
}
