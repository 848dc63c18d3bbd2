//! Graph streams, canonical edges and the offline reference graph.

mod generators;
pub mod io;
mod maxcut;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use generators::{
    gen_dynamic_stream, gen_hub_instance, gen_planted_bipartite, shuffle_to_random_order, PlantedInstance,
};
pub use maxcut::{brute_force_maxcut, brute_force_maxcut_capped, MaxCut, DEFAULT_N_EXACT};

pub type VertexId = u32;

/// A side of a cut, also used for oracle predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Plus,
    Minus,
}

impl Label {
    pub fn as_i8(self) -> i8 {
        match self {
            Label::Plus => 1,
            Label::Minus => -1,
        }
    }

    pub fn from_i64(x: i64) -> Option<Self> {
        match x {
            1 => Some(Label::Plus),
            -1 => Some(Label::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Label::Plus => Label::Minus,
            Label::Minus => Label::Plus,
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = i64::deserialize(d)?;
        Label::from_i64(x).ok_or_else(|| serde::de::Error::custom(format!("label must be +1 or -1, got {x}")))
    }
}

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Result<Self> {
        let (u, v) = canonicalize_edge(a, b)?;
        Ok(Edge { u, v })
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// Dense index of the edge in `[0, n^2)`.
    pub fn index(&self, n: u32) -> u64 {
        self.u as u64 * n as u64 + self.v as u64
    }

    pub fn from_index(index: u64, n: u32) -> Option<Self> {
        let n = n as u64;
        if n == 0 {
            return None;
        }
        let (u, v) = (index / n, index % n);
        (u < v && v < n).then_some(Edge {
            u: u as VertexId,
            v: v as VertexId,
        })
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

pub fn canonicalize_edge(u: VertexId, v: VertexId) -> Result<(VertexId, VertexId)> {
    if u == v {
        return Err(Error::MalformedEdge { u, v });
    }
    Ok((u.min(v), u.max(v)))
}

/// One stream item: an edge and its multiplicity change, +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeEvent {
    pub edge: Edge,
    pub delta: i64,
}

impl EdgeEvent {
    pub fn insert(edge: Edge) -> Self {
        EdgeEvent { edge, delta: 1 }
    }

    pub fn delete(edge: Edge) -> Self {
        EdgeEvent { edge, delta: -1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StreamKind {
    InsertionArbitrary,
    InsertionRandomOrder,
    Dynamic,
}

impl StreamKind {
    pub fn is_insertion_only(self) -> bool {
        !matches!(self, StreamKind::Dynamic)
    }

    pub fn tag(self) -> &'static str {
        match self {
            StreamKind::InsertionArbitrary => "ins",
            StreamKind::InsertionRandomOrder => "rand",
            StreamKind::Dynamic => "dyn",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "ins" => Some(StreamKind::InsertionArbitrary),
            "rand" => Some(StreamKind::InsertionRandomOrder),
            "dyn" => Some(StreamKind::Dynamic),
            _ => None,
        }
    }
}

impl fmt::Display for StreamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStream {
    pub n: u32,
    pub kind: StreamKind,
    pub events: Vec<EdgeEvent>,
}

impl GraphStream {
    pub fn new(n: u32, kind: StreamKind, events: Vec<EdgeEvent>) -> Self {
        GraphStream { n, kind, events }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub(crate) fn require_insertion_only(&self) -> Result<()> {
        if self.kind.is_insertion_only() {
            Ok(())
        } else {
            Err(Error::StreamKind {
                expected: "an insertion-only stream",
                found: self.kind,
            })
        }
    }

    pub(crate) fn require_kind(&self, kind: StreamKind, expected: &'static str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::StreamKind {
                expected,
                found: self.kind,
            })
        }
    }
}

/// Simple undirected graph; `edges` is sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: u32,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        if let Some(e) = edges.iter().find(|e| e.v >= n) {
            return Err(Error::Domain(format!("edge {e} out of range for n = {n}")));
        }
        Ok(Graph { n, edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n as usize];
        for e in &self.edges {
            deg[e.u as usize] += 1;
            deg[e.v as usize] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for e in &self.edges {
            adj[e.u as usize].push(e.v);
            adj[e.v as usize].push(e.u);
        }
        adj
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Number of edges cut by `assignment`.
    pub fn cut_value(&self, assignment: &[Label]) -> usize {
        self.edges
            .iter()
            .filter(|e| assignment[e.u as usize] != assignment[e.v as usize])
            .count()
    }

    /// An insertion-only stream of the edges in sorted order.
    pub fn to_stream(&self) -> GraphStream {
        GraphStream::new(
            self.n,
            StreamKind::InsertionArbitrary,
            self.edges.iter().copied().map(EdgeEvent::insert).collect(),
        )
    }
}

/// Replays the stream and returns the graph of edges whose final multiplicity is 1.
pub fn build_final_graph(stream: &GraphStream) -> Result<Graph> {
    let mut present: HashSet<Edge> = HashSet::new();
    for (index, ev) in stream.events.iter().enumerate() {
        let e = ev.edge;
        if e.u >= e.v {
            return Err(Error::StreamValidity {
                index,
                reason: format!("edge {e} is not canonical"),
            });
        }
        if e.v >= stream.n {
            return Err(Error::StreamValidity {
                index,
                reason: format!("vertex {} out of range for n = {}", e.v, stream.n),
            });
        }
        match ev.delta {
            1 => {
                if !present.insert(e) {
                    return Err(Error::StreamValidity {
                        index,
                        reason: format!("insertion of edge {e} which is already present"),
                    });
                }
            }
            -1 => {
                if stream.kind.is_insertion_only() {
                    return Err(Error::StreamValidity {
                        index,
                        reason: format!("deletion of {e} in an insertion-only stream"),
                    });
                }
                if !present.remove(&e) {
                    return Err(Error::StreamValidity {
                        index,
                        reason: format!("deletion of edge {e} which is absent"),
                    });
                }
            }
            d => {
                return Err(Error::StreamValidity {
                    index,
                    reason: format!("delta must be +1 or -1, got {d}"),
                })
            }
        }
    }
    Graph::new(stream.n, present)
}

/// High-degree threshold `eps^2 * m / c` with `c = 80 / delta`.
pub fn high_degree_threshold(eps: f64, delta: f64, m: u64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::Domain(format!("eps must be in (0, 1/2], got {eps}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta must be in (0, 1), got {delta}")));
    }
    let c = 80.0 / delta;
    Ok(eps * eps * m as f64 / c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ins(u: u32, v: u32) -> EdgeEvent {
        EdgeEvent::insert(Edge::new(u, v).unwrap())
    }

    fn del(u: u32, v: u32) -> EdgeEvent {
        EdgeEvent::delete(Edge::new(u, v).unwrap())
    }

    #[test]
    fn canonicalize_orders_and_rejects_loops() {
        assert_eq!(canonicalize_edge(5, 2).unwrap(), (2, 5));
        assert_eq!(canonicalize_edge(0, 1).unwrap(), (0, 1));
        assert!(matches!(
            canonicalize_edge(3, 3),
            Err(Error::MalformedEdge { u: 3, v: 3 })
        ));
    }

    #[test]
    fn final_graph_replay() {
        let s = GraphStream::new(3, StreamKind::InsertionArbitrary, vec![ins(0, 1)]);
        assert_eq!(build_final_graph(&s).unwrap().edges(), &[Edge { u: 0, v: 1 }]);

        let s = GraphStream::new(3, StreamKind::Dynamic, vec![ins(0, 1), del(0, 1)]);
        assert_eq!(build_final_graph(&s).unwrap().m(), 0);

        let s = GraphStream::new(3, StreamKind::Dynamic, vec![ins(0, 1), ins(1, 2), del(0, 1), ins(0, 2)]);
        let g = build_final_graph(&s).unwrap();
        assert_eq!(g.edges(), &[Edge { u: 0, v: 2 }, Edge { u: 1, v: 2 }]);
    }

    #[test]
    fn final_graph_reports_offending_event() {
        let s = GraphStream::new(3, StreamKind::Dynamic, vec![ins(0, 1), ins(1, 2), ins(0, 1)]);
        assert!(matches!(
            build_final_graph(&s),
            Err(Error::StreamValidity { index: 2, .. })
        ));
        let s = GraphStream::new(3, StreamKind::Dynamic, vec![ins(0, 1), del(1, 2)]);
        assert!(matches!(
            build_final_graph(&s),
            Err(Error::StreamValidity { index: 1, .. })
        ));
        let s = GraphStream::new(2, StreamKind::InsertionArbitrary, vec![ins(0, 1), ins(0, 2)]);
        assert!(matches!(
            build_final_graph(&s),
            Err(Error::StreamValidity { index: 1, .. })
        ));
    }

    #[test]
    fn threshold_formula() {
        assert!((high_degree_threshold(0.5, 0.2, 160_000).unwrap() - 100.0).abs() < 1e-9);
        assert_eq!(high_degree_threshold(0.3, 0.5, 0).unwrap(), 0.0);
        let near_one = high_degree_threshold(0.5, 1.0 - 1e-12, 8000).unwrap();
        assert!((near_one - 0.25 * 8000.0 / 80.0).abs() < 1e-6);
        assert!(high_degree_threshold(0.0, 0.2, 10).is_err());
        assert!(high_degree_threshold(0.6, 0.2, 10).is_err());
        assert!(high_degree_threshold(0.5, 1.0, 10).is_err());
    }

    #[test]
    fn edge_index_roundtrip() {
        let e = Edge::new(7, 3).unwrap();
        assert_eq!(Edge::from_index(e.index(10), 10), Some(e));
        assert_eq!(Edge::from_index(5 * 10 + 5, 10), None);
    }
}
