//! Dynamic independence testing: is the maintained set `S` free of edges?
//!
//! [`IndependenceCounter`] counts edges inside `S` with per-vertex in-edge
//! counts. [`PairGraphIndependence`] answers the same question with a
//! dominance query on an auxiliary graph whose vertices are the sets of at
//! most two vertices that are empty, single vertices, or edges.

use super::sparse::SparseDomStructure;
use super::{DomError, DominanceTester};
use crate::graph::{Graph, Orientation, Vertex};
use crate::set::VertexSet;

/// Maintains the number of edges with both endpoints in `S`, in time
/// proportional to the out-degree per update.
#[derive(Debug, Clone)]
pub struct IndependenceCounter {
    out: Vec<Vec<Vertex>>,
    members: VertexSet,
    incount: Vec<u32>,
    conflicts: usize,
    work: u64,
}

impl IndependenceCounter {
    pub fn new(orientation: &Orientation) -> Self {
        let n = orientation.vertex_count();
        IndependenceCounter {
            out: (0..n)
                .map(|v| orientation.out_neighbors(v).to_vec())
                .collect(),
            members: VertexSet::new(n),
            incount: vec![0; n],
            conflicts: 0,
            work: 0,
        }
    }

    pub fn insert(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.incount.len())?;
        if self.members.contains(v) {
            return Err(DomError::AlreadyMember(v));
        }
        let mut hits = self.incount[v] as usize;
        for &w in &self.out[v] {
            hits += usize::from(self.members.contains(w));
            self.incount[w] += 1;
        }
        self.members.insert(v);
        self.conflicts += hits;
        self.work += 1 + self.out[v].len() as u64;
        Ok(())
    }

    pub fn delete(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.incount.len())?;
        if !self.members.remove(v) {
            return Err(DomError::NotMember(v));
        }
        let mut hits = self.incount[v] as usize;
        for &w in &self.out[v] {
            hits += usize::from(self.members.contains(w));
            self.incount[w] -= 1;
        }
        self.conflicts -= hits;
        self.work += 1 + self.out[v].len() as u64;
        Ok(())
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(v)
    }

    /// Edges with both endpoints in `S`.
    #[inline]
    pub fn conflicts(&self) -> usize {
        self.conflicts
    }

    #[inline]
    pub fn is_independent(&self) -> bool {
        self.conflicts == 0
    }

    /// Whether some member of `S` is adjacent to `v`.
    #[inline]
    pub fn has_member_neighbor(&self, v: Vertex) -> bool {
        self.incount[v] > 0 || self.out[v].iter().any(|&w| self.members.contains(w))
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn work(&self) -> u64 {
        self.work
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairLabel {
    Empty,
    Single(Vertex),
    Pair(Vertex, Vertex),
}

/// Vertex `0` is the empty set, `1 + v` is `{v}`, and `1 + n + j` is the
/// `j`-th edge of the input in [`Graph::edges`] order. Every edge joins two
/// sets differing in one element and is oriented from the larger set, so the
/// out-degree is at most two.
#[derive(Debug, Clone)]
pub struct PairGraph {
    pub graph: Graph,
    pub orientation: Orientation,
    pub labels: Vec<PairLabel>,
}

impl PairGraph {
    pub fn single(v: Vertex) -> usize {
        1 + v
    }
}

pub fn build_pair_graph(g: &Graph) -> PairGraph {
    let n = g.vertex_count();
    let size = 1 + n + g.edge_count();
    let mut labels = Vec::with_capacity(size);
    labels.push(PairLabel::Empty);
    labels.extend(g.vertices().map(PairLabel::Single));
    let mut arcs = Vec::with_capacity(n + 2 * g.edge_count());
    arcs.extend(g.vertices().map(|v| (1 + v, 0)));
    for (j, (a, b)) in g.edges().enumerate() {
        labels.push(PairLabel::Pair(a, b));
        arcs.push((1 + n + j, 1 + a));
        arcs.push((1 + n + j, 1 + b));
    }
    let graph = Graph::from_edges(size, arcs.iter().copied()).expect("pair graph edges are valid");
    let orientation =
        Orientation::from_arcs(&graph, arcs).expect("every pair graph edge oriented once");
    PairGraph {
        graph,
        orientation,
        labels,
    }
}

/// Independence of `S` as a dominance question: `{∅} ∪ {{v} : v ∉ S}`
/// dominates the pair graph iff no edge has both endpoints in `S`. The number
/// of undominated pair-graph vertices equals the number of edges inside `S`.
#[derive(Debug, Clone)]
pub struct PairGraphIndependence {
    inner: SparseDomStructure,
    members: VertexSet,
}

impl PairGraphIndependence {
    pub fn new(g: &Graph) -> Self {
        let pg = build_pair_graph(g);
        let mut inner = SparseDomStructure::new(&pg.graph, &pg.orientation, None);
        inner.insert(0).expect("fresh structure");
        for v in g.vertices() {
            inner.insert(PairGraph::single(v)).expect("fresh structure");
        }
        PairGraphIndependence {
            inner,
            members: VertexSet::new(g.vertex_count()),
        }
    }

    pub fn insert(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.members.universe())?;
        if !self.members.insert(v) {
            return Err(DomError::AlreadyMember(v));
        }
        self.inner.delete(PairGraph::single(v))
    }

    pub fn delete(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.members.universe())?;
        if !self.members.remove(v) {
            return Err(DomError::NotMember(v));
        }
        self.inner.insert(PairGraph::single(v))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(v)
    }

    /// Edges with both endpoints in `S`.
    pub fn conflicts(&self) -> usize {
        self.inner.undominated_count()
    }

    pub fn is_independent(&self) -> bool {
        self.inner.undominated_count() == 0
    }

    pub fn inner(&self) -> &SparseDomStructure {
        &self.inner
    }
}
