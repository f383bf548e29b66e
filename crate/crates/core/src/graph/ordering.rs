use std::collections::BTreeSet;

use super::{Graph, GraphError, Vertex};

/// A permutation of the vertices together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<Vertex>,
    position: Vec<usize>,
}

impl VertexOrdering {
    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    pub fn from_order(order: Vec<Vertex>) -> Result<Self, GraphError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(GraphError::InvalidOrdering(format!(
                    "vertex {v} out of range"
                )));
            }
            if position[v] != usize::MAX {
                return Err(GraphError::InvalidOrdering(format!("vertex {v} repeated")));
            }
            position[v] = i;
        }
        Ok(VertexOrdering { order, position })
    }

    #[inline]
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    #[inline]
    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    #[inline]
    pub fn vertex_at(&self, i: usize) -> Vertex {
        self.order[i]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Largest number of neighbors any vertex has later in this ordering.
    pub fn max_later_degree(&self, g: &Graph) -> usize {
        g.vertices()
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&u| self.position[u] > self.position[v])
                    .count()
            })
            .max()
            .unwrap_or(0)
    }
}

/// Greedy minimum-degree elimination. Ties are broken by smallest vertex ID.
/// Returns the removal sequence and the degeneracy `k` (largest residual degree
/// seen at removal time).
pub fn degeneracy_ordering(g: &Graph) -> (VertexOrdering, usize) {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); max_deg + 1];
    for v in g.vertices() {
        buckets[degree[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    let mut lo = 0;
    for _ in 0..n {
        while buckets[lo].is_empty() {
            lo += 1;
        }
        let v = buckets[lo].pop_first().expect("nonempty bucket");
        removed[v] = true;
        k = k.max(lo);
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                let d = degree[u];
                buckets[d].remove(&u);
                buckets[d - 1].insert(u);
                degree[u] = d - 1;
            }
        }
        lo = lo.saturating_sub(1);
    }
    let ordering = VertexOrdering::from_order(order).expect("removal sequence is a permutation");
    (ordering, k)
}

/// A direction for every edge of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
    k: usize,
}

impl Orientation {
    /// Builds an orientation from a list of arcs `(tail, head)`. Every edge of
    /// `g` must appear exactly once, in one direction.
    pub fn from_arcs<I>(g: &Graph, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let n = g.vertex_count();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut count = 0;
        for (u, v) in arcs {
            if u >= n || v >= n || !g.has_edge(u, v) {
                return Err(GraphError::InvalidOrientation(format!(
                    "{u}->{v} is not an edge"
                )));
            }
            out[u].push(v);
            inc[v].push(u);
            count += 1;
        }
        for v in 0..n {
            out[v].sort_unstable();
            inc[v].sort_unstable();
        }
        for v in 0..n {
            for &w in &out[v] {
                if out[w].binary_search(&v).is_ok() {
                    return Err(GraphError::InvalidOrientation(format!(
                        "edge {v}-{w} oriented both ways"
                    )));
                }
            }
            if out[v].windows(2).any(|p| p[0] == p[1]) {
                return Err(GraphError::InvalidOrientation(format!(
                    "repeated arc from {v}"
                )));
            }
        }
        if count != g.edge_count() {
            return Err(GraphError::InvalidOrientation(format!(
                "{count} arcs for {} edges",
                g.edge_count()
            )));
        }
        let k = out.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Orientation { out, inc, k })
    }

    #[inline]
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inc[v]
    }

    #[inline]
    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    /// Maximum out-degree.
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }
}

/// Orients every edge from the endpoint earlier in `o` to the later one.
pub fn orient_by_ordering(g: &Graph, o: &VertexOrdering) -> Orientation {
    let n = g.vertex_count();
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        let (a, b) = if o.position(u) < o.position(v) {
            (u, v)
        } else {
            (v, u)
        };
        out[a].push(b);
        inc[b].push(a);
    }
    let k = out.iter().map(Vec::len).max().unwrap_or(0);
    for v in 0..n {
        out[v].sort_unstable();
        inc[v].sort_unstable();
    }
    Orientation { out, inc, k }
}
