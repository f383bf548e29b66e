//! Reverse search over maximal independent sets.
//!
//! Fix a vertex ordering. The root is the lexicographically first maximal
//! independent set (LFMIS). The parent of any other maximal independent set
//! `S` is found by taking the earliest vertex `v` of `LFMIS \ S`, swapping it
//! in for its neighbors `N` in `S`, and greedily extending. Children of `S` are
//! then among the sets `T = (S ∪ N) \ N(N)` for nonempty independent
//! `N ⊆ later(v)`, where `v` lies in the common prefix of `S` and the LFMIS.

mod driver;

pub use driver::{
    enumerate_nonrecursive, enumerate_recursive, EnumStats, ParentMode, ReverseSearch,
};

use thiserror::Error;

use crate::dominance::{DomError, DominanceTester, IndependenceCounter};
use crate::graph::{Graph, Vertex, VertexOrdering};
use crate::set::VertexSet;

/// `later(v)` sets larger than this cannot be scanned with a 64-bit subset counter.
pub const MAX_LATER: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("input set is not independent")]
    NotIndependent,
    #[error("root has no parent")]
    RootHasNoParent,
    #[error("later({vertex}) has {size} vertices; at most {max} are supported", max = MAX_LATER)]
    LaterTooLarge { vertex: Vertex, size: usize },
    #[error("ordering covers {ordering} vertices but the graph has {graph}")]
    SizeMismatch { graph: usize, ordering: usize },
    #[error("dominance tester must start empty")]
    TesterNotEmpty,
    #[error("dominance tester rejected an update: {0}")]
    Tester(#[from] DomError),
}

/// Greedy extension of the independent set `base`, scanning vertices in order.
pub fn lfmis_superset(
    g: &Graph,
    o: &VertexOrdering,
    base: &VertexSet,
) -> Result<VertexSet, EnumError> {
    if !base.is_independent(g) {
        return Err(EnumError::NotIndependent);
    }
    let mut s = base.clone();
    for &v in o.order() {
        if !s.contains(v) && g.neighbors(v).iter().all(|&u| !s.contains(u)) {
            s.insert(v);
        }
    }
    Ok(s)
}

/// The LFMIS itself.
pub fn lfmis(g: &Graph, o: &VertexOrdering) -> VertexSet {
    lfmis_superset(g, o, &VertexSet::new(g.vertex_count())).expect("empty set is independent")
}

/// `later(v)` for each LFMIS vertex `v`: the non-LFMIS vertices whose
/// earliest LFMIS neighbor is `v`, sorted by position.
#[derive(Debug, Clone)]
pub struct LaterPartition {
    later: Vec<Vec<Vertex>>,
    adj_masks: Vec<Vec<u64>>,
    lseq: Vec<Vertex>,
    lseq_index: Vec<usize>,
    owner: Vec<Option<Vertex>>,
}

pub fn compute_later(
    g: &Graph,
    o: &VertexOrdering,
    lfmis: &VertexSet,
) -> Result<LaterPartition, EnumError> {
    let n = g.vertex_count();
    let mut later = vec![Vec::new(); n];
    let mut owner = vec![None; n];
    for &w in o.order() {
        if lfmis.contains(w) {
            continue;
        }
        let v = g
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&u| lfmis.contains(u))
            .min_by_key(|&u| o.position(u))
            .expect("LFMIS is maximal");
        later[v].push(w);
        owner[w] = Some(v);
    }
    let mut adj_masks = vec![Vec::new(); n];
    let mut lseq = Vec::new();
    let mut lseq_index = vec![usize::MAX; n];
    for &v in o.order() {
        if later[v].is_empty() {
            continue;
        }
        if later[v].len() > MAX_LATER {
            return Err(EnumError::LaterTooLarge {
                vertex: v,
                size: later[v].len(),
            });
        }
        adj_masks[v] = later[v]
            .iter()
            .map(|&a| {
                later[v]
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| g.has_edge(a, b))
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        lseq_index[v] = lseq.len();
        lseq.push(v);
    }
    Ok(LaterPartition {
        later,
        adj_masks,
        lseq,
        lseq_index,
        owner,
    })
}

impl LaterPartition {
    pub fn later(&self, v: Vertex) -> &[Vertex] {
        &self.later[v]
    }

    /// LFMIS vertices with nonempty `later`, in order.
    pub fn lseq(&self) -> &[Vertex] {
        &self.lseq
    }

    pub fn lseq_index(&self, v: Vertex) -> Option<usize> {
        let i = self.lseq_index[v];
        (i != usize::MAX).then_some(i)
    }

    /// The LFMIS vertex whose `later` set contains `w`.
    pub fn owner(&self, w: Vertex) -> Option<Vertex> {
        self.owner[w]
    }

    pub fn max_len(&self) -> usize {
        self.later.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_independent_mask(&self, v: Vertex, mask: u64) -> bool {
        let adj = &self.adj_masks[v];
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            if adj[i] & mask != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    /// Next independent nonempty subset of `later(v)` after `after` in
    /// binary-counter order; pass `0` for the first.
    pub fn next_subset(&self, v: Vertex, after: u64) -> Option<u64> {
        let len = self.later[v].len();
        let end = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        let mut m = after;
        while m < end {
            m += 1;
            if self.is_independent_mask(v, m) {
                return Some(m);
            }
        }
        None
    }

    pub fn subset(&self, v: Vertex, mask: u64) -> impl Iterator<Item = Vertex> + '_ {
        let later = &self.later[v];
        (0..later.len())
            .filter(move |&i| mask >> i & 1 == 1)
            .map(move |i| later[i])
    }

    /// Bit mask of `members` within `later(v)`, or `None` if some member is outside it.
    pub fn mask_of(&self, v: Vertex, members: impl IntoIterator<Item = Vertex>) -> Option<u64> {
        let mut mask = 0;
        for w in members {
            let i = self.later[v].iter().position(|&x| x == w)?;
            mask |= 1 << i;
        }
        Some(mask)
    }

    /// All nonempty independent subsets of `later(v)` in counter order.
    pub fn independent_subsets(&self, v: Vertex) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        let mut m = 0;
        while let Some(next) = self.next_subset(v, m) {
            out.push(self.subset(v, next).collect());
            m = next;
        }
        out
    }
}

/// Earliest vertex of `lfmis \ s` in the ordering.
pub fn first_missing(o: &VertexOrdering, lfmis: &VertexSet, s: &VertexSet) -> Option<Vertex> {
    o.order()
        .iter()
        .copied()
        .find(|&v| lfmis.contains(v) && !s.contains(v))
}

/// Parent of the maximal independent set `s` in the reverse-search tree.
pub fn parent(
    g: &Graph,
    o: &VertexOrdering,
    lfmis: &VertexSet,
    s: &VertexSet,
) -> Result<VertexSet, EnumError> {
    let v = first_missing(o, lfmis, s).ok_or(EnumError::RootHasNoParent)?;
    let mut base = s.clone();
    for &u in g.neighbors(v) {
        base.remove(u);
    }
    base.insert(v);
    lfmis_superset(g, o, &base)
}

/// `T = (S ∪ N) \ N(N)` for every nonempty independent `N ⊆ later(v)`.
pub fn candidate_children<'a>(
    g: &'a Graph,
    later: &'a LaterPartition,
    s: &'a VertexSet,
    v: Vertex,
) -> impl Iterator<Item = (Vec<Vertex>, VertexSet)> + 'a {
    let mut mask = 0;
    std::iter::from_fn(move || {
        mask = later.next_subset(v, mask)?;
        let n_set: Vec<Vertex> = later.subset(v, mask).collect();
        let mut t = s.clone();
        for &w in &n_set {
            for &u in g.neighbors(w) {
                t.remove(u);
            }
        }
        for &w in &n_set {
            t.insert(w);
        }
        Some((n_set, t))
    })
}

/// Whether `t` is maximal and has parent `s`. The tester is moved from its
/// current set to `t` by symmetric difference and restored afterwards.
pub fn is_child<D: DominanceTester + ?Sized>(
    g: &Graph,
    o: &VertexOrdering,
    lfmis: &VertexSet,
    s: &VertexSet,
    t: &VertexSet,
    tester: &mut D,
) -> Result<bool, EnumError> {
    let n = g.vertex_count();
    let removed: Vec<Vertex> = (0..n)
        .filter(|&v| tester.contains(v) && !t.contains(v))
        .collect();
    let added: Vec<Vertex> = (0..n)
        .filter(|&v| !tester.contains(v) && t.contains(v))
        .collect();
    for &v in &removed {
        tester.delete(v)?;
    }
    for &v in &added {
        tester.insert(v)?;
    }
    let maximal = tester.undominated_count() == 0;
    for &v in &added {
        tester.delete(v)?;
    }
    for &v in &removed {
        tester.insert(v)?;
    }
    if !maximal || first_missing(o, lfmis, t).is_none() {
        return Ok(false);
    }
    Ok(&parent(g, o, lfmis, t)? == s)
}

/// Greedy extension of `base` that only examines `candidates`, which must
/// include every vertex that could be added. `counts` must hold exactly
/// `base` (oriented consistently with `g`) and is left that way.
pub fn lex_superset_restricted(
    o: &VertexOrdering,
    base: &VertexSet,
    candidates: &[Vertex],
    counts: &mut IndependenceCounter,
) -> Result<VertexSet, EnumError> {
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable_by_key(|&c| o.position(c));
    sorted.dedup();
    let added = greedy_add(&sorted, counts)?;
    let mut out = base.clone();
    for &a in &added {
        out.insert(a);
        counts.delete(a)?;
    }
    Ok(out)
}

/// Adds each sorted candidate with no member neighbor to `counts`; returns
/// the additions, which stay inserted.
fn greedy_add(
    sorted: &[Vertex],
    counts: &mut IndependenceCounter,
) -> Result<Vec<Vertex>, EnumError> {
    let mut added = Vec::new();
    for &c in sorted {
        if !counts.contains(c) && !counts.has_member_neighbor(c) {
            counts.insert(c)?;
            added.push(c);
        }
    }
    Ok(added)
}
