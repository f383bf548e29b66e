use std::ops::ControlFlow;

use super::{compute_later, greedy_add, lfmis, lfmis_superset, EnumError, LaterPartition};
use crate::dominance::{DominanceTester, IndependenceCounter};
use crate::graph::{orient_by_ordering, Graph, Vertex, VertexOrdering};
use crate::set::VertexSet;

/// How the parent of a candidate child is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParentMode {
    /// Greedy extension over the neighbors of `N` only, using in-edge counters.
    #[default]
    Restricted,
    /// Full greedy pass over all vertices. Slow; for differential testing.
    Direct,
}

/// Operation counts for one enumeration. `total_ops` is the sum of
/// dominance-tester work, independence-counter work and scanning steps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub sets: u64,
    pub candidates_tested: u64,
    pub tester_updates: u64,
    pub parent_computations: u64,
    pub scan_ops: u64,
    pub total_ops: u64,
    /// Most operations between consecutive outputs (or start/end).
    pub max_delay_ops: u64,
}

impl EnumStats {
    pub fn ops_per_set(&self) -> f64 {
        if self.sets == 0 {
            0.0
        } else {
            self.total_ops as f64 / self.sets as f64
        }
    }
}

/// Reverse-search state: the current set `S`, a dominance tester holding
/// `S`, and in-edge counters holding `S` for parent computations.
pub struct ReverseSearch<'a, D: DominanceTester> {
    g: &'a Graph,
    o: &'a VertexOrdering,
    lfmis: VertexSet,
    lfmis_seq: Vec<Vertex>,
    later: LaterPartition,
    s: VertexSet,
    tester: D,
    counts: IndependenceCounter,
    mode: ParentMode,
    stats: EnumStats,
    last_emit_ops: u64,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'a, D: DominanceTester> ReverseSearch<'a, D> {
    /// `tester` must be built over `g` and hold the empty set.
    pub fn new(g: &'a Graph, o: &'a VertexOrdering, mut tester: D) -> Result<Self, EnumError> {
        let n = g.vertex_count();
        if o.len() != n {
            return Err(EnumError::SizeMismatch {
                graph: n,
                ordering: o.len(),
            });
        }
        if tester.undominated_count() != n || (0..n).any(|v| tester.contains(v)) {
            return Err(EnumError::TesterNotEmpty);
        }
        let root = lfmis(g, o);
        let later = compute_later(g, o, &root)?;
        let mut counts = IndependenceCounter::new(&orient_by_ordering(g, o));
        let lfmis_seq: Vec<Vertex> = o
            .order()
            .iter()
            .copied()
            .filter(|&v| root.contains(v))
            .collect();
        for &v in &lfmis_seq {
            tester.insert(v)?;
            counts.insert(v)?;
        }
        let mut rs = ReverseSearch {
            g,
            o,
            s: root.clone(),
            lfmis: root,
            lfmis_seq,
            later,
            tester,
            counts,
            mode: ParentMode::default(),
            stats: EnumStats::default(),
            last_emit_ops: 0,
            stamp: vec![0; n],
            epoch: 0,
        };
        rs.last_emit_ops = rs.ops();
        Ok(rs)
    }

    pub fn with_parent_mode(mut self, mode: ParentMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn lfmis(&self) -> &VertexSet {
        &self.lfmis
    }

    pub fn later(&self) -> &LaterPartition {
        &self.later
    }

    pub fn current(&self) -> &VertexSet {
        &self.s
    }

    pub fn tester(&self) -> &D {
        &self.tester
    }

    pub fn into_tester(self) -> D {
        self.tester
    }

    fn ops(&self) -> u64 {
        self.tester.work() + self.counts.work() + self.stats.scan_ops
    }

    pub fn stats(&self) -> EnumStats {
        let mut stats = self.stats.clone();
        stats.total_ops = self.ops();
        stats.max_delay_ops = stats
            .max_delay_ops
            .max(stats.total_ops - self.last_emit_ops);
        stats
    }

    fn emit<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&VertexSet) -> ControlFlow<()>,
    {
        let ops = self.ops();
        self.stats.sets += 1;
        self.stats.max_delay_ops = self.stats.max_delay_ops.max(ops - self.last_emit_ops);
        self.last_emit_ops = ops;
        visit(&self.s)
    }

    /// Position of the earliest LFMIS vertex missing from `S`, or `n`.
    fn first_missing_pos(&mut self) -> usize {
        for (i, &v) in self.lfmis_seq.iter().enumerate() {
            if !self.s.contains(v) {
                self.stats.scan_ops += i as u64 + 1;
                return self.o.position(v);
            }
        }
        self.stats.scan_ops += self.lfmis_seq.len() as u64;
        self.g.vertex_count()
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Neighbors of the vertex set `n_set`, without repeats.
    fn neighborhood(&mut self, n_set: &[Vertex]) -> Vec<Vertex> {
        let epoch = self.next_epoch();
        let mut out = Vec::new();
        for &w in n_set {
            for &u in self.g.neighbors(w) {
                self.stats.scan_ops += 1;
                if self.stamp[u] != epoch {
                    self.stamp[u] = epoch;
                    out.push(u);
                }
            }
        }
        out
    }

    fn sort_by_position(&mut self, list: &mut [Vertex]) {
        let o = self.o;
        list.sort_unstable_by_key(|&c| o.position(c));
        let len = list.len() as u64;
        self.stats.scan_ops += len * (64 - len.leading_zeros() as u64).max(1);
    }

    /// Tests the candidate child for `(v, mask)`. On success `S` becomes the
    /// child and the vertices removed from `S` are returned.
    fn try_child(&mut self, v: Vertex, mask: u64) -> Result<Option<Vec<Vertex>>, EnumError> {
        self.stats.candidates_tested += 1;
        let n_set: Vec<Vertex> = self.later.subset(v, mask).collect();
        let nn = self.neighborhood(&n_set);
        let removed: Vec<Vertex> = nn.iter().copied().filter(|&u| self.s.contains(u)).collect();
        debug_assert!(removed.contains(&v));
        for &w in &n_set {
            self.tester.insert(w)?;
        }
        for &u in &removed {
            self.tester.delete(u)?;
        }
        self.stats.tester_updates += (n_set.len() + removed.len()) as u64;
        let accept = self.tester.undominated_count() == 0
            && match self.mode {
                ParentMode::Restricted => self.restricted_parent_is_current(v, &removed, nn)?,
                ParentMode::Direct => self.direct_parent_is_current(v, &n_set, &removed)?,
            };
        if !accept {
            for &u in &removed {
                self.tester.insert(u)?;
            }
            for &w in &n_set {
                self.tester.delete(w)?;
            }
            self.stats.tester_updates += (n_set.len() + removed.len()) as u64;
            return Ok(None);
        }
        for &u in &removed {
            self.s.remove(u);
            self.counts.delete(u)?;
        }
        for &w in &n_set {
            self.s.insert(w);
            self.counts.insert(w)?;
        }
        Ok(Some(removed))
    }

    /// With `T` maximal: is the greedy extension of `(S \ removed) ∪ {v}` equal to `S`?
    fn restricted_parent_is_current(
        &mut self,
        v: Vertex,
        removed: &[Vertex],
        mut nn: Vec<Vertex>,
    ) -> Result<bool, EnumError> {
        self.stats.parent_computations += 1;
        let o = self.o;
        let earliest = removed
            .iter()
            .copied()
            .filter(|&u| self.lfmis.contains(u))
            .min_by_key(|&u| o.position(u));
        if earliest != Some(v) {
            return Ok(false);
        }
        for &u in removed {
            if u != v {
                self.counts.delete(u)?;
            }
        }
        nn.retain(|&u| u != v);
        self.sort_by_position(&mut nn);
        let added = greedy_add(&nn, &mut self.counts)?;
        let same = added.len() + 1 == removed.len() && added.iter().all(|&a| self.s.contains(a));
        for &a in &added {
            self.counts.delete(a)?;
        }
        for &u in removed {
            if u != v {
                self.counts.insert(u)?;
            }
        }
        Ok(same)
    }

    fn direct_parent_is_current(
        &mut self,
        v: Vertex,
        n_set: &[Vertex],
        removed: &[Vertex],
    ) -> Result<bool, EnumError> {
        self.stats.parent_computations += 1;
        let mut t = self.s.clone();
        for &u in removed {
            t.remove(u);
        }
        for &w in n_set {
            t.insert(w);
        }
        let Some(first) = super::first_missing(self.o, &self.lfmis, &t) else {
            return Ok(false);
        };
        if first != v {
            return Ok(false);
        }
        let mut base = t;
        for &w in n_set {
            base.remove(w);
        }
        base.insert(v);
        self.stats.scan_ops += self.g.vertex_count() as u64;
        Ok(lfmis_superset(self.g, self.o, &base)? == self.s)
    }

    fn revert_child(&mut self, v: Vertex, mask: u64, removed: &[Vertex]) -> Result<(), EnumError> {
        let n_set: Vec<Vertex> = self.later.subset(v, mask).collect();
        for &w in &n_set {
            self.s.remove(w);
            self.counts.delete(w)?;
            self.tester.delete(w)?;
        }
        for &u in removed {
            self.s.insert(u);
            self.counts.insert(u)?;
            self.tester.insert(u)?;
        }
        self.stats.tester_updates += (n_set.len() + removed.len()) as u64;
        Ok(())
    }

    /// Depth-first search with genuine recursion; stack depth is bounded by
    /// the LFMIS size.
    pub fn run_recursive<F>(&mut self, mut visit: F) -> Result<EnumStats, EnumError>
    where
        F: FnMut(&VertexSet) -> ControlFlow<()>,
    {
        let _ = self.search(&mut visit)?;
        Ok(self.stats())
    }

    fn search<F>(&mut self, visit: &mut F) -> Result<ControlFlow<()>, EnumError>
    where
        F: FnMut(&VertexSet) -> ControlFlow<()>,
    {
        if self.emit(visit).is_break() {
            return Ok(ControlFlow::Break(()));
        }
        let bound = self.first_missing_pos();
        for li in 0..self.later.lseq().len() {
            let v = self.later.lseq()[li];
            if self.o.position(v) >= bound {
                break;
            }
            let mut mask = 0;
            while let Some(m) = self.later.next_subset(v, mask) {
                mask = m;
                if let Some(removed) = self.try_child(v, m)? {
                    let flow = self.search(visit)?;
                    self.revert_child(v, m, &removed)?;
                    if flow.is_break() {
                        return Ok(flow);
                    }
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// The same traversal without recursion: returning from a child
    /// recomputes its parent and resumes after the `(v, N)` that produced it.
    pub fn run_nonrecursive<F>(&mut self, mut visit: F) -> Result<EnumStats, EnumError>
    where
        F: FnMut(&VertexSet) -> ControlFlow<()>,
    {
        if self.emit(&mut visit).is_break() {
            return Ok(self.stats());
        }
        let mut depth = 0usize;
        let mut bound = self.first_missing_pos();
        let mut cursor: Option<(usize, u64)> = None;
        loop {
            match self.advance(cursor, bound) {
                Some((li, mask)) => {
                    cursor = Some((li, mask));
                    let v = self.later.lseq()[li];
                    if self.try_child(v, mask)?.is_some() {
                        depth += 1;
                        if self.emit(&mut visit).is_break() {
                            break;
                        }
                        bound = self.first_missing_pos();
                        cursor = None;
                    }
                }
                None => {
                    if depth == 0 {
                        break;
                    }
                    cursor = Some(self.ascend(bound)?);
                    depth -= 1;
                    bound = self.first_missing_pos();
                }
            }
        }
        Ok(self.stats())
    }

    /// Next `(lseq index, subset mask)` after `cursor` whose vertex lies
    /// before `bound`.
    fn advance(&mut self, cursor: Option<(usize, u64)>, bound: usize) -> Option<(usize, u64)> {
        let (mut li, mut mask) = cursor.unwrap_or((0, 0));
        let lseq = self.later.lseq();
        loop {
            self.stats.scan_ops += 1;
            if li >= lseq.len() || self.o.position(lseq[li]) >= bound {
                return None;
            }
            if let Some(m) = self.later.next_subset(lseq[li], mask) {
                return Some((li, m));
            }
            li += 1;
            mask = 0;
        }
    }

    /// Replaces `S` by its parent `P` and returns the cursor of the move
    /// `P -> S`: `v` is the first `lseq` vertex of `P \ S` and `N = S \ P`.
    fn ascend(&mut self, bound: usize) -> Result<(usize, u64), EnumError> {
        self.stats.parent_computations += 1;
        let v = self.o.vertex_at(bound);
        let n_set: Vec<Vertex> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.s.contains(u))
            .collect();
        self.stats.scan_ops += self.g.degree(v) as u64;
        let mut nn = self.neighborhood(&n_set);
        for &w in &n_set {
            self.s.remove(w);
            self.counts.delete(w)?;
            self.tester.delete(w)?;
        }
        self.s.insert(v);
        self.counts.insert(v)?;
        self.tester.insert(v)?;
        nn.retain(|&u| u != v);
        self.sort_by_position(&mut nn);
        let added = greedy_add(&nn, &mut self.counts)?;
        for &a in &added {
            self.s.insert(a);
            self.tester.insert(a)?;
        }
        self.stats.tester_updates += (n_set.len() + 1 + added.len()) as u64;

        let o = self.o;
        let first = std::iter::once(v)
            .chain(added.iter().copied())
            .filter(|&u| self.later.lseq_index(u).is_some())
            .min_by_key(|&u| o.position(u))
            .expect("parent adds the vertex it swapped in");
        debug_assert_eq!(first, v);
        debug_assert!(n_set.iter().all(|&w| self.later.owner(w) == Some(first)));
        let li = self.later.lseq_index(first).expect("filtered above");
        let mask = self
            .later
            .mask_of(first, n_set.iter().copied())
            .expect("N lies in later(v)");
        Ok((li, mask))
    }
}

pub fn enumerate_recursive<D, F>(
    g: &Graph,
    o: &VertexOrdering,
    tester: D,
    visit: F,
) -> Result<EnumStats, EnumError>
where
    D: DominanceTester,
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    ReverseSearch::new(g, o, tester)?.run_recursive(visit)
}

pub fn enumerate_nonrecursive<D, F>(
    g: &Graph,
    o: &VertexOrdering,
    tester: D,
    visit: F,
) -> Result<EnumStats, EnumError>
where
    D: DominanceTester,
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    ReverseSearch::new(g, o, tester)?.run_nonrecursive(visit)
}
