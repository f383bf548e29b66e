//! Enumeration for graphs of bounded maximum degree.
//!
//! For a maximal independent set `S`, LFMIS vertex `v ∈ S` and nonempty
//! independent `N ⊆ later(v)`, the pair `(v, N)` is *fertile* when
//! `T = (S ∪ N) \ N(N)` is maximal and the greedy extension of
//! `(T ∪ {v}) \ N` is `S`. Both facts depend only on `S` inside the radius-4
//! ball around `v`, so after each move the fertile pairs of vertices near the
//! change are re-tested. Fertile pairs whose vertex lies in the common prefix
//! of `S` and the LFMIS are exactly the children of `S`; the search visits
//! them in reverse vertex order so the prefix only shrinks going down.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::{ball, Graph, Vertex, VertexOrdering};
use crate::reverse_search::{
    compute_later, first_missing, lfmis, lfmis_superset, EnumError, LaterPartition,
};
use crate::set::VertexSet;

/// Radius around a change within which fertility can be affected.
pub const FERTILITY_RADIUS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundedError {
    #[error(
        "maximum degree {max_degree} exceeds the bound {bound}; use a generic enumerator instead"
    )]
    DegreeTooLarge { max_degree: usize, bound: usize },
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("internal check failed: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedConfig {
    pub max_degree: usize,
    /// Cross-check every fertility test, the fertile-pair table, the common
    /// prefix and each restoration against global recomputation. Slow.
    pub verify: bool,
}

impl Default for BoundedConfig {
    fn default() -> Self {
        BoundedConfig {
            max_degree: 4,
            verify: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundedStats {
    pub sets: u64,
    pub fertility_evals: u64,
    pub sort_comparisons: u64,
    pub set_updates: u64,
    pub ball_visits: u64,
    pub total_ops: u64,
    pub max_delay_ops: u64,
    /// Most fertile vertices seen at any node.
    pub max_keys: usize,
    /// Smallest `C` such that at every node with `k` fertile vertices, at
    /// least `k/2 - C` of its first `k/2` children have `k/2 - C` or more.
    pub recharge_deficit: usize,
}

impl BoundedStats {
    fn ops(&self) -> u64 {
        self.fertility_evals + self.sort_comparisons + self.set_updates + self.ball_visits
    }

    pub fn ops_per_set(&self) -> f64 {
        if self.sets == 0 {
            0.0
        } else {
            self.total_ops as f64 / self.sets as f64
        }
    }
}

/// Scratch space for local fertility tests.
#[derive(Debug, Clone)]
pub struct FertilityChecker {
    mark_n: Vec<u32>,
    mark_nn: Vec<u32>,
    mark_add: Vec<u32>,
    epoch: u32,
    nn: Vec<Vertex>,
    evaluations: u64,
}

impl FertilityChecker {
    pub fn new(n: usize) -> Self {
        FertilityChecker {
            mark_n: vec![0; n],
            mark_nn: vec![0; n],
            mark_add: vec![0; n],
            epoch: 0,
            nn: Vec::new(),
            evaluations: 0,
        }
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            for m in [&mut self.mark_n, &mut self.mark_nn, &mut self.mark_add] {
                m.iter_mut().for_each(|x| *x = 0);
            }
            self.epoch = 1;
        }
        self.epoch
    }

    /// Conditions 1 and 2 for `(v, n_set)`, reading `S` only within distance
    /// four of `v`.
    pub fn is_fertile(
        &mut self,
        g: &Graph,
        o: &VertexOrdering,
        s: &VertexSet,
        v: Vertex,
        n_set: &[Vertex],
    ) -> bool {
        self.evaluations += 1;
        if !s.contains(v) || n_set.is_empty() {
            return false;
        }
        let e = self.next_epoch();
        self.nn.clear();
        for &w in n_set {
            self.mark_n[w] = e;
        }
        for &w in n_set {
            for &u in g.neighbors(w) {
                if self.mark_nn[u] != e {
                    self.mark_nn[u] = e;
                    self.nn.push(u);
                }
            }
        }
        let (mark_n, mark_nn) = (&self.mark_n, &self.mark_nn);
        let in_t = |x: Vertex| mark_n[x] == e || (s.contains(x) && mark_nn[x] != e);

        // Condition 1: only vertices that lost their dominator can be free.
        let mut removed = 0;
        for &r in &self.nn {
            if !s.contains(r) {
                continue;
            }
            removed += 1;
            for x in std::iter::once(r).chain(g.neighbors(r).iter().copied()) {
                if !in_t(x) && g.neighbors(x).iter().all(|&y| !in_t(y)) {
                    return false;
                }
            }
        }

        // Condition 2: greedy extension of (S \ R) ∪ {v} must add back R \ {v}.
        let mut cands: Vec<Vertex> = self.nn.iter().copied().filter(|&u| u != v).collect();
        cands.sort_unstable_by_key(|&c| o.position(c));
        let mut added = 0;
        for c in cands {
            let blocked = g.neighbors(c).iter().any(|&y| {
                y == v || (s.contains(y) && self.mark_nn[y] != e) || self.mark_add[y] == e
            });
            if !blocked {
                if !s.contains(c) {
                    return false;
                }
                self.mark_add[c] = e;
                added += 1;
            }
        }
        added + 1 == removed
    }
}

/// Local fertility test with fresh scratch space.
pub fn is_fertile_local(
    g: &Graph,
    o: &VertexOrdering,
    s: &VertexSet,
    v: Vertex,
    n_set: &[Vertex],
) -> bool {
    FertilityChecker::new(g.vertex_count()).is_fertile(g, o, s, v, n_set)
}

/// Fertility by full maximality check and full greedy extension.
pub fn is_fertile_global(
    g: &Graph,
    o: &VertexOrdering,
    s: &VertexSet,
    v: Vertex,
    n_set: &[Vertex],
) -> bool {
    if !s.contains(v) || n_set.is_empty() {
        return false;
    }
    let mut t = s.clone();
    for &w in n_set {
        for &u in g.neighbors(w) {
            t.remove(u);
        }
    }
    for &w in n_set {
        t.insert(w);
    }
    let maximal = g
        .vertices()
        .all(|x| t.contains(x) || g.neighbors(x).iter().any(|&y| t.contains(y)));
    if !maximal {
        return false;
    }
    let mut base = t;
    for &w in n_set {
        base.remove(w);
    }
    base.insert(v);
    lfmis_superset(g, o, &base).is_ok_and(|p| &p == s)
}

/// Fertile subsets (as masks over `later(v)`) for each vertex, plus the list
/// of vertices that have any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FertilePairs {
    masks: Vec<Vec<u64>>,
    keys: Vec<Vertex>,
    slot: Vec<usize>,
}

impl FertilePairs {
    pub fn new(n: usize) -> Self {
        FertilePairs {
            masks: vec![Vec::new(); n],
            keys: Vec::new(),
            slot: vec![usize::MAX; n],
        }
    }

    pub fn keys(&self) -> &[Vertex] {
        &self.keys
    }

    pub fn get(&self, v: Vertex) -> &[u64] {
        &self.masks[v]
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    fn add_key(&mut self, v: Vertex) {
        if self.slot[v] == usize::MAX {
            self.slot[v] = self.keys.len();
            self.keys.push(v);
        }
    }

    fn drop_key(&mut self, v: Vertex) {
        let i = self.slot[v];
        if i != usize::MAX {
            self.keys.swap_remove(i);
            if i < self.keys.len() {
                self.slot[self.keys[i]] = i;
            }
            self.slot[v] = usize::MAX;
        }
    }

    /// Records whether `(v, mask)` is fertile.
    pub fn set(&mut self, v: Vertex, mask: u64, fertile: bool) {
        let list = &mut self.masks[v];
        match (list.binary_search(&mask), fertile) {
            (Err(i), true) => {
                list.insert(i, mask);
                self.add_key(v);
            }
            (Ok(i), false) => {
                list.remove(i);
                if list.is_empty() {
                    self.drop_key(v);
                }
            }
            _ => {}
        }
    }

    /// Removes and returns all fertile subsets of `v`.
    pub fn take(&mut self, v: Vertex) -> Vec<u64> {
        self.drop_key(v);
        std::mem::take(&mut self.masks[v])
    }

    /// Restores subsets previously removed by [`take`](Self::take).
    pub fn put(&mut self, v: Vertex, masks: Vec<u64>) {
        if !masks.is_empty() {
            self.add_key(v);
        }
        self.masks[v] = masks;
    }

    /// `(vertex, masks)` for every key, ordered by vertex.
    pub fn snapshot(&self) -> Vec<(Vertex, Vec<u64>)> {
        let mut keys = self.keys.clone();
        keys.sort_unstable();
        keys.into_iter()
            .map(|v| (v, self.masks[v].clone()))
            .collect()
    }
}

fn within(o: &VertexOrdering, v: Vertex, last_common: Option<usize>) -> bool {
    last_common.is_some_and(|l| o.position(v) <= l)
}

/// All fertile pairs of `s` whose vertex lies at or before position `last_common`.
pub fn fertile_pairs_from_scratch(
    g: &Graph,
    o: &VertexOrdering,
    later: &LaterPartition,
    s: &VertexSet,
    last_common: Option<usize>,
) -> FertilePairs {
    let mut fp = FertilePairs::new(g.vertex_count());
    let mut checker = FertilityChecker::new(g.vertex_count());
    for &w in later.lseq() {
        if !within(o, w, last_common) {
            continue;
        }
        let mut mask = 0;
        while let Some(m) = later.next_subset(w, mask) {
            mask = m;
            let n_set: Vec<Vertex> = later.subset(w, m).collect();
            if checker.is_fertile(g, o, s, w, &n_set) {
                fp.set(w, m, true);
            }
        }
    }
    fp
}

/// Fertile pairs of the LFMIS, whose common prefix is the whole LFMIS.
pub fn initial_fertile_pairs(
    g: &Graph,
    o: &VertexOrdering,
    lfmis: &VertexSet,
    later: &LaterPartition,
) -> FertilePairs {
    let last = o
        .order()
        .iter()
        .rev()
        .find(|&&v| lfmis.contains(v))
        .map(|&v| o.position(v));
    fertile_pairs_from_scratch(g, o, later, lfmis, last)
}

/// Re-tests every pair `(w, N)` with `w` within distance four of a vertex in
/// `changed` and at or before `last_common`. Returns the number of ball
/// vertices visited.
#[allow(clippy::too_many_arguments)]
pub fn update_fertile_pairs(
    fp: &mut FertilePairs,
    g: &Graph,
    o: &VertexOrdering,
    later: &LaterPartition,
    s: &VertexSet,
    changed: &[Vertex],
    last_common: Option<usize>,
    checker: &mut FertilityChecker,
) -> u64 {
    if last_common.is_none() {
        return 0;
    }
    let mut region: Vec<Vertex> = changed
        .iter()
        .flat_map(|&c| ball(g, c, FERTILITY_RADIUS))
        .collect();
    region.sort_unstable();
    region.dedup();
    let visits = region.len() as u64;
    let mut n_set = Vec::new();
    for w in region {
        if later.lseq_index(w).is_none() || !within(o, w, last_common) {
            continue;
        }
        let mut mask = 0;
        while let Some(m) = later.next_subset(w, mask) {
            mask = m;
            n_set.clear();
            n_set.extend(later.subset(w, m));
            let fertile = checker.is_fertile(g, o, s, w, &n_set);
            fp.set(w, m, fertile);
        }
    }
    visits
}

struct Frame {
    /// Fertile vertices at entry, latest first.
    keys: Vec<Vertex>,
    next_key: usize,
    /// Entries taken out of the table by this frame, restored when it ends.
    saved: Vec<(Vertex, Vec<u64>)>,
    v: Vertex,
    masks: Vec<u64>,
    next_mask: usize,
    /// The move to the child currently being searched: `(N, removed)`.
    child: Option<(Vec<Vertex>, Vec<Vertex>)>,
    first_children: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    o: &'a VertexOrdering,
    config: BoundedConfig,
    lfmis: VertexSet,
    lfmis_seq: Vec<Vertex>,
    lfmis_rank: Vec<usize>,
    later: LaterPartition,
    s: VertexSet,
    fp: FertilePairs,
    checker: FertilityChecker,
    last_common: Option<usize>,
    stats: BoundedStats,
    last_emit_ops: u64,
}

impl<'a> Search<'a> {
    fn ops(&self) -> u64 {
        self.stats.ops() + self.checker.evaluations()
    }

    fn emit<F>(&mut self, visit: &mut F) -> Result<ControlFlow<()>, BoundedError>
    where
        F: FnMut(&VertexSet) -> ControlFlow<()>,
    {
        if self.config.verify {
            self.verify_state()?;
        }
        let ops = self.ops();
        self.stats.sets += 1;
        self.stats.max_delay_ops = self.stats.max_delay_ops.max(ops - self.last_emit_ops);
        self.last_emit_ops = ops;
        Ok(visit(&self.s))
    }

    fn verify_state(&self) -> Result<(), BoundedError> {
        let expected = match first_missing(self.o, &self.lfmis, &self.s) {
            None => self.lfmis_seq.last().map(|&v| self.o.position(v)),
            Some(m) => {
                let r = self.lfmis_rank[m];
                (r > 0).then(|| self.o.position(self.lfmis_seq[r - 1]))
            }
        };
        if expected != self.last_common {
            return Err(BoundedError::Invariant(format!(
                "last_common {:?}, expected {expected:?} for {:?}",
                self.last_common, self.s
            )));
        }
        let fresh =
            fertile_pairs_from_scratch(self.g, self.o, &self.later, &self.s, self.last_common);
        if fresh.snapshot() != self.fp.snapshot() {
            return Err(BoundedError::Invariant(format!(
                "fertile pairs out of date at {:?}",
                self.s
            )));
        }
        for &w in self.later.lseq() {
            let mut mask = 0;
            while let Some(m) = self.later.next_subset(w, mask) {
                mask = m;
                let n_set: Vec<Vertex> = self.later.subset(w, m).collect();
                let local = is_fertile_local(self.g, self.o, &self.s, w, &n_set);
                if local != is_fertile_global(self.g, self.o, &self.s, w, &n_set) {
                    return Err(BoundedError::Invariant(format!(
                        "local fertility test wrong for ({w}, {n_set:?}) at {:?}",
                        self.s
                    )));
                }
            }
        }
        Ok(())
    }

    fn new_frame(&mut self) -> Frame {
        let mut keys = self.fp.keys().to_vec();
        let o = self.o;
        let mut comparisons = 0u64;
        keys.sort_unstable_by(|&a, &b| {
            comparisons += 1;
            o.position(b).cmp(&o.position(a))
        });
        self.stats.sort_comparisons += comparisons;
        self.stats.max_keys = self.stats.max_keys.max(keys.len());
        Frame {
            keys,
            next_key: 0,
            saved: Vec::new(),
            v: 0,
            masks: Vec::new(),
            next_mask: 0,
            child: None,
            first_children: Vec::new(),
        }
    }

    fn pred_position(&self, v: Vertex) -> Option<usize> {
        let r = self.lfmis_rank[v];
        (r > 0).then(|| self.o.position(self.lfmis_seq[r - 1]))
    }

    fn refresh(&mut self, changed: &[Vertex]) {
        self.stats.ball_visits += update_fertile_pairs(
            &mut self.fp,
            self.g,
            self.o,
            &self.later,
            &self.s,
            changed,
            self.last_common,
            &mut self.checker,
        );
    }

    /// Applies `(v, N)`; returns the vertices removed from `S`.
    fn apply(&mut self, n_set: &[Vertex]) -> Vec<Vertex> {
        let mut removed = Vec::new();
        for &w in n_set {
            for &u in self.g.neighbors(w) {
                if self.s.remove(u) {
                    removed.push(u);
                }
            }
        }
        for &w in n_set {
            self.s.insert(w);
        }
        self.stats.set_updates += (n_set.len() + removed.len()) as u64;
        let changed: Vec<Vertex> = n_set.iter().chain(&removed).copied().collect();
        self.refresh(&changed);
        removed
    }

    fn revert(
        &mut self,
        v: Vertex,
        n_set: &[Vertex],
        removed: &[Vertex],
    ) -> Result<(), BoundedError> {
        let expected = if self.config.verify {
            let mut base = self.s.clone();
            for &w in n_set {
                base.remove(w);
            }
            base.insert(v);
            Some(lfmis_superset(self.g, self.o, &base)?)
        } else {
            None
        };
        for &w in n_set {
            self.s.remove(w);
        }
        for &u in removed {
            self.s.insert(u);
        }
        self.stats.set_updates += (n_set.len() + removed.len()) as u64;
        if let Some(p) = expected {
            if p != self.s {
                return Err(BoundedError::Invariant(format!(
                    "restored {:?}, parent is {p:?}",
                    self.s
                )));
            }
        }
        let changed: Vec<Vertex> = n_set.iter().chain(removed).copied().collect();
        self.refresh(&changed);
        Ok(())
    }

    fn run<F>(&mut self, visit: &mut F) -> Result<(), BoundedError>
    where
        F: FnMut(&VertexSet) -> ControlFlow<()>,
    {
        if self.emit(visit)?.is_break() {
            return Ok(());
        }
        let root = self.new_frame();
        let mut stack = vec![root];
        while let Some(frame) = stack.last_mut() {
            if let Some((n_set, removed)) = frame.child.take() {
                let v = frame.v;
                self.revert(v, &n_set, &removed)?;
                continue;
            }
            if frame.next_mask < frame.masks.len() {
                let mask = frame.masks[frame.next_mask];
                frame.next_mask += 1;
                let v = frame.v;
                let n_set: Vec<Vertex> = self.later.subset(v, mask).collect();
                let removed = self.apply(&n_set);
                let frame = stack.last_mut().expect("nonempty stack");
                frame.child = Some((n_set, removed));
                if self.emit(visit)?.is_break() {
                    return Ok(());
                }
                let child = self.new_frame();
                let frame = stack.last_mut().expect("nonempty stack");
                if frame.first_children.len() < frame.keys.len() / 2 {
                    frame.first_children.push(child.keys.len());
                }
                stack.push(child);
                continue;
            }
            if frame.next_key < frame.keys.len() {
                let v = frame.keys[frame.next_key];
                frame.next_key += 1;
                let masks = self.fp.take(v);
                frame.saved.push((v, masks.clone()));
                frame.v = v;
                frame.masks = masks;
                frame.next_mask = 0;
                self.last_common = self.pred_position(v);
                continue;
            }
            let frame = stack.pop().expect("nonempty stack");
            self.stats.recharge_deficit = self
                .stats
                .recharge_deficit
                .max(recharge_deficit(frame.keys.len(), &frame.first_children));
            for (v, masks) in frame.saved {
                self.fp.put(v, masks);
            }
            // Back in the parent frame the prefix ends just before its current vertex.
            if let Some(parent) = stack.last() {
                self.last_common = self.pred_position(parent.v);
            }
        }
        Ok(())
    }
}

/// Smallest `C` with at least `k/2 - C` of `first` having `k/2 - C` or more keys.
fn recharge_deficit(k: usize, first: &[usize]) -> usize {
    let half = k / 2;
    (0..=half)
        .find(|&c| first.iter().filter(|&&kc| kc + c >= half).count() + c >= half)
        .unwrap_or(half)
}

/// Lists every maximal independent set of `g` (maximum degree at most
/// `config.max_degree`) using fertile-pair maintenance.
pub fn enumerate_bounded_degree<F>(
    g: &Graph,
    o: &VertexOrdering,
    config: BoundedConfig,
    mut visit: F,
) -> Result<BoundedStats, BoundedError>
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    if o.len() != n {
        return Err(EnumError::SizeMismatch {
            graph: n,
            ordering: o.len(),
        }
        .into());
    }
    if g.max_degree() > config.max_degree {
        return Err(BoundedError::DegreeTooLarge {
            max_degree: g.max_degree(),
            bound: config.max_degree,
        });
    }
    let root = lfmis(g, o);
    let later = compute_later(g, o, &root)?;
    let lfmis_seq: Vec<Vertex> = o
        .order()
        .iter()
        .copied()
        .filter(|&v| root.contains(v))
        .collect();
    let mut lfmis_rank = vec![usize::MAX; n];
    for (r, &v) in lfmis_seq.iter().enumerate() {
        lfmis_rank[v] = r;
    }
    let fp = initial_fertile_pairs(g, o, &root, &later);
    let mut search = Search {
        g,
        o,
        config,
        last_common: lfmis_seq.last().map(|&v| o.position(v)),
        lfmis_seq,
        lfmis_rank,
        s: root.clone(),
        lfmis: root,
        later,
        fp,
        checker: FertilityChecker::new(n),
        stats: BoundedStats::default(),
        last_emit_ops: 0,
    };
    search.last_emit_ops = search.ops();
    search.run(&mut visit)?;
    let mut stats = search.stats.clone();
    stats.fertility_evals = search.checker.evaluations();
    stats.total_ops = search.ops();
    stats.max_delay_ops = stats
        .max_delay_ops
        .max(stats.total_ops - search.last_emit_ops);
    Ok(stats)
}
