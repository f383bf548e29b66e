//! Hierarchical supervertex structure answering undominated-count queries in
//! constant time, with constant-time updates on graphs whose neighborhood
//! classes stay few (minor-closed families).
//!
//! Levels: `G_0` is the input graph. `G_i` keeps the vertices of `G_{i-1}` whose
//! degree is at least `delta` (the set `Q_i`) and replaces every other vertex by
//! the supervertex of its class, where two vertices share a class iff they have
//! the same neighbors inside `Q_i`. Supervertices are adjacent only to the `Q_i`
//! vertices in their class key, so their degree stays below `delta` and every
//! `Q_i` vertex is an original vertex. A supervertex whose class contains a
//! supervertex of the previous level with the same degree *is* that node; this
//! keeps every `sv` chain short. The construction stops at a single supervertex
//! of degree zero, the root.
//!
//! Each node keeps `nadj` (members of `S` listing the node in their `nbr`) and
//! `undom`. For an original vertex `undom` is 1 iff it is outside `S`; for a
//! supervertex it is the sum of `undom` over children with `nadj == 0`. The
//! answer to a query is `undom(root)`.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use super::{DomError, DominanceTester};
use crate::graph::{Graph, Vertex};
use crate::set::VertexSet;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinorConfig {
    /// Degree threshold for the high-degree set of each level.
    pub delta: usize,
    /// A level is kept only if it has at most `shrink` times as many nodes as
    /// the previous one; otherwise `delta` is doubled and the level rebuilt.
    /// Levels must always strictly shrink, whatever this is set to.
    pub shrink: f64,
}

impl Default for MinorConfig {
    fn default() -> Self {
        MinorConfig {
            delta: 16,
            shrink: 0.9,
        }
    }
}

impl MinorConfig {
    pub fn with_delta(delta: usize) -> Self {
        MinorConfig {
            delta,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Vertex,
    Supervertex,
}

/// One attempted level construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelStats {
    pub level: usize,
    pub delta: usize,
    pub nodes_before: usize,
    /// Size of the high-degree set `Q`.
    pub q_size: usize,
    /// Neighborhood classes among the remaining nodes.
    pub classes: usize,
    pub accepted: bool,
}

impl LevelStats {
    pub fn nodes_after(&self) -> usize {
        self.q_size + self.classes
    }
}

#[derive(Debug, Clone)]
pub struct MinorDomStructure {
    n: usize,
    sv: Vec<usize>,
    level: Vec<usize>,
    /// Degree of each node in the last level graph it belongs to.
    degree: Vec<usize>,
    nadj: Vec<u32>,
    undom: Vec<i64>,
    nbr_start: Vec<usize>,
    nbr: Vec<usize>,
    root: usize,
    members: VertexSet,
    delta_used: usize,
    levels: usize,
    stats: Vec<LevelStats>,
    work: u64,
    max_update_work: u64,
}

struct Group {
    key: Vec<usize>,
    members: Vec<usize>,
}

impl MinorDomStructure {
    /// # Panics
    /// If `config.delta < 2`.
    pub fn build(g: &Graph, config: MinorConfig) -> Self {
        assert!(config.delta >= 2, "delta must be at least 2");
        let n = g.vertex_count();
        let mut delta = config.delta;
        let mut adj: Vec<Vec<usize>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
        let mut sv = vec![NONE; n];
        let mut level = vec![0usize; n];
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut nbr_lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut in_q: Vec<bool> = vec![false; n];
        let mut cur: Vec<usize> = (0..n).collect();
        let mut stats = Vec::new();
        let mut i = 1;

        let root = loop {
            let (q, groups) = loop {
                let q: Vec<usize> = cur
                    .iter()
                    .copied()
                    .filter(|&x| adj[x].len() >= delta)
                    .collect();
                if q.is_empty() {
                    stats.push(LevelStats {
                        level: i,
                        delta,
                        nodes_before: cur.len(),
                        q_size: 0,
                        classes: 1,
                        accepted: true,
                    });
                    break (q, Vec::new());
                }
                for &h in &q {
                    in_q[h] = true;
                }
                let groups = group_by_q_neighbors(&cur, &adj, &in_q, &q);
                let after = q.len() + groups.len();
                let accepted =
                    after < cur.len() && after as f64 <= config.shrink * cur.len() as f64;
                stats.push(LevelStats {
                    level: i,
                    delta,
                    nodes_before: cur.len(),
                    q_size: q.len(),
                    classes: groups.len(),
                    accepted,
                });
                if accepted {
                    break (q, groups);
                }
                for &h in &q {
                    in_q[h] = false;
                }
                delta *= 2;
            };

            if q.is_empty() {
                // Everything left shares the empty key: one class, the root.
                let carried = cur
                    .iter()
                    .copied()
                    .filter(|&x| x >= n && adj[x].is_empty())
                    .min();
                let root = carried.unwrap_or_else(|| {
                    sv.push(NONE);
                    level.push(0);
                    degree.push(0);
                    adj.push(Vec::new());
                    in_q.push(false);
                    sv.len() - 1
                });
                for &x in &cur {
                    if x != root {
                        sv[x] = root;
                        level[x] = i - 1;
                        if x < n {
                            nbr_lists[x] = std::mem::take(&mut adj[x]);
                        }
                    }
                }
                level[root] = i;
                break root;
            }

            let mut extra: Vec<(usize, usize)> = Vec::new();
            let mut next = q.clone();
            for group in groups {
                let same_degree: Vec<usize> = group
                    .members
                    .iter()
                    .copied()
                    .filter(|&x| x >= n && adj[x].len() == group.key.len())
                    .collect();
                debug_assert!(
                    same_degree.len() <= 1,
                    "class holds several same-degree supervertices: {same_degree:?}"
                );
                let s = match same_degree.iter().min() {
                    Some(&s) => s,
                    None => {
                        sv.push(NONE);
                        level.push(0);
                        degree.push(0);
                        adj.push(Vec::new());
                        in_q.push(false);
                        sv.len() - 1
                    }
                };
                for &x in &group.members {
                    if x != s {
                        sv[x] = s;
                        level[x] = i - 1;
                        if x < n {
                            nbr_lists[x] = std::mem::take(&mut adj[x]);
                        }
                    }
                }
                for &h in &group.key {
                    extra.push((h, s));
                }
                degree[s] = group.key.len();
                adj[s] = group.key;
                next.push(s);
            }
            for &h in &q {
                adj[h].retain(|&y| in_q[y]);
            }
            for (h, s) in extra {
                adj[h].push(s);
            }
            for &h in &q {
                adj[h].sort_unstable();
                degree[h] = adj[h].len();
                in_q[h] = false;
            }
            cur = next;
            i += 1;
        };

        let total = sv.len();
        let mut nbr_start = Vec::with_capacity(n + 1);
        let mut nbr = Vec::new();
        nbr_start.push(0);
        for list in &nbr_lists {
            nbr.extend_from_slice(list);
            nbr_start.push(nbr.len());
        }
        let mut undom = vec![0i64; total];
        for v in 0..n {
            let mut x = v;
            while x != NONE {
                undom[x] += 1;
                x = sv[x];
            }
        }
        MinorDomStructure {
            n,
            sv,
            level,
            degree,
            nadj: vec![0; total],
            undom,
            nbr_start,
            nbr,
            root,
            members: VertexSet::new(n),
            delta_used: delta,
            levels: i,
            stats,
            work: 0,
            max_update_work: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Originals plus supervertices.
    pub fn node_count(&self) -> usize {
        self.sv.len()
    }

    /// Index of the root's level.
    pub fn level_count(&self) -> usize {
        self.levels
    }

    /// Threshold in force when the last level was built (after any doubling).
    pub fn delta_used(&self) -> usize {
        self.delta_used
    }

    pub fn level_stats(&self) -> &[LevelStats] {
        &self.stats
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn kind(&self, node: usize) -> NodeKind {
        if node < self.n {
            NodeKind::Vertex
        } else {
            NodeKind::Supervertex
        }
    }

    pub fn sv(&self, node: usize) -> Option<usize> {
        let p = self.sv[node];
        (p != NONE).then_some(p)
    }

    pub fn level(&self, node: usize) -> usize {
        self.level[node]
    }

    pub fn nadj(&self, node: usize) -> u32 {
        self.nadj[node]
    }

    pub fn undom(&self, node: usize) -> i64 {
        self.undom[node]
    }

    /// Adjacency of an original vertex in the level graph of its own level.
    pub fn nbr(&self, v: Vertex) -> &[usize] {
        &self.nbr[self.nbr_start[v]..self.nbr_start[v + 1]]
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    /// Number of supervertices on the `sv` chain from `node` to the root.
    pub fn chain_length(&self, node: usize) -> usize {
        let mut len = 0;
        let mut x = self.sv[node];
        while x != NONE {
            len += 1;
            x = self.sv[x];
        }
        len
    }

    /// Largest number of entries touched by a single insert or delete so far.
    pub fn max_update_work(&self) -> u64 {
        self.max_update_work
    }

    /// Hash of the mutable state (membership and all counters).
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.members.hash(&mut h);
        self.nadj.hash(&mut h);
        self.undom.hash(&mut h);
        h.finish()
    }

    /// One node per line: `id kind level sv nadj undom`, with kind `v` for an
    /// original vertex, `s` for a supervertex, and `-` as the root's `sv`.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for x in 0..self.node_count() {
            let kind = match self.kind(x) {
                NodeKind::Vertex => 'v',
                NodeKind::Supervertex => 's',
            };
            let sv = self
                .sv(x)
                .map_or_else(|| "-".to_string(), |p| p.to_string());
            writeln!(
                out,
                "{x} {kind} {} {sv} {} {}",
                self.level[x], self.nadj[x], self.undom[x]
            )
            .unwrap();
        }
        out
    }

    /// Recomputes every counter from the member set and compares.
    pub fn check_invariants(&self) -> Result<(), String> {
        let total = self.node_count();
        let mut nadj = vec![0u32; total];
        for v in self.members.iter() {
            for &w in self.nbr(v) {
                nadj[w] += 1;
            }
        }
        if nadj != self.nadj {
            return Err("nadj mismatch".into());
        }
        let mut by_level: Vec<usize> = (0..total).collect();
        by_level.sort_by_key(|&x| self.level[x]);
        let mut undom = vec![0i64; total];
        for &x in &by_level {
            if x < self.n {
                undom[x] = i64::from(!self.members.contains(x));
            }
            if let Some(p) = self.sv(x) {
                if self.level[p] <= self.level[x] {
                    return Err(format!("sv({x}) = {p} does not climb"));
                }
                if nadj[x] == 0 {
                    undom[p] += undom[x];
                }
            } else if x != self.root {
                return Err(format!("node {x} has no sv pointer"));
            }
        }
        if undom != self.undom {
            return Err("undom mismatch".into());
        }
        for s in self.n..total {
            if s != self.root && self.degree[s] >= self.delta_used {
                return Err(format!("supervertex {s} has degree {}", self.degree[s]));
            }
        }
        Ok(())
    }

    fn propagate(&mut self, mut x: usize, delta: i64, work: &mut u64) {
        loop {
            self.undom[x] += delta;
            *work += 1;
            debug_assert!(self.undom[x] >= 0);
            if x == self.root || self.nadj[x] > 0 {
                break;
            }
            x = self.sv[x];
        }
    }

    fn finish_update(&mut self, work: u64) {
        self.work += work;
        self.max_update_work = self.max_update_work.max(work);
    }
}

/// Groups the non-`Q` nodes of `cur` by their sorted `Q`-neighborhood using
/// counting-sort passes over `Q`-ranks. Groups come out ordered by key length,
/// then lexicographically; members keep their order in `cur`.
fn group_by_q_neighbors(
    cur: &[usize],
    adj: &[Vec<usize>],
    in_q: &[bool],
    q: &[usize],
) -> Vec<Group> {
    let mut rank = std::collections::HashMap::with_capacity(q.len());
    for (r, &h) in q.iter().enumerate() {
        rank.insert(h, r);
    }
    let mut keys: Vec<Vec<usize>> = Vec::new();
    let mut owners: Vec<usize> = Vec::new();
    let mut max_len = 0;
    for &x in cur {
        if in_q[x] {
            continue;
        }
        let mut key: Vec<usize> = adj[x]
            .iter()
            .filter(|&&y| in_q[y])
            .map(|y| rank[y])
            .collect();
        key.sort_unstable();
        max_len = max_len.max(key.len());
        keys.push(key);
        owners.push(x);
    }
    let mut by_len: Vec<Vec<usize>> = vec![Vec::new(); max_len + 1];
    for (i, key) in keys.iter().enumerate() {
        by_len[key.len()].push(i);
    }
    let radix = q.len();
    let mut counts = vec![0usize; radix + 1];
    let mut groups: Vec<Group> = Vec::new();
    for (len, mut items) in by_len.into_iter().enumerate() {
        for pos in (0..len).rev() {
            counts.iter_mut().for_each(|c| *c = 0);
            for &i in &items {
                counts[keys[i][pos] + 1] += 1;
            }
            for r in 0..radix {
                counts[r + 1] += counts[r];
            }
            let mut sorted = vec![0; items.len()];
            for &i in &items {
                let slot = &mut counts[keys[i][pos]];
                sorted[*slot] = i;
                *slot += 1;
            }
            items = sorted;
        }
        for &i in &items {
            match groups.last_mut() {
                Some(last)
                    if last.key.len() == len
                        && keys[i].iter().zip(&last.key).all(|(&r, &h)| q[r] == h) =>
                {
                    last.members.push(owners[i]);
                }
                _ => groups.push(Group {
                    key: keys[i].iter().map(|&r| q[r]).collect(),
                    members: vec![owners[i]],
                }),
            }
        }
    }
    groups
}

impl DominanceTester for MinorDomStructure {
    fn insert(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.n)?;
        if !self.members.insert(v) {
            return Err(DomError::AlreadyMember(v));
        }
        let mut work = 0;
        for i in self.nbr_start[v]..self.nbr_start[v + 1] {
            let w = self.nbr[i];
            self.nadj[w] += 1;
            work += 1;
            if self.nadj[w] == 1 && self.undom[w] != 0 {
                let d = self.undom[w];
                self.propagate(self.sv[w], -d, &mut work);
            }
        }
        self.undom[v] = 0;
        if self.nadj[v] == 0 {
            self.propagate(self.sv[v], -1, &mut work);
        }
        self.finish_update(work);
        Ok(())
    }

    fn delete(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.n)?;
        if !self.members.remove(v) {
            return Err(DomError::NotMember(v));
        }
        let mut work = 0;
        self.undom[v] = 1;
        if self.nadj[v] == 0 {
            self.propagate(self.sv[v], 1, &mut work);
        }
        for i in self.nbr_start[v]..self.nbr_start[v + 1] {
            let w = self.nbr[i];
            self.nadj[w] -= 1;
            work += 1;
            if self.nadj[w] == 0 && self.undom[w] != 0 {
                let d = self.undom[w];
                self.propagate(self.sv[w], d, &mut work);
            }
        }
        self.finish_update(work);
        Ok(())
    }

    #[inline]
    fn undominated_count(&self) -> usize {
        self.undom[self.root] as usize
    }

    fn contains(&self, v: Vertex) -> bool {
        self.members.contains(v)
    }

    fn work(&self) -> u64 {
        self.work
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::oracle::naive_undominated;

    fn cfg(delta: usize) -> MinorConfig {
        MinorConfig::with_delta(delta)
    }

    fn count_after(g: &Graph, ds: &MinorDomStructure) -> usize {
        naive_undominated(g, &ds.members().to_vec())
    }

    #[test]
    fn edgeless_is_one_class() {
        let ds = MinorDomStructure::build(&Graph::empty(5), cfg(4));
        assert_eq!(ds.node_count(), 6);
        assert_eq!(ds.root(), 5);
        assert_eq!(ds.undominated_count(), 5);
        assert!((0..5).all(|v| ds.sv(v) == Some(5)));
        ds.check_invariants().unwrap();
    }

    #[test]
    fn star_hierarchy() {
        let g = star(6);
        let mut ds = MinorDomStructure::build(&g, cfg(4));
        // Level 1: Q = {center}; the six leaves form one supervertex.
        let first = ds.level_stats()[0];
        assert_eq!((first.q_size, first.classes, first.accepted), (1, 1, true));
        let leaf_sv = ds.sv(1).unwrap();
        assert!((1..=6).all(|l| ds.sv(l) == Some(leaf_sv)));
        assert_eq!(ds.nbr(0), &[leaf_sv]);
        assert_eq!(ds.level(0), 1);
        assert_eq!(ds.undominated_count(), 7);
        ds.insert(0).unwrap();
        assert_eq!(ds.undominated_count(), 0);
        ds.delete(0).unwrap();
        assert_eq!(ds.undominated_count(), 7);
        ds.insert(1).unwrap();
        assert_eq!(ds.undominated_count(), 5);
        ds.check_invariants().unwrap();
    }

    #[test]
    fn path_collapses_to_root() {
        let g = path(4);
        let mut ds = MinorDomStructure::build(&g, cfg(4));
        assert_eq!(ds.node_count(), 5);
        assert_eq!(ds.undom(ds.root()), 4);
        ds.insert(1).unwrap();
        assert_eq!(ds.undominated_count(), 1);
        ds.insert(3).unwrap();
        assert_eq!(ds.undominated_count(), 0);
        ds.delete(1).unwrap();
        assert_eq!(ds.undominated_count(), count_after(&g, &ds));
        assert_eq!(ds.undominated_count(), 2);
    }

    #[test]
    fn query_examples() {
        let g = cycle(5);
        let mut ds = MinorDomStructure::build(&g, cfg(2));
        assert_eq!(ds.undominated_count(), 5);
        ds.insert(0).unwrap();
        assert_eq!(ds.undominated_count(), 2);
        ds.check_invariants().unwrap();
    }

    #[test]
    fn membership_errors() {
        let mut ds = MinorDomStructure::build(&path(3), cfg(2));
        assert_eq!(ds.delete(0), Err(DomError::NotMember(0)));
        ds.insert(0).unwrap();
        assert_eq!(ds.insert(0), Err(DomError::AlreadyMember(0)));
        assert_eq!(ds.insert(9), Err(DomError::OutOfRange { vertex: 9, n: 3 }));
    }

    #[test]
    fn empty_graph_has_a_root() {
        let ds = MinorDomStructure::build(&Graph::empty(0), cfg(2));
        assert_eq!(ds.node_count(), 1);
        assert_eq!(ds.undominated_count(), 0);
    }

    #[test]
    fn identity_is_carried_across_levels() {
        // Two hubs joined through many degree-2 connectors, and each hub also
        // owns a private fan of leaves. With delta = 3 the connectors form one
        // supervertex adjacent to both hubs at level 1; at level 2 the hubs
        // still have high degree so that supervertex keeps its identity.
        let mut edges = Vec::new();
        let (a, b) = (0, 1);
        let mut next = 2;
        for _ in 0..6 {
            edges.push((a, next));
            edges.push((b, next));
            next += 1;
        }
        for hub in [a, b] {
            for _ in 0..5 {
                edges.push((hub, next));
                next += 1;
            }
        }
        let g = Graph::from_edges(next, edges).unwrap();
        let ds = MinorDomStructure::build(
            &g,
            MinorConfig {
                delta: 3,
                shrink: 1.0,
            },
        );
        ds.check_invariants().unwrap();
        let connector_sv = ds.sv(2).unwrap();
        assert!(ds.level(connector_sv) >= 1);
        assert_eq!(ds.undominated_count(), next);
        for v in 0..next {
            assert!(ds.chain_length(v) <= ds.delta_used() + 1);
        }
    }

    #[test]
    fn grouping_orders_by_length_then_key() {
        // cur = [0..6], Q = {4, 5}
        let adj = vec![
            vec![5],
            vec![4, 5],
            vec![],
            vec![4],
            vec![0, 1, 3],
            vec![0, 1],
        ];
        let in_q = vec![false, false, false, false, true, true];
        let groups = group_by_q_neighbors(&[0, 1, 2, 3, 4, 5], &adj, &in_q, &[4, 5]);
        let keys: Vec<_> = groups
            .iter()
            .map(|g| (g.key.clone(), g.members.clone()))
            .collect();
        assert_eq!(
            keys,
            vec![
                (vec![], vec![2]),
                (vec![4], vec![3]),
                (vec![5], vec![0]),
                (vec![4, 5], vec![1]),
            ]
        );
    }
}
