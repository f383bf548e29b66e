//! Shared helpers for the integration tests and the acceptance harness.

#![allow(dead_code)]

use std::collections::HashSet;
use std::ops::ControlFlow;

use misenum::bounded_degree::{enumerate_bounded_degree, BoundedConfig};
use misenum::dominance::{MinorConfig, MinorDomStructure, SparseDomStructure};
use misenum::graph::{degeneracy_ordering, orient_by_ordering, Graph, Vertex, VertexOrdering};
use misenum::reverse_search::{enumerate_nonrecursive, enumerate_recursive};
use misenum::set::VertexSet;

/// Adjacency rows as bitmasks; at most 16 vertices.
type Rows = Vec<u16>;

fn refine(rows: &[u16], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut w = 0;
        while w < cells.len() {
            let splitter: u16 = cells[w].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((rows[v] & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                changed = true;
                cells = next;
                break;
            }
            w += 1;
        }
        if !changed {
            return cells;
        }
    }
}

fn code_of(rows: &[u16], order: &[usize]) -> u128 {
    let mut code = 0u128;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            code = code << 1 | u128::from(rows[order[i]] >> order[j] & 1);
        }
    }
    code
}

fn search(rows: &[u16], cells: Vec<Vec<usize>>, best: &mut Option<u128>) {
    let cells = refine(rows, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_of(rows, &order);
        if best.is_none_or(|b| code < b) {
            *best = Some(code);
        }
        return;
    };
    for &v in &cells[target] {
        let mut next = cells.clone();
        let rest: Vec<usize> = cells[target].iter().copied().filter(|&u| u != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        search(rows, next, best);
    }
}

/// Isomorphism-invariant code of the graph with adjacency `rows`.
fn canonical_code(rows: &[u16]) -> u128 {
    let n = rows.len();
    if n == 0 {
        return 0;
    }
    let mut best = None;
    search(rows, vec![(0..n).collect()], &mut best);
    best.expect("at least one leaf")
}

fn rows_to_graph(rows: &[u16]) -> Graph {
    let n = rows.len();
    let edges = (0..n).flat_map(|u| {
        (u + 1..n)
            .filter(move |&v| rows[u] >> v & 1 == 1)
            .map(move |v| (u, v))
    });
    Graph::from_edges(n, edges).expect("valid graph")
}

fn is_connected(rows: &[u16]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let mut next = 0;
        for (v, &row) in rows.iter().enumerate() {
            if frontier >> v & 1 == 1 {
                next |= row;
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == rows.len()
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// for each `n` in `1..=max_n`. Index `i` of the result holds order `i + 1`.
pub fn all_graphs_by_order(max_n: usize) -> Vec<Vec<Rows>> {
    assert!(max_n <= 16);
    let mut levels: Vec<Vec<Rows>> = Vec::new();
    if max_n == 0 {
        return levels;
    }
    levels.push(vec![vec![0]]);
    for n in 1..max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for rows in &levels[n - 1] {
            for nbrs in 0u16..1 << n {
                let mut ext = rows.clone();
                for (u, row) in ext.iter_mut().enumerate() {
                    *row |= (nbrs >> u & 1) << n;
                }
                ext.push(nbrs);
                if seen.insert(canonical_code(&ext)) {
                    next.push(ext);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Every connected graph with `1..=max_n` vertices, up to isomorphism.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    all_graphs_by_order(max_n)
        .into_iter()
        .flatten()
        .filter(|rows| is_connected(rows))
        .map(|rows| rows_to_graph(&rows))
        .collect()
}

pub fn canonical_code_of(g: &Graph) -> u128 {
    let rows: Rows = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &u| m | 1 << u))
        .collect();
    canonical_code(&rows)
}

/// Which enumerator produced a collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumerator {
    Minor,
    MinorRecursive,
    Sparse,
    Bounded,
}

pub const BOUNDED_MAX_DEGREE: usize = 4;

/// Emitted sets (ascending vertex lists, in emission order) and the largest
/// operation count between consecutive outputs.
pub struct Run {
    pub sets: Vec<Vec<Vertex>>,
    pub max_delay_ops: u64,
}

pub fn run(g: &Graph, o: &VertexOrdering, which: Enumerator) -> Run {
    let mut sets = Vec::new();
    let visit = |s: &VertexSet| {
        sets.push(s.to_vec());
        ControlFlow::Continue(())
    };
    let max_delay_ops = match which {
        Enumerator::Minor => {
            let tester = MinorDomStructure::build(g, MinorConfig::default());
            enumerate_nonrecursive(g, o, tester, visit)
                .expect("minor run")
                .max_delay_ops
        }
        Enumerator::MinorRecursive => {
            let tester = MinorDomStructure::build(g, MinorConfig::with_delta(3));
            enumerate_recursive(g, o, tester, visit)
                .expect("recursive run")
                .max_delay_ops
        }
        Enumerator::Sparse => {
            let tester = SparseDomStructure::new(g, &orient_by_ordering(g, o), None);
            enumerate_nonrecursive(g, o, tester, visit)
                .expect("sparse run")
                .max_delay_ops
        }
        Enumerator::Bounded => {
            let config = BoundedConfig {
                max_degree: BOUNDED_MAX_DEGREE,
                verify: false,
            };
            enumerate_bounded_degree(g, o, config, visit)
                .expect("bounded run")
                .max_delay_ops
        }
    };
    Run {
        sets,
        max_delay_ops,
    }
}

/// The enumerators applicable to `g`.
pub fn enumerators_for(g: &Graph) -> Vec<Enumerator> {
    let mut list = vec![Enumerator::Minor, Enumerator::Sparse];
    if g.max_degree() <= BOUNDED_MAX_DEGREE {
        list.push(Enumerator::Bounded);
    }
    list
}

/// Compares an emitted collection with the expected sorted one; reports
/// duplicates and differences.
pub fn compare(mut produced: Vec<Vec<Vertex>>, expected: &[Vec<Vertex>]) -> Result<(), String> {
    let emitted = produced.len();
    produced.sort();
    produced.dedup();
    if produced.len() != emitted {
        return Err(format!("{} duplicate sets", emitted - produced.len()));
    }
    if produced != expected {
        let missing = expected.iter().find(|s| produced.binary_search(s).is_err());
        let extra = produced.iter().find(|s| expected.binary_search(s).is_err());
        return Err(format!(
            "{} sets emitted, {} expected; first missing {missing:?}, first extra {extra:?}",
            produced.len(),
            expected.len()
        ));
    }
    Ok(())
}

pub fn degeneracy_order(g: &Graph) -> VertexOrdering {
    degeneracy_ordering(g).0
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Random insert/delete sequence over `0..n`. The set size drifts toward a
/// target that is redrawn every `phase` updates, so sparse and dense states
/// both occur.
pub struct UpdateStream<R> {
    rng: R,
    n: usize,
    members: Vec<Vertex>,
    slot: Vec<Option<usize>>,
    target: usize,
    phase: usize,
    step: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Update {
    Insert(Vertex),
    Delete(Vertex),
}

impl<R: rand::Rng> UpdateStream<R> {
    pub fn new(rng: R, n: usize, phase: usize) -> Self {
        assert!(n > 0);
        UpdateStream {
            rng,
            n,
            members: Vec::new(),
            slot: vec![None; n],
            target: 1,
            phase: phase.max(1),
            step: 0,
        }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn next_update(&mut self) -> Update {
        if self.step.is_multiple_of(self.phase) {
            self.target = self.rng.gen_range(1..=self.n);
        }
        self.step += 1;
        let size = self.members.len();
        let delete = size == self.n
            || (size > 0
                && self
                    .rng
                    .gen_bool((size as f64 / self.target as f64).min(1.0) * 0.5 + 0.05));
        if delete {
            let i = self.rng.gen_range(0..size);
            let v = self.members.swap_remove(i);
            self.slot[v] = None;
            if i < self.members.len() {
                self.slot[self.members[i]] = Some(i);
            }
            Update::Delete(v)
        } else {
            let v = loop {
                let v = self.rng.gen_range(0..self.n);
                if self.slot[v].is_none() {
                    break v;
                }
            };
            self.slot[v] = Some(self.members.len());
            self.members.push(v);
            Update::Insert(v)
        }
    }
}
