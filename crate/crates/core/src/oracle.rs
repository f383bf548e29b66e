//! Brute-force reference implementations.
//!
//! Nothing here uses the reverse-search or supervertex machinery, so a bug in
//! those paths cannot be mirrored by the oracle.

use thiserror::Error;

use crate::dominance::{DomError, DominanceTester};
use crate::graph::{Graph, Vertex};
use crate::set::VertexSet;

/// Largest graph `brute_mis` accepts.
pub const BRUTE_MAX_VERTICES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute force refuses graphs with {n} > {max} vertices")]
    TooLarge { n: usize, max: usize },
}

/// All maximal independent sets, each as an ascending vertex list, sorted
/// lexicographically.
pub fn brute_mis(g: &Graph) -> Result<Vec<Vec<Vertex>>, OracleError> {
    let n = g.vertex_count();
    if n > BRUTE_MAX_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            max: BRUTE_MAX_VERTICES,
        });
    }
    let nbr: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let mut out = Vec::new();
    backtrack(&nbr, n, 0, 0, &mut out);
    let mut sets: Vec<Vec<Vertex>> = out
        .into_iter()
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    sets.sort();
    Ok(sets)
}

fn backtrack(nbr: &[u32], n: usize, i: usize, chosen: u32, out: &mut Vec<u32>) {
    if i == n {
        let maximal = (0..n).all(|v| chosen >> v & 1 == 1 || nbr[v] & chosen != 0);
        if maximal {
            out.push(chosen);
        }
        return;
    }
    if nbr[i] & chosen == 0 {
        backtrack(nbr, n, i + 1, chosen | 1 << i, out);
    }
    // Leaving `i` out only pays off if something can still dominate it.
    let undecided_after = if i + 1 >= 32 { 0 } else { !0u32 << (i + 1) };
    if nbr[i] & chosen != 0 || nbr[i] & undecided_after != 0 {
        backtrack(nbr, n, i + 1, chosen, out);
    }
}

/// Number of vertices neither in `members` nor adjacent to a member.
pub fn naive_undominated(g: &Graph, members: &[Vertex]) -> usize {
    let mut dominated = vec![false; g.vertex_count()];
    for &v in members {
        dominated[v] = true;
        for &u in g.neighbors(v) {
            dominated[u] = true;
        }
    }
    dominated.iter().filter(|&&d| !d).count()
}

pub fn naive_is_independent(g: &Graph, members: &[Vertex]) -> bool {
    let set = VertexSet::from_slice(g.vertex_count(), members);
    set.is_independent(g)
}

pub fn naive_is_maximal_independent(g: &Graph, members: &[Vertex]) -> bool {
    naive_is_independent(g, members) && naive_undominated(g, members) == 0
}

/// Ground truth for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub mis: Vec<Vec<Vertex>>,
}

impl OracleReport {
    pub fn for_graph(g: &Graph) -> Result<Self, OracleError> {
        Ok(OracleReport { mis: brute_mis(g)? })
    }

    pub fn contains(&self, set: &[Vertex]) -> bool {
        self.mis.binary_search_by(|s| s.as_slice().cmp(set)).is_ok()
    }

    /// Compares an enumerator's output (any order) against the oracle.
    /// Returns a description of the first discrepancy.
    pub fn check(&self, mut produced: Vec<Vec<Vertex>>) -> Result<(), String> {
        produced.sort();
        if let Some(w) = produced.windows(2).find(|w| w[0] == w[1]) {
            return Err(format!("duplicate set {:?}", w[0]));
        }
        if let Some(s) = produced.iter().find(|s| !self.contains(s)) {
            return Err(format!("unexpected set {s:?}"));
        }
        if produced.len() != self.mis.len() {
            let missing = self.mis.iter().find(|s| produced.binary_search(s).is_err());
            return Err(format!(
                "{} sets produced, {} expected; first missing {:?}",
                produced.len(),
                self.mis.len(),
                missing
            ));
        }
        Ok(())
    }
}

/// Dominance tester that recounts from scratch on every query.
#[derive(Debug, Clone)]
pub struct NaiveDominance {
    graph: Graph,
    set: VertexSet,
    work: u64,
}

impl NaiveDominance {
    pub fn new(g: &Graph) -> Self {
        NaiveDominance {
            graph: g.clone(),
            set: VertexSet::new(g.vertex_count()),
            work: 0,
        }
    }

    pub fn members(&self) -> &VertexSet {
        &self.set
    }
}

impl DominanceTester for NaiveDominance {
    fn insert(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.set.universe())?;
        if !self.set.insert(v) {
            return Err(DomError::AlreadyMember(v));
        }
        self.work += 1;
        Ok(())
    }

    fn delete(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.set.universe())?;
        if !self.set.remove(v) {
            return Err(DomError::NotMember(v));
        }
        self.work += 1;
        Ok(())
    }

    fn undominated_count(&self) -> usize {
        naive_undominated(&self.graph, &self.set.to_vec())
    }

    fn contains(&self, v: Vertex) -> bool {
        self.set.contains(v)
    }

    fn work(&self) -> u64 {
        self.work
    }
}
