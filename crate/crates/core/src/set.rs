use std::fmt;

use crate::graph::{Graph, Vertex};

/// A subset of `0..n` with O(1) membership and ascending iteration.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    mask: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            mask: vec![false; n],
            len: 0,
        }
    }

    /// # Panics
    /// If a member is `>= n`.
    pub fn from_slice(n: usize, members: &[Vertex]) -> Self {
        let mut s = VertexSet::new(n);
        for &v in members {
            s.insert(v);
        }
        s
    }

    /// Number of vertices in the ground set.
    #[inline]
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.mask[v]
    }

    /// Returns `true` if `v` was not already present.
    #[inline]
    pub fn insert(&mut self, v: Vertex) -> bool {
        let fresh = !self.mask[v];
        if fresh {
            self.mask[v] = true;
            self.len += 1;
        }
        fresh
    }

    /// Returns `true` if `v` was present.
    #[inline]
    pub fn remove(&mut self, v: Vertex) -> bool {
        let present = self.mask[v];
        if present {
            self.mask[v] = false;
            self.len -= 1;
        }
        present
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Members in ascending ID order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(v, _)| v)
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn is_independent(&self, g: &Graph) -> bool {
        self.iter()
            .all(|v| g.neighbors(v).iter().all(|&u| !self.mask[u]))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
