//! Flat supervertex structure for graphs with a bounded out-degree orientation.
//!
//! `Q` holds the vertices of total degree at least `delta`. Every vertex
//! belongs to the class of its out-neighbors inside `Q` (its outset). A
//! vertex `v` outside `S` is undominated iff `lowdom(v) == 0` and no outset
//! member of its class is in `S`, so per class we keep `nundom` and `hidom`,
//! and `total` sums `nundom` over classes with `hidom == 0`.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{DomError, DominanceTester};
use crate::graph::{Graph, Orientation, Vertex};
use crate::set::VertexSet;

#[derive(Debug, Clone)]
pub struct SparseDomStructure {
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
    delta: usize,
    high: Vec<bool>,
    class: Vec<usize>,
    outsets: Vec<Vec<Vertex>>,
    class_size: Vec<usize>,
    nundom: Vec<usize>,
    hidom: Vec<usize>,
    lowdom: Vec<u32>,
    index: Vec<Vec<usize>>,
    total: usize,
    members: VertexSet,
    work: u64,
    max_update_work: u64,
}

/// `max(1, ceil(n^(1 - 1/k)))`, with `k = 0` treated as `k = 1`.
pub fn default_delta(n: usize, k: usize) -> usize {
    let k = k.max(1) as u32;
    let mut d = (n as f64).powf(1.0 - 1.0 / f64::from(k)).ceil() as usize;
    // Correct float error: want the smallest d with d^k >= n^(k-1).
    let Some(target) = (n as u128).checked_pow(k - 1) else {
        return d.max(1);
    };
    let reaches = |d: usize| (d as u128).checked_pow(k).is_none_or(|p| p >= target);
    while d > 0 && reaches(d - 1) {
        d -= 1;
    }
    while !reaches(d) {
        d += 1;
    }
    d.max(1)
}

impl SparseDomStructure {
    /// `delta` defaults to [`default_delta`] for the orientation's out-degree.
    ///
    /// # Panics
    /// If `orientation` has a different vertex count than `g`, or `delta == Some(0)`.
    pub fn new(g: &Graph, orientation: &Orientation, delta: Option<usize>) -> Self {
        let n = g.vertex_count();
        assert_eq!(
            orientation.vertex_count(),
            n,
            "orientation does not match graph"
        );
        let delta = delta.unwrap_or_else(|| default_delta(n, orientation.k()));
        assert!(delta >= 1, "delta must be positive");
        let high: Vec<bool> = g.vertices().map(|v| g.degree(v) >= delta).collect();
        let mut class = vec![0; n];
        let mut outsets: Vec<Vec<Vertex>> = Vec::new();
        let mut class_size = Vec::new();
        let mut by_key: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for (v, slot) in class.iter_mut().enumerate() {
            let key: Vec<Vertex> = orientation
                .out_neighbors(v)
                .iter()
                .copied()
                .filter(|&u| high[u])
                .collect();
            let c = *by_key.entry(key).or_insert_with_key(|key| {
                outsets.push(key.clone());
                class_size.push(0);
                outsets.len() - 1
            });
            *slot = c;
            class_size[c] += 1;
        }
        let mut index = vec![Vec::new(); n];
        for (c, outset) in outsets.iter().enumerate() {
            for &q in outset {
                index[q].push(c);
            }
        }
        SparseDomStructure {
            out: g
                .vertices()
                .map(|v| orientation.out_neighbors(v).to_vec())
                .collect(),
            inc: g
                .vertices()
                .map(|v| orientation.in_neighbors(v).to_vec())
                .collect(),
            delta,
            high,
            class,
            nundom: class_size.clone(),
            hidom: vec![0; outsets.len()],
            class_size,
            outsets,
            lowdom: vec![0; n],
            index,
            total: n,
            members: VertexSet::new(n),
            work: 0,
            max_update_work: 0,
        }
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn high_degree_count(&self) -> usize {
        self.high.iter().filter(|&&h| h).count()
    }

    pub fn class_count(&self) -> usize {
        self.outsets.len()
    }

    pub fn class_of(&self, v: Vertex) -> usize {
        self.class[v]
    }

    pub fn outset(&self, class: usize) -> &[Vertex] {
        &self.outsets[class]
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.class_size[class]
    }

    /// Longest `index` list, the cost of updating a high-degree vertex.
    pub fn max_index_len(&self) -> usize {
        self.index.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn max_update_work(&self) -> u64 {
        self.max_update_work
    }

    /// One class per line: `id size outset nundom hidom`.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for c in 0..self.class_count() {
            let outset: Vec<String> = self.outsets[c].iter().map(|q| q.to_string()).collect();
            writeln!(
                out,
                "{c} {} [{}] {} {}",
                self.class_size[c],
                outset.join(","),
                self.nundom[c],
                self.hidom[c]
            )
            .unwrap();
        }
        out
    }

    /// Recomputes all counters from the member set and compares.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.class.len();
        let mut lowdom = vec![0u32; n];
        for u in self.members.iter() {
            for &v in &self.out[u] {
                lowdom[v] += 1;
            }
            if !self.high[u] {
                for &v in &self.inc[u] {
                    lowdom[v] += 1;
                }
            }
        }
        if lowdom != self.lowdom {
            return Err("lowdom mismatch".into());
        }
        let mut nundom = vec![0; self.class_count()];
        for v in 0..n {
            if !self.members.contains(v) && lowdom[v] == 0 {
                nundom[self.class[v]] += 1;
            }
        }
        if nundom != self.nundom {
            return Err("nundom mismatch".into());
        }
        for c in 0..self.class_count() {
            let h = self.outsets[c]
                .iter()
                .filter(|&&q| self.members.contains(q))
                .count();
            if h != self.hidom[c] {
                return Err(format!("hidom mismatch in class {c}"));
            }
        }
        let total: usize = (0..self.class_count())
            .filter(|&c| self.hidom[c] == 0)
            .map(|c| nundom[c])
            .sum();
        if total != self.total {
            return Err("total mismatch".into());
        }
        Ok(())
    }

    /// `v` stops or starts counting towards its class's `nundom`.
    fn shift_nundom(&mut self, v: Vertex, up: bool) {
        let c = self.class[v];
        if up {
            self.nundom[c] += 1;
        } else {
            self.nundom[c] -= 1;
        }
        if self.hidom[c] == 0 {
            if up {
                self.total += 1;
            } else {
                self.total -= 1;
            }
        }
    }

    fn bump_lowdom(&mut self, w: Vertex, up: bool) {
        if up {
            self.lowdom[w] += 1;
            if self.lowdom[w] == 1 && !self.members.contains(w) {
                self.shift_nundom(w, false);
            }
        } else {
            self.lowdom[w] -= 1;
            if self.lowdom[w] == 0 && !self.members.contains(w) {
                self.shift_nundom(w, true);
            }
        }
    }

    fn update(&mut self, v: Vertex, up: bool) -> u64 {
        let mut work = 1;
        let out = std::mem::take(&mut self.out[v]);
        for &w in &out {
            self.bump_lowdom(w, up);
        }
        work += out.len() as u64;
        self.out[v] = out;
        if !self.high[v] {
            let inc = std::mem::take(&mut self.inc[v]);
            for &w in &inc {
                self.bump_lowdom(w, up);
            }
            work += inc.len() as u64;
            self.inc[v] = inc;
        } else {
            for i in 0..self.index[v].len() {
                let c = self.index[v][i];
                if up {
                    self.hidom[c] += 1;
                    if self.hidom[c] == 1 {
                        self.total -= self.nundom[c];
                    }
                } else {
                    self.hidom[c] -= 1;
                    if self.hidom[c] == 0 {
                        self.total += self.nundom[c];
                    }
                }
            }
            work += self.index[v].len() as u64;
        }
        work
    }
}

impl DominanceTester for SparseDomStructure {
    fn insert(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.class.len())?;
        if !self.members.insert(v) {
            return Err(DomError::AlreadyMember(v));
        }
        if self.lowdom[v] == 0 {
            self.shift_nundom(v, false);
        }
        let work = self.update(v, true);
        self.work += work;
        self.max_update_work = self.max_update_work.max(work);
        Ok(())
    }

    fn delete(&mut self, v: Vertex) -> Result<(), DomError> {
        DomError::check_range(v, self.class.len())?;
        if !self.members.remove(v) {
            return Err(DomError::NotMember(v));
        }
        if self.lowdom[v] == 0 {
            self.shift_nundom(v, true);
        }
        let work = self.update(v, false);
        self.work += work;
        self.max_update_work = self.max_update_work.max(work);
        Ok(())
    }

    #[inline]
    fn undominated_count(&self) -> usize {
        self.total
    }

    fn contains(&self, v: Vertex) -> bool {
        self.members.contains(v)
    }

    fn work(&self) -> u64 {
        self.work
    }
}
