//! Graph families for benchmarks and tests. Random ones take an explicit seed.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Orientation, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        .expect("valid clique")
}

/// Center `0` joined to leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).expect("valid star")
}

/// `t` vertex-disjoint triangles on `3t` vertices; `3^t` maximal independent sets.
pub fn disjoint_triangles(t: usize) -> Graph {
    let edges = (0..t).flat_map(|i| {
        let b = 3 * i;
        [(b, b + 1), (b + 1, b + 2), (b, b + 2)]
    });
    Graph::from_edges(3 * t, edges).expect("valid triangles")
}

/// `rows × cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).expect("valid grid")
}

/// Each vertex `i` joins `min(k, i)` distinct uniformly chosen earlier
/// vertices, so the result is `k`-degenerate.
pub fn random_degenerate<R: Rng>(n: usize, k: usize, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 1..n {
        for j in sample(rng, i, k.min(i)) {
            edges.push((j, i));
        }
    }
    Graph::from_edges(n, edges).expect("valid degenerate graph")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}

/// Each vertex picks up to `k` random out-neighbors, skipping pairs already
/// joined, so every out-degree is at most `k`.
pub fn random_k_oriented<R: Rng>(n: usize, k: usize, rng: &mut R) -> (Graph, Orientation) {
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    if n >= 2 {
        for u in 0..n {
            for _ in 0..k {
                let v = rng.gen_range(0..n - 1);
                let v = if v >= u { v + 1 } else { v };
                if seen.insert((u.min(v), u.max(v))) {
                    arcs.push((u, v));
                }
            }
        }
    }
    let g = Graph::from_edges(n, arcs.iter().copied()).expect("valid oriented graph");
    let o = Orientation::from_arcs(&g, arcs).expect("each edge oriented once");
    (g, o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degeneracy_ordering;

    #[test]
    fn family_shapes() {
        let g = disjoint_triangles(3);
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 9));
        let g = grid(3, 4);
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 17));
        assert_eq!(star(4).degree(0), 4);
        assert_eq!(complete(5).edge_count(), 10);
    }

    #[test]
    fn random_families_are_seeded_and_sparse() {
        let a = random_degenerate(60, 3, &mut rng(7));
        assert_eq!(a, random_degenerate(60, 3, &mut rng(7)));
        assert!(degeneracy_ordering(&a).1 <= 3);

        let (g, o) = random_k_oriented(80, 2, &mut rng(3));
        assert!(o.k() <= 2);
        assert_eq!(g, random_k_oriented(80, 2, &mut rng(3)).0);
        assert_eq!(gnp(20, 0.3, &mut rng(1)), gnp(20, 0.3, &mut rng(1)));
    }
}
