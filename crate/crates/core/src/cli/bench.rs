use std::io::Write;
use std::ops::ControlFlow;

use clap::ValueEnum;

use super::generators::{disjoint_triangles, grid, random_degenerate, rng};
use super::runner::{run_algorithm, Algorithm, RunOptions};
use super::CliError;
use crate::graph::{degeneracy_ordering, Graph};

pub const BENCH_HEADER: &str =
    "family,size,algorithm,n,sets,total_ops,ops_per_set,max_delay_ops,wall_time";

/// Degeneracy bound of the `random-degenerate` family.
const RANDOM_DEGENERACY: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `size` disjoint triangles.
    Triangles,
    /// A `size × size` grid.
    Grid,
    /// `size` vertices, 3-degenerate, seeded.
    RandomDegenerate,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Triangles => "triangles",
            Family::Grid => "grid",
            Family::RandomDegenerate => "random-degenerate",
        }
    }

    pub fn build(self, size: usize, seed: u64) -> Graph {
        match self {
            Family::Triangles => disjoint_triangles(size),
            Family::Grid => grid(size, size),
            Family::RandomDegenerate => {
                random_degenerate(size, RANDOM_DEGENERACY, &mut rng(seed ^ size as u64))
            }
        }
    }
}

/// One CSV row per size and applicable algorithm.
pub fn run_bench(
    family: Family,
    sizes: &[usize],
    seed: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    writeln!(err, "seed={seed}")?;
    writeln!(out, "{BENCH_HEADER}")?;
    let options = RunOptions::default();
    for &size in sizes {
        let g = family.build(size, seed);
        let (order, _) = degeneracy_ordering(&g);
        let mut algorithms = vec![Algorithm::GenericMinor, Algorithm::GenericSparse];
        if g.max_degree() <= options.max_degree {
            algorithms.push(Algorithm::Bounded);
        }
        for algorithm in algorithms {
            let stats = run_algorithm(&g, &order, algorithm, options, &mut |_| {
                ControlFlow::Continue(())
            })?;
            writeln!(
                out,
                "{},{size},{algorithm},{},{},{},{:.3},{},{:.6}",
                family.name(),
                g.vertex_count(),
                stats.sets_emitted,
                stats.total_ops,
                stats.ops_per_set(),
                stats.max_inter_output_ops,
                stats.wall_time
            )?;
            out.flush()?;
        }
    }
    Ok(())
}
