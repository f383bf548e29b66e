use std::fmt;
use std::io::Write;
use std::ops::ControlFlow;
use std::time::Instant;

use clap::ValueEnum;

use super::{CliError, EnumerateArgs};
use crate::bounded_degree::{enumerate_bounded_degree, BoundedConfig, BoundedError};
use crate::dominance::{MinorConfig, MinorDomStructure, SparseDomStructure};
use crate::graph::{degeneracy_ordering, orient_by_ordering, Graph, VertexOrdering};
use crate::oracle::{brute_mis, OracleReport, BRUTE_MAX_VERTICES};
use crate::reverse_search::{enumerate_nonrecursive, EnumError, EnumStats};
use crate::set::VertexSet;

/// `auto` uses the minor-closed structure up to this degeneracy.
pub const AUTO_MINOR_DEGENERACY: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Auto,
    GenericMinor,
    GenericSparse,
    Bounded,
    Brute,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderKind {
    Degeneracy,
    Input,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub delta: Option<usize>,
    pub max_degree: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            delta: None,
            max_degree: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub algorithm: Algorithm,
    pub sets_emitted: u64,
    pub tester_updates: u64,
    pub parent_computations: u64,
    pub fertility_checks: u64,
    pub total_ops: u64,
    pub max_inter_output_ops: u64,
    pub wall_time: f64,
}

impl RunStats {
    fn new(algorithm: Algorithm) -> Self {
        RunStats {
            algorithm,
            sets_emitted: 0,
            tester_updates: 0,
            parent_computations: 0,
            fertility_checks: 0,
            total_ops: 0,
            max_inter_output_ops: 0,
            wall_time: 0.0,
        }
    }

    fn from_generic(algorithm: Algorithm, s: &EnumStats) -> Self {
        RunStats {
            sets_emitted: s.sets,
            tester_updates: s.tester_updates,
            parent_computations: s.parent_computations,
            total_ops: s.total_ops,
            max_inter_output_ops: s.max_delay_ops,
            ..RunStats::new(algorithm)
        }
    }

    pub fn ops_per_set(&self) -> f64 {
        if self.sets_emitted == 0 {
            0.0
        } else {
            self.total_ops as f64 / self.sets_emitted as f64
        }
    }

    pub fn write_kv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "algorithm={}", self.algorithm)?;
        writeln!(w, "sets_emitted={}", self.sets_emitted)?;
        writeln!(w, "tester_updates={}", self.tester_updates)?;
        writeln!(w, "parent_computations={}", self.parent_computations)?;
        writeln!(w, "fertility_checks={}", self.fertility_checks)?;
        writeln!(w, "total_ops={}", self.total_ops)?;
        writeln!(w, "max_inter_output_ops={}", self.max_inter_output_ops)?;
        writeln!(w, "wall_time={:.6}", self.wall_time)
    }
}

/// Replaces `auto` by a concrete algorithm for `g`.
pub fn resolve_algorithm(
    g: &Graph,
    requested: Algorithm,
    max_degree: usize,
    degeneracy: usize,
) -> Algorithm {
    match requested {
        Algorithm::Auto if g.max_degree() <= max_degree => Algorithm::Bounded,
        Algorithm::Auto if degeneracy <= AUTO_MINOR_DEGENERACY => Algorithm::GenericMinor,
        Algorithm::Auto => Algorithm::GenericSparse,
        other => other,
    }
}

fn enum_error(e: EnumError) -> CliError {
    match e {
        EnumError::LaterTooLarge { .. } => CliError::Usage(format!("{e}; try --order degeneracy")),
        other => CliError::Internal(other.to_string()),
    }
}

/// Runs a concrete (non-`auto`) algorithm, passing each set to `visit`.
pub fn run_algorithm(
    g: &Graph,
    o: &VertexOrdering,
    algorithm: Algorithm,
    options: RunOptions,
    visit: &mut dyn FnMut(&VertexSet) -> ControlFlow<()>,
) -> Result<RunStats, CliError> {
    let start = Instant::now();
    let mut stats = match algorithm {
        Algorithm::Auto => return Err(CliError::Internal("algorithm not resolved".into())),
        Algorithm::GenericMinor => {
            let delta = options.delta.unwrap_or(MinorConfig::default().delta);
            if delta < 2 {
                return Err(CliError::Usage(
                    "--delta must be at least 2 for generic-minor".into(),
                ));
            }
            let tester = MinorDomStructure::build(g, MinorConfig::with_delta(delta));
            let s = enumerate_nonrecursive(g, o, tester, visit).map_err(enum_error)?;
            RunStats::from_generic(algorithm, &s)
        }
        Algorithm::GenericSparse => {
            if options.delta == Some(0) {
                return Err(CliError::Usage("--delta must be positive".into()));
            }
            let tester = SparseDomStructure::new(g, &orient_by_ordering(g, o), options.delta);
            let s = enumerate_nonrecursive(g, o, tester, visit).map_err(enum_error)?;
            RunStats::from_generic(algorithm, &s)
        }
        Algorithm::Bounded => {
            let config = BoundedConfig {
                max_degree: options.max_degree,
                verify: false,
            };
            let s = enumerate_bounded_degree(g, o, config, visit).map_err(|e| match e {
                BoundedError::DegreeTooLarge { .. } => CliError::Usage(e.to_string()),
                BoundedError::Enum(inner) => enum_error(inner),
                BoundedError::Invariant(_) => CliError::Internal(e.to_string()),
            })?;
            RunStats {
                sets_emitted: s.sets,
                tester_updates: s.set_updates,
                fertility_checks: s.fertility_evals,
                total_ops: s.total_ops,
                max_inter_output_ops: s.max_delay_ops,
                ..RunStats::new(algorithm)
            }
        }
        Algorithm::Brute => {
            let sets = brute_mis(g).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut stats = RunStats::new(algorithm);
            for members in sets {
                stats.sets_emitted += 1;
                if visit(&VertexSet::from_slice(g.vertex_count(), &members)).is_break() {
                    break;
                }
            }
            stats
        }
    };
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok(stats)
}

fn write_set(out: &mut dyn Write, s: &VertexSet) -> std::io::Result<()> {
    let mut first = true;
    for v in s.iter() {
        if first {
            write!(out, "{v}")?;
            first = false;
        } else {
            write!(out, " {v}")?;
        }
    }
    writeln!(out)
}

pub(super) fn cmd_enumerate(
    g: &Graph,
    args: &EnumerateArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let n = g.vertex_count();
    if args.verify && n > BRUTE_MAX_VERTICES {
        return Err(CliError::Usage(format!(
            "--verify needs at most {BRUTE_MAX_VERTICES} vertices, graph has {n}"
        )));
    }
    let (degeneracy_order, degeneracy) = degeneracy_ordering(g);
    let order = match args.order {
        OrderKind::Degeneracy => degeneracy_order,
        OrderKind::Input => VertexOrdering::identity(n),
    };
    let algorithm = resolve_algorithm(g, args.algorithm, args.max_degree, degeneracy);
    let options = RunOptions {
        delta: args.delta,
        max_degree: args.max_degree,
    };

    let mut collected = Vec::new();
    let mut write_error = None;
    let mut visit = |s: &VertexSet| {
        if args.verify {
            collected.push(s.to_vec());
        }
        if !args.count_only {
            if let Err(e) = write_set(stdout, s) {
                write_error = Some(e);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    };
    let stats = run_algorithm(g, &order, algorithm, options, &mut visit)?;
    if let Some(e) = write_error {
        return Err(e.into());
    }
    if args.count_only {
        writeln!(stdout, "{}", stats.sets_emitted)?;
    }
    stdout.flush()?;
    if args.stats {
        writeln!(stderr, "n={n}")?;
        writeln!(stderr, "m={}", g.edge_count())?;
        writeln!(stderr, "degeneracy={degeneracy}")?;
        stats.write_kv(stderr)?;
    }
    if args.verify {
        let report = OracleReport::for_graph(g).map_err(|e| CliError::Usage(e.to_string()))?;
        report
            .check(collected)
            .map_err(|e| CliError::Mismatch(format!("verification failed: {e}")))?;
    }
    Ok(())
}
