//! Update scripts for the `dominance` command.
//!
//! One command per line: `+v` inserts `v`, `-v` deletes it, `?` prints the
//! current answer and `!` checks it against a from-scratch recount. Blank
//! lines and lines starting with `#` are ignored.

use std::io::{BufRead, Write};

use clap::ValueEnum;

use super::CliError;
use crate::dominance::{
    DomError, DominanceTester, IndependenceCounter, MinorConfig, MinorDomStructure,
    PairGraphIndependence, SparseDomStructure,
};
use crate::graph::{degeneracy_ordering, orient_by_ordering, Graph, Vertex};
use crate::oracle::{naive_is_independent, naive_undominated};
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Minor,
    Sparse,
    Independence,
}

enum Op {
    Insert(Vertex),
    Delete(Vertex),
    Query,
    Check,
}

fn parse_line(text: &str, line: usize) -> Result<Option<Op>, CliError> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('#') {
        return Ok(None);
    }
    let vertex = |rest: &str| {
        rest.trim().parse::<Vertex>().map_err(|_| {
            CliError::Parse(format!("script line {line}: bad vertex `{}`", rest.trim()))
        })
    };
    let op = match text.as_bytes()[0] {
        b'+' => Op::Insert(vertex(&text[1..])?),
        b'-' => Op::Delete(vertex(&text[1..])?),
        b'?' if text == "?" => Op::Query,
        b'!' if text == "!" => Op::Check,
        _ => {
            return Err(CliError::Parse(format!(
                "script line {line}: unknown command `{text}`"
            )))
        }
    };
    Ok(Some(op))
}

enum Target {
    Dominance(Box<dyn DominanceTester>),
    Independence(IndependenceCounter, Box<PairGraphIndependence>),
}

impl Target {
    fn update(&mut self, op: &Op) -> Result<(), DomError> {
        match (self, op) {
            (Target::Dominance(t), Op::Insert(v)) => t.insert(*v),
            (Target::Dominance(t), Op::Delete(v)) => t.delete(*v),
            (Target::Independence(c, p), Op::Insert(v)) => c.insert(*v).and_then(|()| p.insert(*v)),
            (Target::Independence(c, p), Op::Delete(v)) => c.delete(*v).and_then(|()| p.delete(*v)),
            _ => Ok(()),
        }
    }
}

/// Executes `script` against a fresh structure over `g`.
pub fn run_script(
    g: &Graph,
    structure: Structure,
    delta: Option<usize>,
    script: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let mut target = match structure {
        Structure::Minor => {
            let delta = delta.unwrap_or(MinorConfig::default().delta);
            if delta < 2 {
                return Err(CliError::Usage(
                    "--delta must be at least 2 for the minor structure".into(),
                ));
            }
            Target::Dominance(Box::new(MinorDomStructure::build(
                g,
                MinorConfig::with_delta(delta),
            )))
        }
        Structure::Sparse => {
            if delta == Some(0) {
                return Err(CliError::Usage("--delta must be positive".into()));
            }
            let (order, _) = degeneracy_ordering(g);
            let o = orient_by_ordering(g, &order);
            Target::Dominance(Box::new(SparseDomStructure::new(g, &o, delta)))
        }
        Structure::Independence => {
            let (order, _) = degeneracy_ordering(g);
            let counter = IndependenceCounter::new(&orient_by_ordering(g, &order));
            Target::Independence(counter, Box::new(PairGraphIndependence::new(g)))
        }
    };
    let mut members = VertexSet::new(g.vertex_count());
    for (idx, text) in script.lines().enumerate() {
        let line = idx + 1;
        let text = text.map_err(|e| CliError::Parse(format!("script line {line}: {e}")))?;
        let Some(op) = parse_line(&text, line)? else {
            continue;
        };
        match op {
            Op::Insert(_) | Op::Delete(_) => {
                target
                    .update(&op)
                    .map_err(|e| CliError::Parse(format!("script line {line}: {e}")))?;
                match op {
                    Op::Insert(v) => members.insert(v),
                    Op::Delete(v) => members.remove(v),
                    _ => unreachable!(),
                };
            }
            Op::Query => match &target {
                Target::Dominance(t) => writeln!(out, "{}", t.undominated_count())?,
                Target::Independence(c, _) => writeln!(
                    out,
                    "{}",
                    if c.is_independent() {
                        "independent"
                    } else {
                        "dependent"
                    }
                )?,
            },
            Op::Check => {
                let list = members.to_vec();
                match &target {
                    Target::Dominance(t) => {
                        let expected = naive_undominated(g, &list);
                        if t.undominated_count() != expected {
                            return Err(CliError::Mismatch(format!(
                                "script line {line}: structure reports {}, recount gives {expected}",
                                t.undominated_count()
                            )));
                        }
                    }
                    Target::Independence(c, p) => {
                        let expected = naive_is_independent(g, &list);
                        if c.is_independent() != expected || p.is_independent() != expected {
                            return Err(CliError::Mismatch(format!(
                                "script line {line}: counter says {}, pair graph says {}, direct check says {expected}",
                                c.is_independent(),
                                p.is_independent()
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::generators::{cycle, path};

    fn run(g: &Graph, s: Structure, script: &str) -> Result<String, CliError> {
        let mut out = Vec::new();
        run_script(g, s, None, &mut script.as_bytes(), &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn script_examples() {
        assert_eq!(
            run(&path(4), Structure::Minor, "+1\n+3\n?\n!").unwrap(),
            "0\n"
        );
        assert_eq!(
            run(&cycle(5), Structure::Independence, "+0\n+2\n?\n!").unwrap(),
            "independent\n"
        );
        assert_eq!(
            run(&cycle(5), Structure::Sparse, "?\n+0\n?").unwrap(),
            "5\n2\n"
        );
        assert_eq!(
            run(&cycle(5), Structure::Independence, "?\n+0\n+1\n?").unwrap(),
            "independent\ndependent\n"
        );
    }

    #[test]
    fn script_errors_name_the_line() {
        let err = run(&path(4), Structure::Minor, "+1\n\nx").unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("line 3"));
        let err = run(&path(4), Structure::Sparse, "+1\n+1").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
