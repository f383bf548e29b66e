//! Edge-list and DIMACS readers.
//!
//! Edge-list: one `u v` pair per line, 0-indexed; `#` starts a comment line;
//! an optional `n <count>` line declares the vertex count so that trailing
//! isolated vertices can exist. Without it, `n` is one more than the largest
//! ID seen.
//!
//! DIMACS: `c` comment lines, a `p edge <n> <m>` problem line, then
//! `e <u> <v>` lines with 1-indexed endpoints.

use std::io::BufRead;
use std::str::FromStr;

use thiserror::Error;

use super::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    EdgeList,
    Dimacs,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(InputFormat::EdgeList),
            "dimacs" => Ok(InputFormat::Dimacs),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: expected a nonnegative integer, found `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange {
        line: usize,
        vertex: Vertex,
        n: usize,
    },
    #[error("read error: {0}")]
    Io(String),
}

fn integer(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::InvalidToken {
            line,
            token: token.to_string(),
        })
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

/// Reads a graph from `reader` in the given format.
pub fn parse_edge_list<R: BufRead>(reader: R, format: InputFormat) -> Result<Graph, ParseError> {
    match format {
        InputFormat::EdgeList => parse_plain(reader),
        InputFormat::Dimacs => parse_dimacs(reader),
    }
}

fn parse_plain<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex, usize)> = Vec::new();
    let mut max_seen: Option<Vertex> = None;
    for (idx, text) in reader.lines().enumerate() {
        let line = idx + 1;
        let text = text.map_err(|e| ParseError::Io(e.to_string()))?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(malformed(line, "header must be `n <count>`"));
            }
            if declared.is_some() {
                return Err(malformed(line, "duplicate `n` header"));
            }
            declared = Some(integer(tokens[1], line)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(malformed(
                line,
                format!("expected `u v`, found {} tokens", tokens.len()),
            ));
        }
        let u = integer(tokens[0], line)?;
        let v = integer(tokens[1], line)?;
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        max_seen = Some(max_seen.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, line));
    }
    let n = match declared {
        Some(n) => {
            if let Some(&(u, v, line)) = edges.iter().find(|&&(u, v, _)| u >= n || v >= n) {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    vertex: u.max(v),
                    n,
                });
            }
            n
        }
        None => max_seen.map_or(0, |m| m + 1),
    };
    Ok(Graph::from_edges(n, edges.into_iter().map(|(u, v, _)| (u, v))).expect("validated edges"))
}

fn parse_dimacs<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, text) in reader.lines().enumerate() {
        let line = idx + 1;
        let text = text.map_err(|e| ParseError::Io(e.to_string()))?;
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens[0] {
            "c" => continue,
            "p" => {
                if n.is_some() {
                    return Err(malformed(line, "duplicate problem line"));
                }
                if tokens.len() != 4 || !matches!(tokens[1], "edge" | "col") {
                    return Err(malformed(line, "problem line must be `p edge <n> <m>`"));
                }
                n = Some(integer(tokens[2], line)?);
                integer(tokens[3], line)?;
            }
            "e" => {
                let Some(count) = n else {
                    return Err(malformed(line, "edge before problem line"));
                };
                if tokens.len() != 3 {
                    return Err(malformed(line, "edge line must be `e <u> <v>`"));
                }
                let u = integer(tokens[1], line)?;
                let v = integer(tokens[2], line)?;
                for x in [u, v] {
                    if x == 0 || x > count {
                        return Err(ParseError::VertexOutOfRange {
                            line,
                            vertex: x,
                            n: count,
                        });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop {
                        line,
                        vertex: u - 1,
                    });
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(malformed(line, format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| malformed(0, "missing problem line"))?;
    Ok(Graph::from_edges(n, edges).expect("validated edges"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Graph, ParseError> {
        parse_edge_list(text.as_bytes(), InputFormat::EdgeList)
    }

    #[test]
    fn plain_examples() {
        let g = parse("0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        let g = parse("n 4\n0 1").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(3), 0);

        assert_eq!(
            parse("0 0"),
            Err(ParseError::SelfLoop { line: 1, vertex: 0 })
        );
    }

    #[test]
    fn comments_blanks_and_duplicates() {
        let g = parse("# a path\n\n0 1\n  \n1 0\n# done\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(parse("").unwrap().vertex_count(), 0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse("0 1\n1 x"),
            Err(ParseError::InvalidToken {
                line: 2,
                token: "x".into()
            })
        );
        assert_eq!(
            parse("0 1\n\n-1 2"),
            Err(ParseError::InvalidToken {
                line: 3,
                token: "-1".into()
            })
        );
        assert!(matches!(
            parse("0 1 2"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse("n 2\n0 1\n1 2"),
            Err(ParseError::VertexOutOfRange {
                line: 3,
                vertex: 2,
                n: 2
            })
        ));
    }

    #[test]
    fn dimacs() {
        let text = "c triangle\np edge 4 3\ne 1 2\ne 2 3\ne 1 3\n";
        let g = parse_edge_list(text.as_bytes(), InputFormat::Dimacs).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);

        let bad = parse_edge_list("p edge 2 1\ne 1 1\n".as_bytes(), InputFormat::Dimacs);
        assert_eq!(bad, Err(ParseError::SelfLoop { line: 2, vertex: 0 }));
        let bad = parse_edge_list("e 1 2\n".as_bytes(), InputFormat::Dimacs);
        assert!(matches!(bad, Err(ParseError::Malformed { line: 1, .. })));
        let bad = parse_edge_list("p edge 2 1\ne 0 1\n".as_bytes(), InputFormat::Dimacs);
        assert!(matches!(
            bad,
            Err(ParseError::VertexOutOfRange { line: 2, .. })
        ));
    }
}
