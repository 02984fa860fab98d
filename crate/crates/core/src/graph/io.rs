//! Edge-list text format.
//!
//! ```text
//! # optional comments
//! n d
//! u v        # one edge per line, 0 <= u < v < n
//! ```
//!
//! Blank lines and anything after `#` are ignored. [`to_edge_list`] writes
//! the canonical form (header, then edges in lexicographic order), which
//! loads back to an identical graph and re-serializes to identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (a, b) = parse_pair(content, line)?;
        match graph.as_mut() {
            None => {
                if b == 0 {
                    return Err(Error::Malformed { line, msg: "degree bound must be at least 1".into() });
                }
                graph = Some(Graph::empty(a, b)?);
            }
            Some(g) => {
                if a >= b {
                    return Err(Error::Malformed { line, msg: format!("edge {a} {b} must satisfy u < v") });
                }
                g.insert_edge(a, b, line)?;
            }
        }
    }
    graph.ok_or(Error::Malformed { line: 1, msg: "missing \"n d\" header".into() })
}

fn parse_pair(content: &str, line: usize) -> Result<(usize, usize)> {
    let mut it = content.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Malformed { line, msg: "expected two integers".into() })?;
        tok.parse().map_err(|_| Error::Malformed { line, msg: format!("not a non-negative integer: {tok:?}") })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Malformed { line, msg: "trailing tokens".into() });
    }
    Ok((a, b))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.edge_count() + 1));
    writeln!(out, "{} {}", g.n(), g.d()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads a graph; the returned graph has a fresh query counter.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_edge_list(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph() {
        let g = parse_edge_list("2 1\n0 1\n").unwrap();
        assert_eq!((g.n(), g.d(), g.edge_count()), (2, 1, 1));
        assert_eq!(g.queries(), 0);
    }

    #[test]
    fn complete_graph_k4() {
        let g = parse_edge_list("4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!((0..4).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn degree_violation_reports_line() {
        let err = parse_edge_list("3 1\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::DegreeBound { line: 3, vertex: 1, .. }), "{err}");
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# a path\n\n3 2  # header\n0 1\n\n1 2 # tail\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("2 1\n0 1\n0 1\n", 3),
            ("2 1\n0 x\n", 2),
            ("2 1\n0 2\n", 2),
            ("3 2\n1 0\n", 2),
            ("3 2\n0 1 2\n", 2),
            ("3\n", 1),
        ];
        for (text, want) in cases {
            let err = parse_edge_list(text).unwrap_err();
            let line = match err {
                Error::Malformed { line, .. }
                | Error::DuplicateEdge { line, .. }
                | Error::VertexOutOfRange { line, .. }
                | Error::DegreeBound { line, .. } => line,
                other => panic!("unexpected {other}"),
            };
            assert_eq!(line, want, "{text:?}");
        }
        assert!(parse_edge_list("# only a comment\n").is_err());
    }

    #[test]
    fn canonical_round_trip_is_bit_exact() {
        let text = "5 2\n0 1\n0 4\n1 2\n2 3\n3 4\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(to_edge_list(&g), text);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c5.txt");
        save_graph(&g, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
        assert_eq!(load_graph(&path).unwrap(), g);
    }
}
