//! DIMACS ASCII clique format.
//!
//! ```text
//! c optional comments
//! p edge <N> <M>
//! e <u> <v>        (1-based, M lines)
//! ```

use std::fmt::Write as _;
use std::io::BufRead;

use super::Graph;
use crate::{Error, Result};

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    read_dimacs(text.as_bytes())
}

/// Streaming parser. Duplicate `e` lines are tolerated; self-loops, ids
/// outside `1..=N`, a missing or repeated `p` line, and `e` lines before
/// `p` are errors carrying the 1-based line number.
pub fn read_dimacs<R: BufRead>(reader: R) -> Result<Graph> {
    let mut num_vertices: Option<usize> = None;
    let mut edges = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = index + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if num_vertices.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                match tokens.next() {
                    Some("edge" | "col") => {}
                    other => {
                        return Err(err(format!("unsupported problem format {other:?}")));
                    }
                }
                let n = parse_count(tokens.next(), "vertex count").map_err(&err)?;
                parse_count(tokens.next(), "edge count").map_err(&err)?;
                num_vertices = Some(n);
            }
            Some("e") => {
                let n = num_vertices.ok_or_else(|| err("edge before problem line".into()))?;
                let u = parse_vertex(tokens.next(), n).map_err(&err)?;
                let v = parse_vertex(tokens.next(), n).map_err(&err)?;
                if u == v {
                    return Err(err(format!("self-loop on vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            Some(other) => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let n = num_vertices.ok_or(Error::Parse {
        line: 0,
        message: "missing problem line".into(),
    })?;
    Graph::from_edges(n, edges)
}

fn parse_count(token: Option<&str>, what: &str) -> std::result::Result<usize, String> {
    let token = token.ok_or_else(|| format!("missing {what}"))?;
    token
        .parse()
        .map_err(|_| format!("invalid {what} `{token}`"))
}

fn parse_vertex(token: Option<&str>, n: usize) -> std::result::Result<usize, String> {
    let id = parse_count(token, "vertex id")?;
    if id == 0 || id > n {
        return Err(format!("vertex id {id} outside [1, {n}]"));
    }
    Ok(id - 1)
}

/// Serializes with 1-based ids, edges in lexicographic order.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.num_edges());
    let _ = writeln!(out, "p edge {} {}", g.num_vertices(), g.num_edges());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
