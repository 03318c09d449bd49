//! The MG1 text format for mixed graphs.
//!
//! ```text
//! # comment
//! n 4
//! e 0 1
//! a 2 0
//! ```
//!
//! The first non-comment line declares the vertex count. `e u v` adds an
//! undirected edge, `a u v` an arc from `u` to `v`. `#` starts a comment
//! anywhere on a line. Repeating a vertex pair is an error.

use crate::error::Error;
use crate::graph::{EdgeKind, EdgeRecord, MixedGraph};

pub fn parse_mg1(text: &str) -> Result<MixedGraph, Error> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<EdgeRecord> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(head) = toks.next() else { continue };
        match head {
            "n" => {
                if n.is_some() {
                    return Err(Error::Parse { line, msg: "repeated 'n' line".into() });
                }
                let count = parse_field(toks.next(), line, "vertex count")?;
                expect_end(toks.next(), line)?;
                n = Some(count);
            }
            "e" | "a" => {
                if n.is_none() {
                    return Err(Error::Parse {
                        line,
                        msg: "edge record before the 'n' line".into(),
                    });
                }
                let u = parse_field(toks.next(), line, "first endpoint")?;
                let v = parse_field(toks.next(), line, "second endpoint")?;
                expect_end(toks.next(), line)?;
                edges.push(if head == "e" {
                    EdgeRecord::undirected(u, v)
                } else {
                    EdgeRecord::arc(u, v)
                });
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown record type '{other}'"),
                });
            }
        }
    }
    let Some(n) = n else {
        return Err(Error::Parse { line: 1, msg: "missing 'n' line".into() });
    };
    MixedGraph::new(n, edges)
}

fn parse_field(tok: Option<&str>, line: usize, what: &str) -> Result<usize, Error> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what} '{tok}'"),
    })
}

fn expect_end(tok: Option<&str>, line: usize) -> Result<(), Error> {
    match tok {
        None => Ok(()),
        Some(extra) => Err(Error::Parse {
            line,
            msg: format!("unexpected trailing token '{extra}'"),
        }),
    }
}

/// Normalized serialization: the `n` line, then edge records in the graph's
/// sorted storage order. `parse_mg1(emit_mg1(g)) == g` for every graph.
pub fn emit_mg1(g: &MixedGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        let tag = match e.kind {
            EdgeKind::Undirected => 'e',
            EdgeKind::Arc => 'a',
        };
        out.push_str(&format!("{tag} {} {}\n", e.u, e.v));
    }
    out
}
