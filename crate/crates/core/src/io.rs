//! DIMACS `.col` and JSON graph formats.
//!
//! On disk DIMACS ids are 1-based; in memory they are 0-based. The writer
//! emits `p edge n m` followed by edges sorted with `u < v`, so reading and
//! writing a file reproduces it byte for byte once comments are stripped and
//! edges normalized.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cleanup, Graph};

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub cleanup: Cleanup,
    pub comments: Vec<String>,
}

pub fn read_dimacs(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut comments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse_err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        match parts.next() {
            Some("c") => comments.push(line[1..].trim_start().to_string()),
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err("duplicate problem line"));
                }
                let kind = parts.next().ok_or_else(|| parse_err("missing format"))?;
                if kind != "edge" && kind != "col" {
                    return Err(parse_err("expected `p edge <n> <m>`"));
                }
                let n = parse_num(parts.next(), line_no)?;
                let m = parse_num(parts.next(), line_no)?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err("edge before problem line"))?;
                let u = parse_num(parts.next(), line_no)?;
                let v = parse_num(parts.next(), line_no)?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err("vertex id outside 1..=n"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(parse_err(&format!("unknown line type `{other}`"))),
            None => {}
        }
    }
    let (n, _) = header.ok_or(Error::Parse { line: 0, msg: "missing problem line".into() })?;
    let (graph, cleanup) = Graph::from_edges_reporting(n, edges)?;
    if cleanup.self_loops + cleanup.duplicates > 0 {
        log::warn!(
            "dropped {} self-loops and {} duplicate edges while reading DIMACS input",
            cleanup.self_loops,
            cleanup.duplicates
        );
    }
    Ok(ParsedGraph { graph, cleanup, comments })
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or(Error::Parse { line, msg: "missing number".into() })?;
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad number `{tok}`") })
}

pub fn write_dimacs(graph: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", graph.n(), graph.m());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// JSON graph document: `{"n": .., "edges": [[u, v], ..], "planted": [..]?}` with 0-based ids.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planted: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl GraphDoc {
    pub fn from_graph(graph: &Graph) -> Self {
        GraphDoc {
            n: graph.n(),
            edges: graph.edges().map(|(u, v)| [u, v]).collect(),
            planted: None,
            family: None,
            seed: None,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }
}

pub fn read_json_graph(text: &str) -> Result<GraphDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "c sample\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";

    #[test]
    fn reads_and_writes_round_trip() {
        let parsed = read_dimacs(SAMPLE).unwrap();
        assert_eq!(parsed.graph.n(), 4);
        assert_eq!(parsed.graph.m(), 4);
        assert!(parsed.graph.has_edge(3, 0));
        assert_eq!(parsed.comments, vec!["sample".to_string()]);
        let written = write_dimacs(&parsed.graph, &parsed.comments);
        assert_eq!(written, "c sample\np edge 4 4\ne 1 2\ne 1 4\ne 2 3\ne 3 4\n");
        assert_eq!(write_dimacs(&read_dimacs(&written).unwrap().graph, &[]), write_dimacs(&parsed.graph, &[]));
    }

    #[test]
    fn normalizes_defects() {
        let parsed = read_dimacs("p edge 3 4\ne 1 2\ne 2 1\ne 3 3\ne 2 3\n").unwrap();
        assert_eq!(parsed.graph.m(), 2);
        assert_eq!(parsed.cleanup, Cleanup { self_loops: 1, duplicates: 1 });
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(read_dimacs("e 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_dimacs("p edge 2 1\ne 1 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_dimacs("p edge 2 1\ne 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(read_dimacs("p edge x 1\n"), Err(Error::Parse { .. })));
        assert!(read_dimacs("c only comments\n").is_err());
    }

    #[test]
    fn json_graph_document() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let doc = GraphDoc::from_graph(&g);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(read_json_graph(&text).unwrap().to_graph().unwrap(), g);
    }
}
