//! Browser bindings: generate and color a graph, color pasted DIMACS text,
//! and ask the exhaustive oracle about a small graph. Every call takes and
//! returns JSON strings.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use ktcolor::driver::{drive, DriveOptions, DriveStats, Evidence, Route};
use ktcolor::graph::Graph;
use ktcolor::io::{read_dimacs, read_json_graph, GraphDoc};
use ktcolor::lab::gen::generate;
use ktcolor::lab::oracle::{count_colorings, find_coloring, ORACLE_LIMIT};
use ktcolor::params::parse_ratio;

#[derive(Serialize)]
struct Colored {
    graph: GraphDoc,
    colors_used: usize,
    coloring: Vec<u32>,
    route: Route,
    kt_colors: usize,
    wigderson_colors: usize,
    evidence: Option<Evidence>,
    k: u64,
    stats: DriveStats,
}

#[derive(Serialize)]
struct OracleAnswer {
    n: usize,
    m: usize,
    colorings: u64,
    example: Option<Vec<u8>>,
}

fn options(k: u32, nu: &str) -> Result<DriveOptions, String> {
    let nu = if nu.trim().is_empty() { None } else { Some(parse_ratio(nu).map_err(|e| e.to_string())?) };
    Ok(DriveOptions { k: (k > 0).then_some(k as u64), nu, ..DriveOptions::default() })
}

fn color_graph(g: &Graph, mut doc: GraphDoc, k: u32, nu: &str) -> Result<String, String> {
    let out = drive(g, &options(k, nu)?).map_err(|e| e.to_string())?;
    doc.edges = g.edges().map(|(u, v)| [u, v]).collect();
    let colored = Colored {
        graph: doc,
        colors_used: out.colors_used,
        coloring: out.coloring,
        route: out.route,
        kt_colors: out.kt_colors,
        wigderson_colors: out.wigderson_colors,
        evidence: out.evidence,
        k: out.params.k,
        stats: out.stats,
    };
    Ok(serde_json::to_string(&colored).expect("serializes"))
}

/// Generates a graph and colors it. `k = 0` picks the balanced target; an
/// empty `nu` keeps `n/k²`.
pub fn generate_and_color(family: &str, n: usize, p: f64, seed: u32, k: u32, nu: &str) -> Result<String, String> {
    let family = family.parse().map_err(|e: ktcolor::error::Error| e.to_string())?;
    let inst = generate(family, n, p, k.max(3) as u64, seed as u64).map_err(|e| e.to_string())?;
    color_graph(&inst.graph, inst.to_doc(), k, nu)
}

/// Colors a DIMACS or JSON graph.
pub fn color_text(text: &str, k: u32, nu: &str) -> Result<String, String> {
    let (g, doc) = if text.trim_start().starts_with('{') {
        let doc = read_json_graph(text).map_err(|e| e.to_string())?;
        (doc.to_graph().map_err(|e| e.to_string())?, doc)
    } else {
        let g = read_dimacs(text).map_err(|e| e.to_string())?.graph;
        let doc = GraphDoc::from_graph(&g);
        (g, doc)
    };
    color_graph(&g, doc, k, nu)
}

/// Counts proper 3-colorings of a graph of at most 25 vertices.
pub fn oracle_text(text: &str) -> Result<String, String> {
    let g = if text.trim_start().starts_with('{') {
        read_json_graph(text).and_then(|d| d.to_graph())
    } else {
        read_dimacs(text).map(|p| p.graph)
    }
    .map_err(|e| e.to_string())?;
    if g.n() > ORACLE_LIMIT {
        return Err(format!("the oracle handles at most {ORACLE_LIMIT} vertices, got {}", g.n()));
    }
    let answer = OracleAnswer {
        n: g.n(),
        m: g.m(),
        colorings: count_colorings(&g).map_err(|e| e.to_string())?,
        example: find_coloring(&g, &[], &[]).map_err(|e| e.to_string())?,
    };
    Ok(serde_json::to_string(&answer).expect("serializes"))
}

#[wasm_bindgen(js_name = generateAndColor)]
pub fn generate_and_color_js(family: &str, n: usize, p: f64, seed: u32, k: u32, nu: &str) -> Result<String, JsError> {
    generate_and_color(family, n, p, seed, k, nu).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = colorText)]
pub fn color_text_js(text: &str, k: u32, nu: &str) -> Result<String, JsError> {
    color_text(text, k, nu).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = oracle)]
pub fn oracle_js(text: &str) -> Result<String, JsError> {
    oracle_text(text).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_and_color_round_trip() {
        let out: serde_json::Value = serde_json::from_str(&generate_and_color("planted", 40, 0.2, 3, 0, "").unwrap()).unwrap();
        assert_eq!(out["coloring"].as_array().unwrap().len(), 40);
        assert!(out["colors_used"].as_u64().unwrap() >= 1);
        assert!(generate_and_color("nope", 40, 0.2, 3, 0, "").is_err());
    }

    #[test]
    fn colors_dimacs_and_json() {
        let tri = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        let out: serde_json::Value = serde_json::from_str(&color_text(tri, 2, "1").unwrap()).unwrap();
        assert_eq!(out["colors_used"], 3);
        let json = r#"{"n":2,"edges":[[0,1]]}"#;
        let out: serde_json::Value = serde_json::from_str(&color_text(json, 0, "").unwrap()).unwrap();
        assert_eq!(out["colors_used"], 2);
        assert!(color_text("p edge 2 1\ne 1 5\n", 0, "").is_err());
    }

    #[test]
    fn oracle_counts() {
        let out: serde_json::Value = serde_json::from_str(&oracle_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap()).unwrap();
        assert_eq!(out["colorings"], 6);
        assert!(oracle_text("p edge 30 0\n").is_err());
    }
}
