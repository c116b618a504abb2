//! Browser front end: each exported operation returns a JSON document with a
//! projected diagram ready to draw on a canvas, plus the operation's result.
//! Errors come back as `{"error": "..."}` so the page never has to catch.

use bilink::classify::classify;
use bilink::diagram::{project_generic, CurveRef, Diagram};
use bilink::extract::{extract_nlink_in, ExtractOptions, Method};
use bilink::geometry::{random_closed_curve, random_embedding, RouteRef};
use bilink::graph::{parse_shape, Edge, PartitionedGraph, Square, Vertex};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct StrandView {
    /// `12` for an edge, `curve` for the extra closed curve.
    name: String,
    points: Vec<[f64; 2]>,
    closed: bool,
}

#[derive(Serialize)]
struct CrossingView {
    at: [f64; 2],
    upper: usize,
    lower: usize,
}

#[derive(Serialize)]
struct VertexView {
    label: String,
    at: [f64; 2],
}

#[derive(Serialize)]
struct DiagramView {
    direction: String,
    strands: Vec<StrandView>,
    crossings: Vec<CrossingView>,
    vertices: Vec<VertexView>,
}

#[derive(Serialize)]
struct Response {
    diagram: DiagramView,
    summary: String,
    /// Strand indices to emphasize, one group per highlighted curve.
    highlight: Vec<Vec<usize>>,
}

fn view(d: &Diagram) -> DiagramView {
    let g = d.graph();
    let strands = d
        .strands()
        .iter()
        .map(|s| StrandView {
            name: match s.owner {
                RouteRef::Edge(e) => g.edge_name(e),
                RouteRef::Curve(_) => "curve".into(),
            },
            points: s.points.iter().map(|p| p.to_f64()).collect(),
            closed: s.closed,
        })
        .collect();
    let crossings = d
        .crossings()
        .iter()
        .map(|c| CrossingView {
            at: c.point.to_f64(),
            upper: c.upper.strand,
            lower: c.lower.strand,
        })
        .collect();
    // edge strands run from their X end to their Y end
    let vertices = g
        .vertices()
        .into_iter()
        .map(|v| {
            let at = match v {
                Vertex::X(a) => d.strands()[d.edge_strand(Edge::new(a, 0))].points[0].to_f64(),
                Vertex::Y(b) => {
                    let s = &d.strands()[d.edge_strand(Edge::new(0, b))];
                    s.points[s.points.len() - 1].to_f64()
                }
            };
            VertexView { label: g.label(v).to_string(), at }
        })
        .collect();
    DiagramView {
        direction: d.direction().to_string(),
        strands,
        crossings,
        vertices,
    }
}

fn square_strands(d: &Diagram, s: &Square) -> Vec<usize> {
    s.edges().iter().map(|&e| d.edge_strand(e)).collect()
}

fn respond(r: Result<Response, String>) -> String {
    match r {
        Ok(r) => serde_json::to_string(&r).expect("response serializes"),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

fn graph(shape: &str) -> Result<PartitionedGraph, String> {
    let (r, s) = parse_shape(shape).map_err(|e| e.to_string())?;
    if r > 9 || s > 9 {
        return Err("the demo draws at most K_{9,9}".into());
    }
    PartitionedGraph::complete(r, s).map_err(|e| e.to_string())
}

/// A random embedding of `shape` projected along a seeded generic direction.
#[wasm_bindgen]
pub fn diagram(shape: &str, seed: u32, bends: usize) -> String {
    respond((|| {
        let g = graph(shape)?;
        let e = random_embedding(&g, seed as u64, bends).map_err(|e| e.to_string())?;
        let d = project_generic(&e, &[], seed as u64).map_err(|e| e.to_string())?;
        let summary = format!("{} crossings along {}", d.crossings().len(), d.direction());
        Ok(Response {
            diagram: view(&d),
            summary,
            highlight: Vec::new(),
        })
    })())
}

/// A random K_{3,3} with a random closed curve; reports how the curve links
/// the nine squares and highlights the linked ones.
#[wasm_bindgen]
pub fn classify_curve(seed: u32, curve_vertices: usize) -> String {
    respond((|| {
        let g = PartitionedGraph::complete(3, 3).map_err(|e| e.to_string())?;
        let e = random_embedding(&g, seed as u64, 1).map_err(|e| e.to_string())?;
        let c = random_closed_curve(&e, &[], seed as u64 ^ 0xc0ffee, curve_vertices.clamp(3, 12)).map_err(|e| e.to_string())?;
        let d = project_generic(&e, &[c], seed as u64).map_err(|e| e.to_string())?;
        let p = classify(&d, &CurveRef::External(0), &g.whole()).map_err(|e| e.to_string())?;
        let curve = d.external_strand(0).expect("one curve");
        let mut highlight = vec![vec![curve]];
        highlight.extend(p.squares().iter().map(|s| square_strands(&d, s)));
        Ok(Response {
            diagram: view(&d),
            summary: p.describe(&g),
            highlight,
        })
    })())
}

/// Extracts a certified `n`-component link from a random K_{2n+1,2n+1}.
#[wasm_bindgen]
pub fn extract_link(n: usize, seed: u32, exhaustive: bool) -> String {
    respond((|| {
        if !(2..=4).contains(&n) {
            return Err("the demo extracts 2 to 4 components".into());
        }
        let k = 2 * n + 1;
        let g = PartitionedGraph::complete(k, k).map_err(|e| e.to_string())?;
        let e = random_embedding(&g, seed as u64, 1).map_err(|e| e.to_string())?;
        let d = project_generic(&e, &[], seed as u64).map_err(|e| e.to_string())?;
        let opts = ExtractOptions {
            method: if exhaustive { Method::Exhaustive } else { Method::ProofGuided },
            allow_fallback: false,
            seed: seed as u64,
        };
        let c = extract_nlink_in(&d, n, &opts).map_err(|e| e.to_string())?;
        let names: Vec<String> = c.components.iter().map(|s| g.square_name(s)).collect();
        let cases: Vec<&str> = c.trace.iter().map(|s| s.case.as_str()).collect();
        let summary = format!("components {} (cases {})", names.join(", "), cases.join(" → "));
        Ok(Response {
            diagram: view(&d),
            summary,
            highlight: c.components.iter().map(|s| square_strands(&d, s)).collect(),
        })
    })())
}
