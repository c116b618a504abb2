//! JSON documents for embeddings, curves and certificates.
//!
//! Coordinates are exact rationals written as `"p/q"` strings; vertices,
//! squares and subgraphs are written with vertex labels.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::classify_set;
use crate::extract::{CaseLabel, LinkCertificate, Method, TraceStep};
use crate::geometry::{format_rational, parse_rational, EmbeddedGraph, GeometryError, Point3, Polyline, ProjectionDirection, Vec3};
use crate::graph::{Edge, GraphError, PartitionedGraph, Square, SubgraphRef, Vertex};

pub const EMBEDDING_FORMAT: &str = "bilink-embedding/1";
pub const CURVE_FORMAT: &str = "bilink-curve/1";
pub const CERTIFICATE_FORMAT: &str = "bilink-certificate/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

type Coords = [String; 3];

fn point_out(p: &Point3) -> Coords {
    [format_rational(&p.x), format_rational(&p.y), format_rational(&p.z)]
}

fn point_in(c: &Coords) -> Result<Point3, FormatError> {
    Ok(Point3::new(parse_rational(&c[0])?, parse_rational(&c[1])?, parse_rational(&c[2])?))
}

fn check_format(found: &str, want: &str) -> Result<(), FormatError> {
    if found != want {
        return Err(invalid(format!("expected format `{want}`, found `{found}`")));
    }
    Ok(())
}

fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    label: String,
    at: Coords,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    ends: [String; 2],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bends: Vec<Coords>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingDoc {
    format: String,
    parts: [Vec<String>; 2],
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

pub fn emit_embedding(e: &EmbeddedGraph) -> String {
    let g = e.graph();
    let vertices = g
        .vertices()
        .into_iter()
        .map(|v| VertexDoc {
            label: g.label(v).to_string(),
            at: point_out(e.position(v)),
        })
        .collect();
    let edges = g
        .edges()
        .into_iter()
        .map(|ed| EdgeDoc {
            ends: [g.label(Vertex::X(ed.x)).to_string(), g.label(Vertex::Y(ed.y)).to_string()],
            bends: e.bends(ed).iter().map(point_out).collect(),
        })
        .collect();
    to_text(&EmbeddingDoc {
        format: EMBEDDING_FORMAT.into(),
        parts: [g.part_x().to_vec(), g.part_y().to_vec()],
        vertices,
        edges,
    })
}

/// Parses an embedding document. Edges that are not listed are straight.
pub fn parse_embedding(text: &str) -> Result<EmbeddedGraph, FormatError> {
    let doc: EmbeddingDoc = serde_json::from_str(text)?;
    check_format(&doc.format, EMBEDDING_FORMAT)?;
    let [px, py] = doc.parts;
    let g = PartitionedGraph::new(px, py)?;
    let mut pos: BTreeMap<Vertex, Point3> = BTreeMap::new();
    for v in &doc.vertices {
        let vx = g.vertex(&v.label)?;
        if pos.insert(vx, point_in(&v.at)?).is_some() {
            return Err(invalid(format!("vertex `{}` placed twice", v.label)));
        }
    }
    let (r, s) = g.shape();
    let mut take = |v: Vertex| {
        pos.remove(&v)
            .ok_or_else(|| invalid(format!("vertex `{}` has no position", g.label(v))))
    };
    let xs = (0..r).map(|a| take(Vertex::X(a))).collect::<Result<Vec<_>, _>>()?;
    let ys = (0..s).map(|b| take(Vertex::Y(b))).collect::<Result<Vec<_>, _>>()?;
    let mut bends = vec![Vec::new(); g.edge_count()];
    let mut seen = BTreeSet::new();
    for ed in &doc.edges {
        let edge = g.edge(&ed.ends[0], &ed.ends[1])?;
        if !seen.insert(edge) {
            return Err(invalid(format!("edge {}{} listed twice", ed.ends[0], ed.ends[1])));
        }
        bends[g.edge_index(edge)] = ed.bends.iter().map(point_in).collect::<Result<_, _>>()?;
    }
    Ok(EmbeddedGraph::new(g, xs, ys, bends)?)
}

#[derive(Serialize, Deserialize)]
struct CurveDoc {
    format: String,
    points: Vec<Coords>,
}

/// A closed curve document.
pub fn emit_curve(c: &Polyline) -> String {
    to_text(&CurveDoc {
        format: CURVE_FORMAT.into(),
        points: c.points().iter().map(point_out).collect(),
    })
}

pub fn parse_curve(text: &str) -> Result<Polyline, FormatError> {
    let doc: CurveDoc = serde_json::from_str(text)?;
    check_format(&doc.format, CURVE_FORMAT)?;
    let pts = doc.points.iter().map(point_in).collect::<Result<Vec<_>, _>>()?;
    Ok(Polyline::closed(pts)?)
}

#[derive(Serialize, Deserialize)]
struct PatternDoc {
    subgraph: Vec<String>,
    summary: String,
    squares: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    n: usize,
    case: CaseLabel,
    ambient: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g0: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    g1: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<Vec<String>>,
    l_o: Vec<String>,
    l_1: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    possibility: Option<u8>,
    #[serde(default)]
    dead_ends: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    evidence: Vec<PatternDoc>,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    format: String,
    parts: [Vec<String>; 2],
    method: Method,
    direction: Coords,
    ambient: Vec<String>,
    components: Vec<Vec<String>>,
    designated: usize,
    matrix: Vec<Vec<u8>>,
    spanning_tree: Vec<[usize; 2]>,
    trace: Vec<StepDoc>,
}

fn sub_out(g: &PartitionedGraph, h: &SubgraphRef) -> Vec<String> {
    h.xs()
        .iter()
        .map(|&a| g.label(Vertex::X(a)).to_string())
        .chain(h.ys().iter().map(|&b| g.label(Vertex::Y(b)).to_string()))
        .collect()
}

fn sub_in(g: &PartitionedGraph, labels: &[String]) -> Result<SubgraphRef, FormatError> {
    Ok(g.subgraph(labels)?)
}

fn square_in(g: &PartitionedGraph, labels: &[String]) -> Result<Square, FormatError> {
    let [a, b, c, d] = labels else {
        return Err(invalid(format!("a square needs 4 labels, got {}", labels.len())));
    };
    Ok(g.square([a, b, c, d])?)
}

fn edge_out(g: &PartitionedGraph, e: Edge) -> [String; 2] {
    [g.label(Vertex::X(e.x)).to_string(), g.label(Vertex::Y(e.y)).to_string()]
}

fn step_out(g: &PartitionedGraph, s: &TraceStep) -> StepDoc {
    let sub = |h: &SubgraphRef| sub_out(g, h);
    StepDoc {
        n: s.n,
        case: s.case,
        ambient: sub(&s.ambient),
        h: s.h.as_ref().map(sub),
        h1: s.h1.as_ref().map(sub),
        g: s.g.as_ref().map(sub),
        g0: s.g0.as_ref().map(sub),
        g1: s.g1.iter().map(sub).collect(),
        gamma: s.gamma.map(|q| g.square_labels(&q)),
        j: s.j.map(|q| g.square_labels(&q)),
        l_o: g.square_labels(&s.l_o),
        l_1: g.square_labels(&s.l_1),
        edge: s.edge.map(|e| edge_out(g, e)),
        possibility: s.possibility,
        dead_ends: s.dead_ends,
        evidence: s
            .evidence
            .iter()
            .map(|(m, p)| PatternDoc {
                subgraph: sub(m),
                summary: p.describe(g),
                squares: p.squares().iter().map(|q| g.square_labels(q)).collect(),
            })
            .collect(),
    }
}

fn step_in(g: &PartitionedGraph, d: &StepDoc) -> Result<TraceStep, FormatError> {
    let opt_sub = |h: &Option<Vec<String>>| h.as_ref().map(|l| sub_in(g, l)).transpose();
    let opt_sq = |q: &Option<Vec<String>>| q.as_ref().map(|l| square_in(g, l)).transpose();
    let mut evidence = Vec::with_capacity(d.evidence.len());
    for p in &d.evidence {
        let m = sub_in(g, &p.subgraph)?;
        let set = p.squares.iter().map(|l| square_in(g, l)).collect::<Result<BTreeSet<_>, _>>()?;
        let pat = classify_set(&m, &set).map_err(|e| invalid(format!("trace evidence: {e}")))?;
        if pat.describe(g) != p.summary {
            return Err(invalid(format!("evidence summary `{}` does not match its squares", p.summary)));
        }
        evidence.push((m, pat));
    }
    Ok(TraceStep {
        n: d.n,
        case: d.case,
        ambient: sub_in(g, &d.ambient)?,
        h: opt_sub(&d.h)?,
        h1: opt_sub(&d.h1)?,
        g: opt_sub(&d.g)?,
        g0: opt_sub(&d.g0)?,
        g1: d.g1.iter().map(|l| sub_in(g, l)).collect::<Result<_, _>>()?,
        gamma: opt_sq(&d.gamma)?,
        j: opt_sq(&d.j)?,
        l_o: square_in(g, &d.l_o)?,
        l_1: square_in(g, &d.l_1)?,
        edge: d.edge.as_ref().map(|[a, b]| g.edge(a, b)).transpose()?,
        possibility: d.possibility,
        dead_ends: d.dead_ends,
        evidence,
    })
}

pub fn emit_certificate(g: &PartitionedGraph, c: &LinkCertificate) -> String {
    let v = c.direction.vector();
    to_text(&CertificateDoc {
        format: CERTIFICATE_FORMAT.into(),
        parts: [g.part_x().to_vec(), g.part_y().to_vec()],
        method: c.method,
        direction: [format_rational(&v.x), format_rational(&v.y), format_rational(&v.z)],
        ambient: sub_out(g, &c.ambient),
        components: c.components.iter().map(|q| g.square_labels(q)).collect(),
        designated: c.designated,
        matrix: c.matrix.clone(),
        spanning_tree: c.spanning_tree.iter().map(|&(a, b)| [a, b]).collect(),
        trace: c.trace.iter().map(|s| step_out(g, s)).collect(),
    })
}

/// Parses a certificate for the graph `g`. Only the document's shape is
/// checked here; see [`crate::extract::verify_certificate`] for its content.
pub fn parse_certificate(text: &str, g: &PartitionedGraph) -> Result<LinkCertificate, FormatError> {
    let doc: CertificateDoc = serde_json::from_str(text)?;
    check_format(&doc.format, CERTIFICATE_FORMAT)?;
    if doc.parts[0] != g.part_x() || doc.parts[1] != g.part_y() {
        return Err(invalid("certificate was written for a different graph"));
    }
    let [x, y, z] = &doc.direction;
    let direction = ProjectionDirection::new(Vec3::new(parse_rational(x)?, parse_rational(y)?, parse_rational(z)?))?;
    Ok(LinkCertificate {
        components: doc.components.iter().map(|l| square_in(g, l)).collect::<Result<_, _>>()?,
        designated: doc.designated,
        matrix: doc.matrix,
        spanning_tree: doc.spanning_tree.iter().map(|&[a, b]| (a, b)).collect(),
        ambient: sub_in(g, &doc.ambient)?,
        direction,
        method: doc.method,
        trace: doc.trace.iter().map(|s| step_in(g, s)).collect::<Result<_, _>>()?,
    })
}
