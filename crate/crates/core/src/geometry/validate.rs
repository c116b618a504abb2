use std::fmt;

use super::predicates::{segment_intersection_3d, SegmentContact};
use super::{EmbeddedGraph, Point3, Polyline};
use crate::graph::{Edge, PartitionedGraph, Vertex};

/// Owner of a route in a scene: a graph edge or an extra closed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RouteRef {
    Edge(Edge),
    Curve(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    CoincidentVertices { a: Vertex, b: Vertex },
    BadRoute { route: RouteRef, reason: String },
    /// Two routes (or one route with itself) meet where they must not.
    Intersection { a: RouteRef, b: RouteRef, point: Point3 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, g: &PartitionedGraph) -> Vec<String> {
        self.violations.iter().map(|v| describe(g, v)).collect()
    }
}

fn route_name(g: &PartitionedGraph, r: RouteRef) -> String {
    match r {
        RouteRef::Edge(e) => format!("edge {}", g.edge_name(e)),
        RouteRef::Curve(i) => format!("curve {i}"),
    }
}

fn describe(g: &PartitionedGraph, v: &Violation) -> String {
    match v {
        Violation::CoincidentVertices { a, b } => {
            format!("vertices {} and {} coincide", g.label(*a), g.label(*b))
        }
        Violation::BadRoute { route, reason } => format!("{}: {reason}", route_name(g, *route)),
        Violation::Intersection { a, b, point } if a == b => {
            format!("{} is not simple at {point}", route_name(g, *a))
        }
        Violation::Intersection { a, b, point } => {
            format!("{} meets {} at {point}", route_name(g, *a), route_name(g, *b))
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub(crate) struct Strand {
    pub owner: RouteRef,
    pub line: Polyline,
}

pub(crate) fn scene_strands(
    e: &EmbeddedGraph,
    extra: &[Polyline],
) -> (Vec<Strand>, Vec<Violation>) {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for edge in e.graph().edges() {
        match e.edge_route(edge) {
            Ok(line) => out.push(Strand {
                owner: RouteRef::Edge(edge),
                line,
            }),
            Err(err) => bad.push(Violation::BadRoute {
                route: RouteRef::Edge(edge),
                reason: err.to_string(),
            }),
        }
    }
    for (i, c) in extra.iter().enumerate() {
        if !c.is_closed() {
            bad.push(Violation::BadRoute {
                route: RouteRef::Curve(i),
                reason: "extra curves must be closed".into(),
            });
        }
        out.push(Strand {
            owner: RouteRef::Curve(i),
            line: c.clone(),
        });
    }
    (out, bad)
}

/// Conservative floating-point bounding box used to skip far-apart pairs.
#[derive(Clone, Copy)]
pub(crate) struct Bbox {
    lo: [f64; 3],
    hi: [f64; 3],
}

impl Bbox {
    pub fn of(pts: &[[f64; 3]]) -> Bbox {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in pts {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        for k in 0..3 {
            let pad = 1e-9 * (1.0 + lo[k].abs().max(hi[k].abs()));
            lo[k] -= pad;
            hi[k] += pad;
        }
        Bbox { lo, hi }
    }

    pub fn separated(&self, o: &Bbox) -> bool {
        (0..3).any(|k| self.hi[k] < o.lo[k] || o.hi[k] < self.lo[k])
    }
}

fn shared_vertex_position(e: &EmbeddedGraph, a: RouteRef, b: RouteRef) -> Vec<&Point3> {
    match (a, b) {
        (RouteRef::Edge(f), RouteRef::Edge(g)) => {
            let mut out = Vec::new();
            if f.x == g.x {
                out.push(e.position(Vertex::X(f.x)));
            }
            if f.y == g.y {
                out.push(e.position(Vertex::Y(f.y)));
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Checks every invariant of an embedding plus the given extra closed curves:
/// distinct vertex positions, simple routes, and routes meeting only at
/// shared graph vertices. All tests are exact.
pub fn validate_scene(e: &EmbeddedGraph, extra: &[Polyline]) -> ValidationReport {
    let mut violations = Vec::new();
    let verts = e.graph().vertices();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if e.position(verts[i]) == e.position(verts[j]) {
                violations.push(Violation::CoincidentVertices {
                    a: verts[i],
                    b: verts[j],
                });
            }
        }
    }
    let (strands, bad) = scene_strands(e, extra);
    violations.extend(bad);

    struct Seg<'a> {
        strand: usize,
        index: usize,
        a: &'a Point3,
        b: &'a Point3,
        bbox: Bbox,
    }
    let mut segs = Vec::new();
    for (si, s) in strands.iter().enumerate() {
        for (k, (a, b)) in s.line.segments().enumerate() {
            segs.push(Seg {
                strand: si,
                index: k,
                a,
                b,
                bbox: Bbox::of(&[a.to_f64(), b.to_f64()]),
            });
        }
    }

    let mut reported = std::collections::BTreeSet::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (s, t) = (&segs[i], &segs[j]);
            if s.bbox.separated(&t.bbox) {
                continue;
            }
            let contact = segment_intersection_3d(s.a, s.b, t.a, t.b);
            let (point, overlap) = match contact {
                SegmentContact::Disjoint => continue,
                SegmentContact::Point(p) => (p, false),
                SegmentContact::Overlap(p) => (p, true),
            };
            let (ra, rb) = (strands[s.strand].owner, strands[t.strand].owner);
            let allowed = !overlap
                && if s.strand == t.strand {
                    let line = &strands[s.strand].line;
                    let n = line.segment_count();
                    let consecutive = t.index == s.index + 1
                        || (line.is_closed() && s.index == 0 && t.index == n - 1);
                    consecutive && (point == *s.a || point == *s.b) && (point == *t.a || point == *t.b)
                } else {
                    shared_vertex_position(e, ra, rb).into_iter().any(|v| *v == point)
                };
            if !allowed && reported.insert((ra, rb)) {
                violations.push(Violation::Intersection {
                    a: ra,
                    b: rb,
                    point,
                });
            }
        }
    }
    ValidationReport { violations }
}

pub fn validate_embedding(e: &EmbeddedGraph) -> ValidationReport {
    validate_scene(e, &[])
}
