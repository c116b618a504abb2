//! Exact-arithmetic PL embeddings in 3-space.

mod predicates;
pub mod projection;
mod random;
pub(crate) mod validate;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::graph::{Edge, GraphError, PartitionedGraph, Vertex};

pub use predicates::{orient2d, segment_intersection_3d, SegmentContact};
pub use projection::{pick_generic_direction, Degeneracy, Point2, ProjectedScene};
pub use random::{random_closed_curve, random_embedding, LATTICE_DENOMINATOR, LATTICE_RADIUS};
pub use validate::{validate_embedding, validate_scene, RouteRef, ValidationReport, Violation};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("no regular projection direction found after {attempts} attempts; last degeneracy: {last}")]
    NoGenericDirection { attempts: usize, last: Box<Degeneracy> },
    #[error("generation failed after {attempts} attempts on lattice radius {radius}, denominators <= {denominator}")]
    GenerationFailed {
        attempts: usize,
        radius: i64,
        denominator: i64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, GeometryError> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| GeometryError::BadRational(s.to_string()))?;
    Ok(r)
}

/// Canonical `p/q` encoding, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(int(x), int(y), int(z))
    }

    pub fn sub(&self, o: &Point3) -> Vec3 {
        Vec3 {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
            z: &self.z - &o.z,
        }
    }

    pub fn add(&self, v: &Vec3) -> Point3 {
        Point3::new(&self.x + &v.x, &self.y + &v.y, &self.z + &v.z)
    }

    pub fn as_vec(&self) -> Vec3 {
        Vec3 {
            x: self.x.clone(),
            y: self.y.clone(),
            z: self.z.clone(),
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.x), to_f64(&self.y), to_f64(&self.z)]
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact 3-vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Vec3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(int(x), int(y), int(z))
    }

    pub fn dot(&self, o: &Vec3) -> Rational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn dot_point(&self, p: &Point3) -> Rational {
        &self.x * &p.x + &self.y * &p.y + &self.z * &p.z
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3 {
            x: &self.y * &o.z - &self.z * &o.y,
            y: &self.z * &o.x - &self.x * &o.z,
            z: &self.x * &o.y - &self.y * &o.x,
        }
    }

    pub fn scale(&self, k: &Rational) -> Vec3 {
        Vec3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Index of a coordinate with the largest absolute value.
    pub fn dominant_axis(&self) -> usize {
        let a = [self.x.abs(), self.y.abs(), self.z.abs()];
        let mut best = 0;
        for i in 1..3 {
            if a[i] > a[best] {
                best = i;
            }
        }
        best
    }
}

/// A projection direction with exact components; the viewer looks along
/// `-direction`, so larger `p . direction` means higher (over).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectionDirection(Vec3);

impl ProjectionDirection {
    pub fn new(v: Vec3) -> Result<Self, GeometryError> {
        if v.is_zero() {
            return Err(GeometryError::InvalidEmbedding(
                "projection direction must be nonzero".into(),
            ));
        }
        Ok(ProjectionDirection(v))
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }
}

impl fmt::Display for ProjectionDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0.x, self.0.y, self.0.z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyline {
    points: Vec<Point3>,
    closed: bool,
}

impl Polyline {
    pub fn open(points: Vec<Point3>) -> Result<Self, GeometryError> {
        Self::build(points, false)
    }

    pub fn closed(points: Vec<Point3>) -> Result<Self, GeometryError> {
        Self::build(points, true)
    }

    fn build(points: Vec<Point3>, closed: bool) -> Result<Self, GeometryError> {
        if points.len() < 2 {
            return Err(GeometryError::InvalidPolyline("needs at least 2 points".into()));
        }
        if closed && points.len() < 3 {
            return Err(GeometryError::InvalidPolyline(
                "a closed polyline needs at least 3 segments".into(),
            ));
        }
        let p = Polyline { points, closed };
        for (i, (a, b)) in p.segments().enumerate() {
            if a == b {
                return Err(GeometryError::InvalidPolyline(format!(
                    "segment {i} is degenerate at {a}"
                )));
            }
        }
        Ok(p)
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point3, &Point3)> + '_ {
        let n = self.points.len();
        (0..self.segment_count()).map(move |i| (&self.points[i], &self.points[(i + 1) % n]))
    }

    pub fn reversed(&self) -> Polyline {
        let mut points = self.points.clone();
        if self.closed {
            points[1..].reverse();
        } else {
            points.reverse();
        }
        Polyline {
            points,
            closed: self.closed,
        }
    }
}

/// A PL embedding: one point per vertex and a bend list per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: PartitionedGraph,
    x_positions: Vec<Point3>,
    y_positions: Vec<Point3>,
    bends: Vec<Vec<Point3>>,
}

impl EmbeddedGraph {
    /// `bends` is indexed by edge index (lexicographic `(x, y)` order).
    pub fn new(
        graph: PartitionedGraph,
        x_positions: Vec<Point3>,
        y_positions: Vec<Point3>,
        bends: Vec<Vec<Point3>>,
    ) -> Result<Self, GeometryError> {
        let (r, s) = graph.shape();
        if x_positions.len() != r || y_positions.len() != s {
            return Err(GeometryError::InvalidEmbedding(
                "one position per vertex is required".into(),
            ));
        }
        if bends.len() != r * s {
            return Err(GeometryError::InvalidEmbedding(
                "one bend list per edge is required".into(),
            ));
        }
        Ok(EmbeddedGraph {
            graph,
            x_positions,
            y_positions,
            bends,
        })
    }

    pub fn straight(
        graph: PartitionedGraph,
        x_positions: Vec<Point3>,
        y_positions: Vec<Point3>,
    ) -> Result<Self, GeometryError> {
        let n = graph.edge_count();
        Self::new(graph, x_positions, y_positions, vec![Vec::new(); n])
    }

    pub fn graph(&self) -> &PartitionedGraph {
        &self.graph
    }

    pub fn position(&self, v: Vertex) -> &Point3 {
        match v {
            Vertex::X(a) => &self.x_positions[a],
            Vertex::Y(b) => &self.y_positions[b],
        }
    }

    pub fn bends(&self, e: Edge) -> &[Point3] {
        &self.bends[self.graph.edge_index(e)]
    }

    pub fn set_bends(&mut self, e: Edge, bends: Vec<Point3>) {
        let i = self.graph.edge_index(e);
        self.bends[i] = bends;
    }

    /// The route of `e` from its X endpoint to its Y endpoint.
    pub fn edge_route(&self, e: Edge) -> Result<Polyline, GeometryError> {
        let mut pts = Vec::with_capacity(self.bends(e).len() + 2);
        pts.push(self.position(Vertex::X(e.x)).clone());
        pts.extend(self.bends(e).iter().cloned());
        pts.push(self.position(Vertex::Y(e.y)).clone());
        Polyline::open(pts)
    }

    /// Closed polyline following the edge routes around `cycle`.
    pub fn cycle_polyline(&self, cycle: &[Vertex]) -> Result<Polyline, GeometryError> {
        check_cycle(&self.graph, cycle)?;
        let mut pts = Vec::new();
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let (e, forward) = match (a, b) {
                (Vertex::X(x), Vertex::Y(y)) => (Edge::new(x, y), true),
                (Vertex::Y(y), Vertex::X(x)) => (Edge::new(x, y), false),
                _ => unreachable!("checked alternation"),
            };
            let route = self.edge_route(e)?;
            let mut p = route.points().to_vec();
            if !forward {
                p.reverse();
            }
            p.pop();
            pts.extend(p);
        }
        Polyline::closed(pts)
    }
}

/// Checks that `cycle` lists distinct vertices alternating between parts.
pub fn check_cycle(g: &PartitionedGraph, cycle: &[Vertex]) -> Result<(), GraphError> {
    if cycle.len() < 4 || !cycle.len().is_multiple_of(2) {
        return Err(GraphError::Domain(format!(
            "a cycle in a bipartite graph needs an even length >= 4, got {}",
            cycle.len()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        if !g.contains_vertex(v) {
            return Err(GraphError::Domain(format!("vertex {v:?} is not in the graph")));
        }
        if !seen.insert(v) {
            return Err(GraphError::Domain(format!("vertex {} repeats", g.label(v))));
        }
        if v.side() == cycle[(i + 1) % cycle.len()].side() {
            return Err(GraphError::Domain("cycle does not alternate parts".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33_generic() -> EmbeddedGraph {
        let g = PartitionedGraph::complete(3, 3).unwrap();
        EmbeddedGraph::straight(
            g,
            vec![
                Point3::from_ints(0, 0, 0),
                Point3::from_ints(10, 1, 3),
                Point3::from_ints(-4, 9, 7),
            ],
            vec![
                Point3::from_ints(5, -7, 11),
                Point3::from_ints(-9, -2, -6),
                Point3::from_ints(3, 12, -5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rational_round_trip() {
        let r = rational(-6, 4);
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(format_rational(&int(7)), "7/1");
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn polyline_rejects_degenerate_input() {
        let p = Point3::from_ints(0, 0, 0);
        assert!(Polyline::open(vec![p.clone()]).is_err());
        assert!(Polyline::open(vec![p.clone(), p.clone()]).is_err());
        assert!(Polyline::closed(vec![p.clone(), Point3::from_ints(1, 0, 0)]).is_err());
        assert!(Polyline::closed(vec![
            p.clone(),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(0, 1, 0)
        ])
        .is_ok());
    }

    #[test]
    fn square_polylines() {
        let e = k33_generic();
        let g = e.graph().clone();
        let s = g.square(["1", "2", "3", "4"]).unwrap();
        let p = e.cycle_polyline(&s.cycle()).unwrap();
        assert!(p.is_closed());
        assert_eq!(p.segment_count(), 4);

        let mut bent = e.clone();
        for edge in g.edges() {
            let a = bent.position(Vertex::X(edge.x)).clone();
            let b = bent.position(Vertex::Y(edge.y)).clone();
            let mid = a.add(&b.sub(&a).scale(&rational(1, 2))).add(&Vec3::from_ints(0, 0, 1));
            bent.set_bends(edge, vec![mid]);
        }
        assert_eq!(bent.cycle_polyline(&s.cycle()).unwrap().segment_count(), 8);

        let mut rev = s.cycle();
        rev.reverse();
        let q = e.cycle_polyline(&rev).unwrap();
        let mut a: Vec<_> = p.points().to_vec();
        let mut b: Vec<_> = q.points().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        // reversed orientation: q traverses p backwards from a different start
        let n = p.points().len();
        let start = p.points().iter().position(|x| x == &q.points()[0]).unwrap();
        for i in 0..n {
            assert_eq!(q.points()[i], p.points()[(start + n - i) % n]);
        }
    }

    #[test]
    fn cycle_polyline_rejects_non_cycles() {
        let e = k33_generic();
        assert!(e
            .cycle_polyline(&[Vertex::X(0), Vertex::Y(0), Vertex::X(0), Vertex::Y(1)])
            .is_err());
        assert!(e.cycle_polyline(&[Vertex::X(0), Vertex::Y(0)]).is_err());
        assert!(e
            .cycle_polyline(&[Vertex::X(0), Vertex::X(1), Vertex::Y(0), Vertex::Y(1)])
            .is_err());
    }
}
