//! Regular projection diagrams and mod-2 linking numbers.
//!
//! A diagram keeps every crossing of the projected scene, including crossings
//! between two graph edges and self-crossings of a strand. Linking parity is
//! only exposed for pairs of disjoint closed curves.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geometry::projection::{generic_projection, project_scene, ProjectedScene, ProjectedStrand};
use crate::geometry::{
    check_cycle, Degeneracy, EmbeddedGraph, GeometryError, Point2, Polyline, ProjectionDirection, RouteRef,
};
use crate::graph::{Edge, GraphError, PartitionedGraph, Square, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("degenerate projection: {0}")]
    Degenerate(Box<Degeneracy>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("crossing is not part of this diagram")]
    UnknownCrossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentRef {
    pub strand: usize,
    pub segment: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub upper: SegmentRef,
    pub lower: SegmentRef,
    pub point: Point2,
}

/// A closed curve of the scene: a graph cycle resolved through edge routes,
/// or one of the extra curves passed to [`project`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurveRef {
    Cycle(Vec<Vertex>),
    External(usize),
}

impl From<Square> for CurveRef {
    fn from(s: Square) -> Self {
        CurveRef::Cycle(s.cycle().to_vec())
    }
}

impl From<&Square> for CurveRef {
    fn from(s: &Square) -> Self {
        CurveRef::Cycle(s.cycle().to_vec())
    }
}

/// Square 0/1 matrix of pairwise linking parities.
pub type LinkingMatrix = Vec<Vec<u8>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    scene_id: u64,
    direction: ProjectionDirection,
    graph: PartitionedGraph,
    strands: Vec<ProjectedStrand>,
    crossings: Vec<Crossing>,
    /// `over[a * n + b]`: parity of crossings with strand `a` over strand `b`.
    over: Vec<bool>,
}

fn fingerprint(e: &EmbeddedGraph, extra: &[Polyline]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |s: &str| {
        for b in s.bytes().chain([0xff]) {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    for l in e.graph().part_x().iter().chain(e.graph().part_y()) {
        feed(l);
    }
    let mut lines: Vec<Polyline> = e
        .graph()
        .edges()
        .into_iter()
        .filter_map(|edge| e.edge_route(edge).ok())
        .collect();
    lines.extend(extra.iter().cloned());
    for line in &lines {
        for p in line.points() {
            feed(&p.x.to_string());
            feed(&p.y.to_string());
            feed(&p.z.to_string());
        }
        feed("|");
    }
    h
}

impl Diagram {
    fn from_scene(scene_id: u64, graph: PartitionedGraph, p: ProjectedScene) -> Diagram {
        let crossings = p
            .crossings
            .into_iter()
            .map(|c| Crossing {
                upper: SegmentRef {
                    strand: c.upper.0,
                    segment: c.upper.1,
                },
                lower: SegmentRef {
                    strand: c.lower.0,
                    segment: c.lower.1,
                },
                point: c.point,
            })
            .collect();
        let mut d = Diagram {
            scene_id,
            direction: p.direction,
            graph,
            strands: p.strands,
            crossings,
            over: Vec::new(),
        };
        d.rebuild_parity();
        d
    }

    fn rebuild_parity(&mut self) {
        let n = self.strands.len();
        self.over = vec![false; n * n];
        for c in &self.crossings {
            let k = c.upper.strand * n + c.lower.strand;
            self.over[k] = !self.over[k];
        }
    }

    pub fn scene_id(&self) -> u64 {
        self.scene_id
    }

    pub fn direction(&self) -> &ProjectionDirection {
        &self.direction
    }

    pub fn graph(&self) -> &PartitionedGraph {
        &self.graph
    }

    pub fn strands(&self) -> &[ProjectedStrand] {
        &self.strands
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn owner(&self, strand: usize) -> RouteRef {
        self.strands[strand].owner
    }

    pub fn edge_strand(&self, e: Edge) -> usize {
        self.graph.edge_index(e)
    }

    pub fn external_strand(&self, i: usize) -> Option<usize> {
        let k = self.graph.edge_count() + i;
        (k < self.strands.len()).then_some(k)
    }

    fn resolve(&self, c: &CurveRef) -> Result<(Vec<usize>, BTreeSet<Vertex>), DiagramError> {
        match c {
            CurveRef::Cycle(vs) => {
                check_cycle(&self.graph, vs)?;
                let strands = (0..vs.len())
                    .map(|i| match (vs[i], vs[(i + 1) % vs.len()]) {
                        (Vertex::X(x), Vertex::Y(y)) | (Vertex::Y(y), Vertex::X(x)) => {
                            self.edge_strand(Edge::new(x, y))
                        }
                        _ => unreachable!("checked alternation"),
                    })
                    .collect();
                Ok((strands, vs.iter().copied().collect()))
            }
            CurveRef::External(i) => {
                let k = self
                    .external_strand(*i)
                    .ok_or_else(|| DiagramError::Domain(format!("no external curve {i}")))?;
                Ok((vec![k], BTreeSet::new()))
            }
        }
    }

    /// Parity of crossings with a strand of `a` over a strand of `b`.
    pub(crate) fn over_parity(&self, a: &[usize], b: &[usize]) -> bool {
        let n = self.strands.len();
        let mut acc = false;
        for &i in a {
            for &j in b {
                acc ^= self.over[i * n + j];
            }
        }
        acc
    }

    /// `omega` for two squares, without disjointness checks.
    pub(crate) fn omega_squares(&self, a: &Square, b: &Square) -> bool {
        let sa = a.edges().map(|e| self.edge_strand(e));
        let sb = b.edges().map(|e| self.edge_strand(e));
        self.over_parity(&sa, &sb)
    }

    /// `omega` of a strand set against a square, without checks.
    pub(crate) fn omega_strands_square(&self, a: &[usize], b: &Square) -> bool {
        let sb = b.edges().map(|e| self.edge_strand(e));
        self.over_parity(a, &sb)
    }

    /// Mod-2 linking number: parity of crossings where `a` passes over `b`.
    pub fn omega(&self, a: &CurveRef, b: &CurveRef) -> Result<bool, DiagramError> {
        let (sa, va) = self.resolve(a)?;
        let (sb, vb) = self.resolve(b)?;
        if let Some(v) = va.intersection(&vb).next() {
            return Err(DiagramError::Domain(format!(
                "curves share vertex {}; omega needs disjoint curves",
                self.graph.label(*v)
            )));
        }
        if matches!((a, b), (CurveRef::External(i), CurveRef::External(j)) if i == j) {
            return Err(DiagramError::Domain("a curve is not disjoint from itself".into()));
        }
        Ok(self.over_parity(&sa, &sb))
    }

    pub fn linking_matrix(&self, curves: &[CurveRef]) -> Result<LinkingMatrix, DiagramError> {
        let n = curves.len();
        let mut m = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let w = self.omega(&curves[i], &curves[j])? as u8;
                m[i][j] = w;
                m[j][i] = w;
            }
        }
        Ok(m)
    }

    /// Swaps over and under at `c`. The result is a formal diagram and need not
    /// come from any embedding.
    pub fn crossing_change(&self, c: &Crossing) -> Result<Diagram, DiagramError> {
        let idx = self
            .crossings
            .iter()
            .position(|x| x == c)
            .ok_or(DiagramError::UnknownCrossing)?;
        let mut d = self.clone();
        let old = &d.crossings[idx];
        d.crossings[idx] = Crossing {
            upper: old.lower,
            lower: old.upper,
            point: old.point.clone(),
        };
        d.crossings.sort_by(|a, b| (a.upper, &a.point, a.lower).cmp(&(b.upper, &b.point, b.lower)));
        d.rebuild_parity();
        Ok(d)
    }
}

/// Projects the embedding and the extra closed curves along `d`.
pub fn project(e: &EmbeddedGraph, extra: &[Polyline], d: &ProjectionDirection) -> Result<Diagram, DiagramError> {
    let p = project_scene(e, extra, d).map_err(|d| DiagramError::Degenerate(Box::new(d)))?;
    Ok(Diagram::from_scene(fingerprint(e, extra), e.graph().clone(), p))
}

/// Projects along a direction chosen by [`crate::geometry::pick_generic_direction`].
pub fn project_generic(e: &EmbeddedGraph, extra: &[Polyline], seed: u64) -> Result<Diagram, DiagramError> {
    let p = generic_projection(e, extra, seed)?;
    Ok(Diagram::from_scene(fingerprint(e, extra), e.graph().clone(), p))
}
