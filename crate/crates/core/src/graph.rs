//! Combinatorics of complete bipartite graphs.
//!
//! Vertices are addressed positionally: `Vertex::X(i)` is the `i`-th label of
//! the first part, `Vertex::Y(j)` the `j`-th label of the second. Labels are
//! opaque strings used only for display and file I/O.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("{0}")]
    Domain(String),
}

/// Which part of the bipartition a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    X(usize),
    Y(usize),
}

impl Vertex {
    pub fn side(self) -> Side {
        match self {
            Vertex::X(_) => Side::X,
            Vertex::Y(_) => Side::Y,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Vertex::X(i) | Vertex::Y(i) => i,
        }
    }
}

/// An edge `x_i y_j`. Every cross pair is an edge of a complete bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub x: usize,
    pub y: usize,
}

impl Edge {
    pub fn new(x: usize, y: usize) -> Self {
        Edge { x, y }
    }

    pub fn endpoints(self) -> [Vertex; 2] {
        [Vertex::X(self.x), Vertex::Y(self.y)]
    }

    pub fn adjacent(self, other: Edge) -> bool {
        self != other && (self.x == other.x || self.y == other.y)
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.x == other.x || self.y == other.y
    }
}

/// A 4-cycle `x1 y1 x2 y2` with `x1 < x2` and `y1 < y2`.
///
/// A square is determined by its vertex set: the four cross pairs of
/// `{x1, x2} x {y1, y2}` are exactly its edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    x: [usize; 2],
    y: [usize; 2],
}

impl Square {
    /// Builds the square on `{a, b} x {c, d}`; the order of arguments is irrelevant.
    pub fn new(xa: usize, xb: usize, ya: usize, yb: usize) -> Result<Self, GraphError> {
        if xa == xb || ya == yb {
            return Err(GraphError::Domain(
                "a square needs two distinct vertices in each part".into(),
            ));
        }
        Ok(Square {
            x: [xa.min(xb), xa.max(xb)],
            y: [ya.min(yb), ya.max(yb)],
        })
    }

    /// Canonicalizes any traversal of a 4-cycle (any rotation or reflection).
    pub fn from_cycle(cycle: &[Vertex]) -> Result<Self, GraphError> {
        if cycle.len() != 4 {
            return Err(GraphError::Domain(format!(
                "a square has 4 vertices, got {}",
                cycle.len()
            )));
        }
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (i, v) in cycle.iter().enumerate() {
            if v.side() == cycle[(i + 1) % 4].side() {
                return Err(GraphError::Domain("cycle does not alternate parts".into()));
            }
            match *v {
                Vertex::X(a) => xs.push(a),
                Vertex::Y(b) => ys.push(b),
            }
        }
        Square::new(xs[0], xs[1], ys[0], ys[1])
    }

    pub fn xs(&self) -> [usize; 2] {
        self.x
    }

    pub fn ys(&self) -> [usize; 2] {
        self.y
    }

    /// Canonical traversal `x1 y1 x2 y2`.
    pub fn cycle(&self) -> [Vertex; 4] {
        [
            Vertex::X(self.x[0]),
            Vertex::Y(self.y[0]),
            Vertex::X(self.x[1]),
            Vertex::Y(self.y[1]),
        ]
    }

    /// Edges in traversal order: `x1y1, x2y1, x2y2, x1y2`.
    pub fn edges(&self) -> [Edge; 4] {
        [
            Edge::new(self.x[0], self.y[0]),
            Edge::new(self.x[1], self.y[0]),
            Edge::new(self.x[1], self.y[1]),
            Edge::new(self.x[0], self.y[1]),
        ]
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.x.contains(&e.x) && self.y.contains(&e.y)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        match v {
            Vertex::X(a) => self.x.contains(&a),
            Vertex::Y(b) => self.y.contains(&b),
        }
    }

    /// The edge of this square sharing no vertex with `e`.
    pub fn opposite_edge(&self, e: Edge) -> Option<Edge> {
        if !self.contains_edge(e) {
            return None;
        }
        let ox = if self.x[0] == e.x { self.x[1] } else { self.x[0] };
        let oy = if self.y[0] == e.y { self.y[1] } else { self.y[0] };
        Some(Edge::new(ox, oy))
    }

    fn key(&self) -> (usize, usize, usize, usize) {
        (self.x[0], self.y[0], self.x[1], self.y[1])
    }
}

impl Ord for Square {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Square {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// True iff the two squares have no vertex in common.
pub fn disjoint(a: &Square, b: &Square) -> bool {
    a.x.iter().all(|v| !b.x.contains(v)) && a.y.iter().all(|v| !b.y.contains(v))
}

/// True iff no two of the three edges share a vertex.
pub fn mutually_nonadjacent(edges: &[Edge; 3]) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| !edges[i].shares_vertex(edges[j])))
}

/// The induced complete bipartite subgraph on a subset of each part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubgraphRef {
    xs: Vec<usize>,
    ys: Vec<usize>,
}

impl SubgraphRef {
    pub fn new(
        xs: impl IntoIterator<Item = usize>,
        ys: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let xs: Vec<usize> = xs.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let ys: Vec<usize> = ys.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if xs.is_empty() || ys.is_empty() {
            return Err(GraphError::Domain("subgraph parts must be nonempty".into()));
        }
        Ok(SubgraphRef { xs, ys })
    }

    /// The subgraph spanned by the first `r` and `s` vertices of each part.
    pub fn prefix(r: usize, s: usize) -> Self {
        SubgraphRef {
            xs: (0..r).collect(),
            ys: (0..s).collect(),
        }
    }

    pub fn xs(&self) -> &[usize] {
        &self.xs
    }

    pub fn ys(&self) -> &[usize] {
        &self.ys
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.xs.len(), self.ys.len())
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        match v {
            Vertex::X(a) => self.xs.binary_search(&a).is_ok(),
            Vertex::Y(b) => self.ys.binary_search(&b).is_ok(),
        }
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.contains_vertex(Vertex::X(e.x)) && self.contains_vertex(Vertex::Y(e.y))
    }

    pub fn contains_square(&self, s: &Square) -> bool {
        s.cycle().iter().all(|&v| self.contains_vertex(v))
    }

    pub fn is_subgraph_of(&self, other: &SubgraphRef) -> bool {
        self.xs.iter().all(|&a| other.contains_vertex(Vertex::X(a)))
            && self.ys.iter().all(|&b| other.contains_vertex(Vertex::Y(b)))
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.xs.len() * self.ys.len());
        for &x in &self.xs {
            for &y in &self.ys {
                out.push(Edge::new(x, y));
            }
        }
        out
    }

    /// All squares, in lexicographic order of `(x1, y1, x2, y2)`.
    pub fn squares(&self) -> Vec<Square> {
        let mut out = Vec::new();
        for (i, &x1) in self.xs.iter().enumerate() {
            for (k, &y1) in self.ys.iter().enumerate() {
                for &x2 in &self.xs[i + 1..] {
                    for &y2 in &self.ys[k + 1..] {
                        out.push(Square {
                            x: [x1, x2],
                            y: [y1, y2],
                        });
                    }
                }
            }
        }
        out
    }

    pub fn squares_containing_edge(&self, e: Edge) -> Result<Vec<Square>, GraphError> {
        if !self.contains_edge(e) {
            return Err(GraphError::Domain(format!(
                "edge ({}, {}) is not in the subgraph",
                e.x, e.y
            )));
        }
        Ok(self
            .squares()
            .into_iter()
            .filter(|s| s.contains_edge(e))
            .collect())
    }

    /// All induced subgraphs of shape `r x s`, in lexicographic order of vertex subsets.
    pub fn subgraphs(&self, r: usize, s: usize) -> Vec<SubgraphRef> {
        let xsets = combinations(&self.xs, r);
        let ysets = combinations(&self.ys, s);
        let mut out = Vec::with_capacity(xsets.len() * ysets.len());
        for xs in &xsets {
            for ys in &ysets {
                out.push(SubgraphRef {
                    xs: xs.clone(),
                    ys: ys.clone(),
                });
            }
        }
        out
    }

    /// Vertices of `self` not in `other`, per part.
    pub fn minus(&self, other: &SubgraphRef) -> (Vec<usize>, Vec<usize>) {
        (
            self.xs
                .iter()
                .copied()
                .filter(|&a| !other.contains_vertex(Vertex::X(a)))
                .collect(),
            self.ys
                .iter()
                .copied()
                .filter(|&b| !other.contains_vertex(Vertex::Y(b)))
                .collect(),
        )
    }

    pub fn with_square(&self, s: &Square) -> SubgraphRef {
        SubgraphRef::new(
            self.xs.iter().copied().chain(s.xs()),
            self.ys.iter().copied().chain(s.ys()),
        )
        .expect("nonempty")
    }
}

/// The K_{3,3} that shares exactly the square `alpha` with `m` inside the
/// K_{4,4} `containing`: alpha's four vertices plus the two vertices of
/// `containing` outside `m`.
pub fn alpha_opposite(
    containing: &SubgraphRef,
    m: &SubgraphRef,
    alpha: &Square,
) -> Result<SubgraphRef, GraphError> {
    if containing.shape() != (4, 4) || m.shape() != (3, 3) {
        return Err(GraphError::Domain(
            "alpha-opposite needs a K_{3,3} inside a K_{4,4}".into(),
        ));
    }
    if !m.is_subgraph_of(containing) {
        return Err(GraphError::Domain("subgraph is not inside the K_{4,4}".into()));
    }
    if !m.contains_square(alpha) {
        return Err(GraphError::Domain("square is not in the subgraph".into()));
    }
    let (ox, oy) = containing.minus(m);
    SubgraphRef::new(
        alpha.xs().into_iter().chain(ox),
        alpha.ys().into_iter().chain(oy),
    )
}

/// Both K_{3,3} pairs of `g0` that are opposite across `alpha`.
pub fn opposite_pairs(g0: &SubgraphRef, alpha: &Square) -> Vec<(SubgraphRef, SubgraphRef)> {
    let (ox, oy) = (
        g0.xs()
            .iter()
            .copied()
            .filter(|a| !alpha.xs().contains(a))
            .collect::<Vec<_>>(),
        g0.ys()
            .iter()
            .copied()
            .filter(|b| !alpha.ys().contains(b))
            .collect::<Vec<_>>(),
    );
    debug_assert_eq!((ox.len(), oy.len()), (2, 2));
    let mk = |x: usize, y: usize| {
        SubgraphRef::new(
            alpha.xs().into_iter().chain([x]),
            alpha.ys().into_iter().chain([y]),
        )
        .expect("nonempty")
    };
    vec![
        (mk(ox[0], oy[0]), mk(ox[1], oy[1])),
        (mk(ox[0], oy[1]), mk(ox[1], oy[0])),
    ]
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// An abstract complete bipartite graph with labeled parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionedGraph {
    part_x: Vec<String>,
    part_y: Vec<String>,
}

impl PartitionedGraph {
    pub fn new(part_x: Vec<String>, part_y: Vec<String>) -> Result<Self, GraphError> {
        if part_x.is_empty() || part_y.is_empty() {
            return Err(GraphError::InvalidGraph("parts must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for l in part_x.iter().chain(&part_y) {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::InvalidGraph(format!("duplicate label `{l}`")));
            }
        }
        Ok(PartitionedGraph { part_x, part_y })
    }

    /// `K_{r,s}` with odd labels `1, 3, 5, ...` on the first part and even
    /// labels `2, 4, 6, ...` on the second.
    pub fn complete(r: usize, s: usize) -> Result<Self, GraphError> {
        Self::new(
            (0..r).map(|i| (2 * i + 1).to_string()).collect(),
            (0..s).map(|i| (2 * i + 2).to_string()).collect(),
        )
    }

    /// Parses shapes such as `k5,5` or `K_{3,3}`.
    pub fn from_shape(shape: &str) -> Result<Self, GraphError> {
        let (r, s) = parse_shape(shape)?;
        Self::complete(r, s)
    }

    pub fn part_x(&self) -> &[String] {
        &self.part_x
    }

    pub fn part_y(&self) -> &[String] {
        &self.part_y
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.part_x.len(), self.part_y.len())
    }

    pub fn edge_count(&self) -> usize {
        self.part_x.len() * self.part_y.len()
    }

    pub fn whole(&self) -> SubgraphRef {
        SubgraphRef::prefix(self.part_x.len(), self.part_y.len())
    }

    /// Edges in lexicographic order; the position is the edge index.
    pub fn edges(&self) -> Vec<Edge> {
        self.whole().edges()
    }

    pub fn edge_index(&self, e: Edge) -> usize {
        e.x * self.part_y.len() + e.y
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.part_x.len())
            .map(Vertex::X)
            .chain((0..self.part_y.len()).map(Vertex::Y))
            .collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        match v {
            Vertex::X(a) => a < self.part_x.len(),
            Vertex::Y(b) => b < self.part_y.len(),
        }
    }

    pub fn squares(&self) -> Vec<Square> {
        self.whole().squares()
    }

    pub fn label(&self, v: Vertex) -> &str {
        match v {
            Vertex::X(a) => &self.part_x[a],
            Vertex::Y(b) => &self.part_y[b],
        }
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex, GraphError> {
        if let Some(i) = self.part_x.iter().position(|l| l == label) {
            return Ok(Vertex::X(i));
        }
        if let Some(i) = self.part_y.iter().position(|l| l == label) {
            return Ok(Vertex::Y(i));
        }
        Err(GraphError::UnknownLabel(label.to_string()))
    }

    /// Edge between two labels given in either order.
    pub fn edge(&self, a: &str, b: &str) -> Result<Edge, GraphError> {
        match (self.vertex(a)?, self.vertex(b)?) {
            (Vertex::X(x), Vertex::Y(y)) | (Vertex::Y(y), Vertex::X(x)) => Ok(Edge::new(x, y)),
            _ => Err(GraphError::Domain(format!(
                "`{a}` and `{b}` lie in the same part"
            ))),
        }
    }

    /// Square from four labels listed along the cycle.
    pub fn square(&self, labels: [&str; 4]) -> Result<Square, GraphError> {
        let vs = labels
            .iter()
            .map(|l| self.vertex(l))
            .collect::<Result<Vec<_>, _>>()?;
        Square::from_cycle(&vs)
    }

    /// Subgraph from a list of labels drawn from both parts.
    pub fn subgraph<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubgraphRef, GraphError> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for l in labels {
            match self.vertex(l.as_ref())? {
                Vertex::X(a) => xs.push(a),
                Vertex::Y(b) => ys.push(b),
            }
        }
        SubgraphRef::new(xs, ys)
    }

    pub fn edge_name(&self, e: Edge) -> String {
        format!("{}{}", self.part_x[e.x], self.part_y[e.y])
    }

    /// Concatenated labels in canonical order, e.g. `1254`.
    pub fn square_name(&self, s: &Square) -> String {
        s.cycle().iter().map(|&v| self.label(v)).collect()
    }

    /// Interleaved labels `x1 y1 x2 y2 ...`, e.g. `123478`.
    pub fn subgraph_name(&self, g: &SubgraphRef) -> String {
        let mut out = String::new();
        for i in 0..g.xs.len().max(g.ys.len()) {
            if let Some(&a) = g.xs.get(i) {
                out.push_str(&self.part_x[a]);
            }
            if let Some(&b) = g.ys.get(i) {
                out.push_str(&self.part_y[b]);
            }
        }
        out
    }

    pub fn square_labels(&self, s: &Square) -> Vec<String> {
        s.cycle().iter().map(|&v| self.label(v).to_string()).collect()
    }
}

/// Parses `k5,5`, `K5,5`, `K_{5,5}` or `5,5` into part sizes.
pub fn parse_shape(shape: &str) -> Result<(usize, usize), GraphError> {
    let t: String = shape
        .chars()
        .filter(|c| !matches!(c, 'k' | 'K' | '_' | '{' | '}' | ' '))
        .collect();
    let bad = || GraphError::Domain(format!("cannot parse graph shape `{shape}`"));
    let (a, b) = t.split_once(',').ok_or_else(bad)?;
    let r: usize = a.parse().map_err(|_| bad())?;
    let s: usize = b.parse().map_err(|_| bad())?;
    if r == 0 || s == 0 {
        return Err(bad());
    }
    Ok((r, s))
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}y{}x{}y{}", self.x[0], self.y[0], self.x[1], self.y[1])
    }
}
