//! Certified non-split links among the squares of an embedded K_{2n+1,2n+1}.
//!
//! Extraction starts from a 2-component link in a K_{4,4} and adds one square
//! per step: a designated component `J` is traded for two disjoint squares
//! found in a K_{5,5} built from `J` and three unused vertices per part.

mod dispatch;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dispatch::{proof_guided, CaseLabel, Dispatch, DispatchFailure, Resolution};

use crate::classify::LinkingPattern;
use crate::diagram::{project_generic, Diagram, DiagramError, LinkingMatrix};
use crate::geometry::projection::generic_projection_of;
use crate::geometry::validate::Strand;
use crate::geometry::{EmbeddedGraph, GeometryError, ProjectionDirection, RouteRef};
use crate::graph::{disjoint, Edge, GraphError, Square, SubgraphRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ProofGuided,
    Exhaustive,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ProofGuided => "proof-guided",
            Method::Exhaustive => "exhaustive",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "proof-guided" => Some(Method::ProofGuided),
            "exhaustive" => Some(Method::Exhaustive),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractOptions {
    pub method: Method,
    /// Fall back to the exhaustive search when the case analysis gets stuck,
    /// instead of reporting a theorem violation.
    pub allow_fallback: bool,
    /// Seed for the projection direction.
    pub seed: u64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            method: Method::ProofGuided,
            allow_fallback: false,
            seed: 0,
        }
    }
}

/// One step of an extraction: the base 2-link or one extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Components after this step.
    pub n: usize,
    pub case: CaseLabel,
    /// The K_{2n+1,2n+1} holding the link after this step.
    pub ambient: SubgraphRef,
    /// Previous ambient subgraph.
    pub h: Option<SubgraphRef>,
    /// Vertices of the previous link.
    pub h1: Option<SubgraphRef>,
    /// The K_{5,5} searched in this step.
    pub g: Option<SubgraphRef>,
    pub g0: Option<SubgraphRef>,
    pub g1: Vec<SubgraphRef>,
    pub gamma: Option<Square>,
    pub j: Option<Square>,
    pub l_o: Square,
    pub l_1: Square,
    /// Edge through which a 2-link was taken, when the step needed one.
    pub edge: Option<Edge>,
    pub possibility: Option<u8>,
    pub dead_ends: usize,
    pub evidence: Vec<(SubgraphRef, LinkingPattern)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCertificate {
    pub components: Vec<Square>,
    /// Index of the component that may be dropped without splitting the rest.
    pub designated: usize,
    pub matrix: LinkingMatrix,
    /// Linked pairs forming a spanning tree of the linking graph.
    pub spanning_tree: Vec<(usize, usize)>,
    pub ambient: SubgraphRef,
    pub direction: ProjectionDirection,
    pub method: Method,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("{0}")]
    Domain(String),
    #[error("theorem violation: {message}")]
    TheoremViolation { message: String, trace: Vec<TraceStep> },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn violation(message: impl Into<String>, trace: &[TraceStep]) -> ExtractError {
    ExtractError::TheoremViolation {
        message: message.into(),
        trace: trace.to_vec(),
    }
}

/// `keep` padded with the lowest further vertices of `within` to `size` per part.
fn grow(keep: &SubgraphRef, within: &SubgraphRef, size: usize) -> SubgraphRef {
    let pad = |k: &[usize], w: &[usize]| -> Vec<usize> {
        let mut v = k.to_vec();
        v.extend(w.iter().copied().filter(|a| !k.contains(a)).take(size.saturating_sub(k.len())));
        v
    };
    SubgraphRef::new(pad(keep.xs(), within.xs()), pad(keep.ys(), within.ys())).expect("nonempty")
}

fn vertex_span(squares: &[Square]) -> SubgraphRef {
    SubgraphRef::new(
        squares.iter().flat_map(|s| s.xs()),
        squares.iter().flat_map(|s| s.ys()),
    )
    .expect("at least one square")
}

pub(crate) fn square_strands(d: &Diagram, s: &Square) -> [usize; 4] {
    s.edges().map(|e| d.edge_strand(e))
}

fn matrix_of(d: &Diagram, comps: &[Square]) -> LinkingMatrix {
    let n = comps.len();
    let mut m = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = d.omega_squares(&comps[i], &comps[j]) as u8;
            m[i][j] = w;
            m[j][i] = w;
        }
    }
    m
}

/// Breadth-first spanning tree of the linking graph rooted at 0, restricted
/// to indices not in `skip`. `None` when that graph is disconnected.
pub fn spanning_tree(m: &LinkingMatrix, skip: Option<usize>) -> Option<Vec<(usize, usize)>> {
    let n = m.len();
    let live: Vec<usize> = (0..n).filter(|&i| Some(i) != skip).collect();
    let Some(&root) = live.first() else {
        return Some(Vec::new());
    };
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut tree = Vec::new();
    while let Some(i) = queue.pop_front() {
        for &j in &live {
            if !seen[j] && m[i][j] == 1 {
                seen[j] = true;
                tree.push((i, j));
                queue.push_back(j);
            }
        }
    }
    (tree.len() + 1 == live.len()).then_some(tree)
}

/// Disjoint squares `(a, b)` of the K_{4,4} `h` with odd linking, `a`
/// containing `edge` when given. Pairs are tried in lexicographic order.
pub fn find_2link_k44(d: &Diagram, h: &SubgraphRef, edge: Option<Edge>) -> Result<(Square, Square), ExtractError> {
    if h.shape() != (4, 4) {
        return Err(ExtractError::Domain(format!("expected a K_{{4,4}}, got {:?}", h.shape())));
    }
    if let Some(e) = edge {
        if !h.contains_edge(e) {
            return Err(ExtractError::Domain("edge is not in the K_{4,4}".into()));
        }
    }
    let squares = h.squares();
    for a in &squares {
        match edge {
            Some(e) if !a.contains_edge(e) => continue,
            _ => {}
        }
        for b in &squares {
            if (edge.is_some() || a < b) && disjoint(a, b) && d.omega_squares(a, b) {
                return Ok((*a, *b));
            }
        }
    }
    Err(violation("K_{4,4} without a linked pair of disjoint squares", &[]))
}

fn finish(
    d: &Diagram,
    components: Vec<Square>,
    designated: usize,
    ambient: SubgraphRef,
    method: Method,
    trace: Vec<TraceStep>,
) -> Result<LinkCertificate, ExtractError> {
    let matrix = matrix_of(d, &components);
    let Some(tree) = spanning_tree(&matrix, None) else {
        return Err(violation("extracted link splits", &trace));
    };
    if spanning_tree(&matrix, Some(designated)).is_none() {
        return Err(violation("dropping the designated component splits the link", &trace));
    }
    Ok(LinkCertificate {
        components,
        designated,
        matrix,
        spanning_tree: tree,
        ambient,
        direction: d.direction().clone(),
        method,
        trace,
    })
}

fn base(d: &Diagram, k44: SubgraphRef, ambient: SubgraphRef, edge: Option<Edge>, method: Method) -> Result<LinkCertificate, ExtractError> {
    let (a, b) = find_2link_k44(d, &k44, edge)?;
    let step = TraceStep {
        n: 2,
        case: CaseLabel::Base,
        ambient: ambient.clone(),
        h: None,
        h1: None,
        g: None,
        g0: Some(k44),
        g1: Vec::new(),
        gamma: None,
        j: None,
        l_o: a,
        l_1: b,
        edge,
        possibility: None,
        dead_ends: 0,
        evidence: Vec::new(),
    };
    // the square through a required edge is kept; otherwise the smaller one goes
    let designated = if edge.is_some() { 1 } else { 0 };
    finish(d, vec![a, b], designated, ambient, method, vec![step])
}

/// First pair of disjoint squares of `g` with one linking gamma and the other
/// linking gamma or the first.
fn exhaustive_pair(d: &Diagram, g: &SubgraphRef, linked: &BTreeSet<Square>) -> Option<(Square, Square)> {
    let squares = g.squares();
    for (i, a) in squares.iter().enumerate() {
        for b in &squares[i + 1..] {
            if !disjoint(a, b) {
                continue;
            }
            let (la, lb) = (linked.contains(a), linked.contains(b));
            if la && (lb || d.omega_squares(a, b)) {
                return Some((*a, *b));
            }
            if lb && d.omega_squares(a, b) {
                return Some((*b, *a));
            }
        }
    }
    None
}

/// Adds one component to `cert` inside `within` (the whole graph when `None`).
pub fn extend_link(
    d: &Diagram,
    cert: &LinkCertificate,
    within: Option<&SubgraphRef>,
    opts: &ExtractOptions,
) -> Result<LinkCertificate, ExtractError> {
    let n = cert.components.len();
    let whole = d.graph().whole();
    let within = within.unwrap_or(&whole);
    let size = 2 * (n + 1) + 1;
    let (r, s) = within.shape();
    if r < size || s < size {
        return Err(ExtractError::Domain(format!(
            "a {}-component link needs K_{{{size},{size}}}, have K_{{{r},{s}}}",
            n + 1
        )));
    }
    let mut trace = cert.trace.clone();
    let h = cert.ambient.clone();
    let ambient = grow(&h, within, size);
    let h1 = vertex_span(&cert.components);
    let j = cert.components[cert.designated];
    let (gx, gy) = ambient.minus(&h1);
    let g = SubgraphRef::new(gx.into_iter().chain(j.xs()), gy.into_iter().chain(j.ys())).expect("nonempty");

    let gamma = (0..n)
        .filter(|&i| i != cert.designated)
        .map(|i| cert.components[i])
        .find(|c| d.omega_squares(c, &j))
        .ok_or_else(|| violation("designated component links nothing", &trace))?;
    let gs = square_strands(d, &gamma);
    let linked: BTreeSet<Square> = g.squares().into_iter().filter(|q| d.omega_strands_square(&gs, q)).collect();

    let mut step = TraceStep {
        n: n + 1,
        case: CaseLabel::Exhaustive,
        ambient: ambient.clone(),
        h: Some(h),
        h1: Some(h1),
        g: Some(g.clone()),
        g0: None,
        g1: Vec::new(),
        gamma: Some(gamma),
        j: Some(j),
        l_o: j,
        l_1: j,
        edge: None,
        possibility: None,
        dead_ends: 0,
        evidence: Vec::new(),
    };

    let guided = match opts.method {
        Method::Exhaustive => None,
        Method::ProofGuided => match proof_guided(&g, &j, &linked) {
            Ok(disp) => Some(disp),
            Err(DispatchFailure::Pattern(e)) => {
                return Err(violation(format!("linking pattern outside the trichotomy: {e}"), &trace));
            }
            Err(DispatchFailure::Exhausted { case, g0, g1, reason }) => {
                step.case = case;
                step.g0 = Some(g0);
                step.g1 = g1;
                if !opts.allow_fallback {
                    trace.push(step);
                    return Err(violation(format!("case {}: {reason}", case.as_str()), &trace));
                }
                step.case = CaseLabel::ExhaustiveFallback;
                None
            }
        },
    };

    let (l_o, l_1) = match guided {
        Some(disp) => {
            step.case = disp.case;
            step.g0 = Some(disp.g0);
            step.g1 = disp.g1;
            step.possibility = disp.possibility;
            step.dead_ends = disp.dead_ends;
            step.evidence = disp.evidence;
            match disp.resolution {
                Resolution::BothLinkGamma { l_o, l_1 } => (l_o, l_1),
                Resolution::EdgeLink { k44, edge } => {
                    step.edge = Some(edge);
                    find_2link_k44(d, &k44, Some(edge)).map_err(|_| {
                        trace.push(step.clone());
                        violation("K_{4,4} without a linked pair through the chosen edge", &trace)
                    })?
                }
            }
        }
        None => exhaustive_pair(d, &g, &linked).ok_or_else(|| {
            trace.push(step.clone());
            violation("no disjoint pair of squares in G extends the link", &trace)
        })?,
    };
    step.l_o = l_o;
    step.l_1 = l_1;
    trace.push(step);

    // the new pair must hang off gamma
    let ok = disjoint(&l_o, &l_1)
        && linked.contains(&l_o)
        && (linked.contains(&l_1) || d.omega_squares(&l_o, &l_1));
    if !ok {
        return Err(violation("chosen pair does not extend the link", &trace));
    }
    let mut components: Vec<Square> = (0..n).filter(|&i| i != cert.designated).map(|i| cert.components[i]).collect();
    components.push(l_o);
    components.push(l_1);
    let designated = components.len() - 1;
    finish(d, components, designated, ambient, opts.method, trace)
}

fn check_size(d: &Diagram, n: usize) -> Result<(), ExtractError> {
    if n < 2 {
        return Err(ExtractError::Domain(format!("need at least 2 components, got {n}")));
    }
    let (r, s) = d.graph().shape();
    let size = 2 * n + 1;
    if r < size || s < size {
        return Err(ExtractError::Domain(format!(
            "an {n}-component link needs K_{{{size},{size}}}, have K_{{{r},{s}}}"
        )));
    }
    Ok(())
}

/// An `n`-component non-split link among the squares of `d`'s graph.
pub fn extract_nlink_in(d: &Diagram, n: usize, opts: &ExtractOptions) -> Result<LinkCertificate, ExtractError> {
    check_size(d, n)?;
    let mut cert = base(d, SubgraphRef::prefix(4, 4), SubgraphRef::prefix(5, 5), None, opts.method)?;
    while cert.components.len() < n {
        cert = extend_link(d, &cert, None, opts)?;
    }
    Ok(cert)
}

/// Like [`extract_nlink_in`], with one component through `edge`.
pub fn edge_nlink_in(d: &Diagram, edge: Edge, n: usize, opts: &ExtractOptions) -> Result<LinkCertificate, ExtractError> {
    check_size(d, n)?;
    let whole = d.graph().whole();
    if !whole.contains_edge(edge) {
        return Err(ExtractError::Domain("edge is not in the graph".into()));
    }
    let seed = SubgraphRef::new([edge.x], [edge.y]).expect("nonempty");
    let k44 = grow(&seed, &whole, 4);
    let ambient = grow(&k44, &whole, 5);
    let mut cert = base(d, k44, ambient, Some(edge), opts.method)?;
    while cert.components.len() < n {
        cert = extend_link(d, &cert, None, opts)?;
    }
    debug_assert!(cert.components[0].contains_edge(edge));
    Ok(cert)
}

pub fn extract_nlink(e: &EmbeddedGraph, n: usize, opts: &ExtractOptions) -> Result<LinkCertificate, ExtractError> {
    let d = project_generic(e, &[], opts.seed)?;
    extract_nlink_in(&d, n, opts)
}

pub fn edge_nlink(e: &EmbeddedGraph, edge: Edge, n: usize, opts: &ExtractOptions) -> Result<LinkCertificate, ExtractError> {
    let d = project_generic(e, &[], opts.seed)?;
    edge_nlink_in(&d, edge, n, opts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Direction used for the independent recomputation.
    pub direction: Option<ProjectionDirection>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
        passed
    }
}

/// Re-checks a certificate from the embedding alone: the components are
/// pairwise disjoint squares, and a projection of just those curves along a
/// fresh direction reproduces the matrix, the spanning tree and the
/// designated-component property.
pub fn verify_certificate(e: &EmbeddedGraph, cert: &LinkCertificate, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport {
        direction: None,
        checks: Vec::new(),
    };
    let g = e.graph().whole();
    let n = cert.components.len();
    let in_graph = cert.components.iter().all(|s| g.contains_square(s));
    if !rep.push("squares", n >= 2 && in_graph, format!("{n} components")) {
        return rep;
    }
    let mut clash = None;
    for i in 0..n {
        for j in i + 1..n {
            if !disjoint(&cert.components[i], &cert.components[j]) {
                clash.get_or_insert((i, j));
            }
        }
    }
    rep.push(
        "disjoint",
        clash.is_none(),
        clash.map_or("pairwise disjoint".into(), |(i, j)| format!("components {i} and {j} meet")),
    );
    rep.push("designated", cert.designated < n, format!("index {}", cert.designated));
    let shape_ok = cert.matrix.len() == n && cert.matrix.iter().all(|r| r.len() == n);
    if !rep.push("matrix-shape", shape_ok, format!("{n}x{n}")) {
        return rep;
    }

    let strands: Result<Vec<Strand>, GeometryError> = cert
        .components
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Ok(Strand {
                owner: RouteRef::Curve(i),
                line: e.cycle_polyline(&s.cycle())?,
            })
        })
        .collect();
    let strands = match strands {
        Ok(s) => s,
        Err(err) => {
            rep.push("projection", false, err.to_string());
            return rep;
        }
    };
    let mut scene = None;
    for k in 0..16u64 {
        match generic_projection_of(&strands, seed.wrapping_add(k)) {
            Ok(p) if p.direction != cert.direction => {
                scene = Some(p);
                break;
            }
            Ok(_) => continue,
            Err(err) => {
                rep.push("projection", false, err.to_string());
                return rep;
            }
        }
    }
    let Some(scene) = scene else {
        rep.push("projection", false, "no fresh regular direction");
        return rep;
    };
    rep.direction = Some(scene.direction.clone());
    let mut m = vec![vec![0u8; n]; n];
    for c in &scene.crossings {
        let (a, b) = (c.upper.0, c.lower.0);
        if a != b {
            m[a][b] ^= 1;
        }
    }
    // omega is read off crossings with the first curve on top
    let fresh: LinkingMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i < j { m[i][j] } else { m[j][i] }).collect())
        .collect();
    let symmetric = (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]));
    rep.push("symmetric", symmetric, "over and under parities agree");
    rep.push(
        "matrix",
        fresh == cert.matrix,
        format!("recomputed along {}", scene.direction),
    );
    let tree_ok = cert.spanning_tree.len() + 1 == n
        && cert
            .spanning_tree
            .iter()
            .all(|&(a, b)| a < n && b < n && fresh[a][b] == 1)
        && {
            let mut t = vec![vec![0u8; n]; n];
            for &(a, b) in &cert.spanning_tree {
                t[a][b] = 1;
                t[b][a] = 1;
            }
            spanning_tree(&t, None).is_some()
        };
    rep.push("spanning-tree", tree_ok, format!("{} linked pairs", cert.spanning_tree.len()));
    rep.push("non-split", spanning_tree(&fresh, None).is_some(), "linking graph connected");
    rep.push(
        "designated-removable",
        cert.designated < n && spanning_tree(&fresh, Some(cert.designated)).is_some(),
        "connected without the designated component",
    );
    rep
}
