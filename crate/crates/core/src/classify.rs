//! How a closed curve links the squares of a K_{3,3}.
//!
//! A curve disjoint from an embedded K_{3,3} links either no square, the four
//! squares on one edge, or six squares in which the edges of one perfect
//! matching appear twice and all other edges three times.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{CurveRef, Diagram, DiagramError};
use crate::graph::{mutually_nonadjacent, Edge, GraphError, PartitionedGraph, Square, SubgraphRef};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinkingPattern {
    Zero,
    Four { common_edge: Edge, squares: [Square; 4] },
    Six { doubled: [Edge; 3], squares: [Square; 6] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    Zero,
    Four,
    Six,
}

impl LinkingPattern {
    pub fn kind(&self) -> PatternKind {
        match self {
            LinkingPattern::Zero => PatternKind::Zero,
            LinkingPattern::Four { .. } => PatternKind::Four,
            LinkingPattern::Six { .. } => PatternKind::Six,
        }
    }

    pub fn squares(&self) -> Vec<Square> {
        match self {
            LinkingPattern::Zero => Vec::new(),
            LinkingPattern::Four { squares, .. } => squares.to_vec(),
            LinkingPattern::Six { squares, .. } => squares.to_vec(),
        }
    }

    pub fn common_edge(&self) -> Option<Edge> {
        match self {
            LinkingPattern::Four { common_edge, .. } => Some(*common_edge),
            _ => None,
        }
    }

    pub fn is_six(&self) -> bool {
        matches!(self, LinkingPattern::Six { .. })
    }

    /// `ZERO`, `FOUR common=12 squares=...` or `SIX triple=12,34,56 squares=...`.
    pub fn describe(&self, g: &PartitionedGraph) -> String {
        let names = |sq: &[Square]| sq.iter().map(|s| g.square_name(s)).collect::<Vec<_>>().join(",");
        match self {
            LinkingPattern::Zero => "ZERO".to_string(),
            LinkingPattern::Four { common_edge, squares } => {
                format!("FOUR common={} squares={}", g.edge_name(*common_edge), names(squares))
            }
            LinkingPattern::Six { doubled, squares } => format!(
                "SIX triple={} squares={}",
                doubled.iter().map(|e| g.edge_name(*e)).collect::<Vec<_>>().join(","),
                names(squares)
            ),
        }
    }
}

/// Observed linked squares that fit none of the three patterns.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("linking pattern violation in subgraph {subgraph:?}: {reason} (linked: {linked:?})")]
pub struct PatternViolation {
    pub subgraph: SubgraphRef,
    pub linked: Vec<Square>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Violation(#[from] PatternViolation),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Classifies a set of linked squares of the K_{3,3} `m`.
pub fn classify_set(m: &SubgraphRef, linked: &BTreeSet<Square>) -> Result<LinkingPattern, ClassifyError> {
    if m.shape() != (3, 3) {
        return Err(GraphError::Domain("classification needs a K_{3,3} subgraph".into()).into());
    }
    let violation = |reason: &str| PatternViolation {
        subgraph: m.clone(),
        linked: linked.iter().copied().collect(),
        reason: reason.to_string(),
    };
    if linked.iter().any(|s| !m.contains_square(s)) {
        return Err(violation("square outside the subgraph").into());
    }
    let mut count: BTreeMap<Edge, usize> = m.edges().into_iter().map(|e| (e, 0)).collect();
    for s in linked {
        for e in s.edges() {
            *count.get_mut(&e).expect("edge of m") += 1;
        }
    }
    match linked.len() {
        0 => Ok(LinkingPattern::Zero),
        4 => {
            let common: Vec<Edge> = count.iter().filter(|(_, &c)| c == 4).map(|(&e, _)| e).collect();
            let [e] = common[..] else {
                return Err(violation("four squares without a unique common edge").into());
            };
            let squares: Vec<Square> = linked.iter().copied().collect();
            Ok(LinkingPattern::Four {
                common_edge: e,
                squares: squares.try_into().expect("four"),
            })
        }
        6 => {
            let doubled: Vec<Edge> = count.iter().filter(|(_, &c)| c == 2).map(|(&e, _)| e).collect();
            let Ok(doubled) = <[Edge; 3]>::try_from(doubled) else {
                return Err(violation("six squares without exactly three doubled edges").into());
            };
            if !mutually_nonadjacent(&doubled) {
                return Err(violation("doubled edges are not mutually nonadjacent").into());
            }
            if count.iter().any(|(e, &c)| !doubled.contains(e) && c != 3) {
                return Err(violation("an undoubled edge does not appear three times").into());
            }
            if linked
                .iter()
                .any(|s| doubled.iter().filter(|&&e| s.contains_edge(e)).count() != 1)
            {
                return Err(violation("a square does not carry exactly one doubled edge").into());
            }
            let squares: Vec<Square> = linked.iter().copied().collect();
            Ok(LinkingPattern::Six {
                doubled,
                squares: squares.try_into().expect("six"),
            })
        }
        n => Err(violation(&format!("{n} linked squares")).into()),
    }
}

/// Squares of `m` whose mod-2 linking number with `gamma` is 1.
pub fn linked_squares(d: &Diagram, gamma: &CurveRef, m: &SubgraphRef) -> Result<BTreeSet<Square>, ClassifyError> {
    let mut out = BTreeSet::new();
    for s in m.squares() {
        if d.omega(gamma, &CurveRef::from(&s))? {
            out.insert(s);
        }
    }
    Ok(out)
}

pub fn classify(d: &Diagram, gamma: &CurveRef, m: &SubgraphRef) -> Result<LinkingPattern, ClassifyError> {
    classify_set(m, &linked_squares(d, gamma, m)?)
}

/// The pattern after changing one crossing between the curve and edge `f`:
/// exactly the squares of `m` on `f` toggle.
pub fn predict_after_crossing_change(
    m: &SubgraphRef,
    p: &LinkingPattern,
    f: Edge,
) -> Result<LinkingPattern, ClassifyError> {
    let star: BTreeSet<Square> = m.squares_containing_edge(f)?.into_iter().collect();
    let now: BTreeSet<Square> = p.squares().into_iter().collect();
    let next: BTreeSet<Square> = now.symmetric_difference(&star).copied().collect();
    classify_set(m, &next)
}
