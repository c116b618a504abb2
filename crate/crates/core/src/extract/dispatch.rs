//! Case analysis of the inductive step, as a pure function of which squares
//! of the K_{5,5} `G` link the curve `gamma`.
//!
//! Given the linked-square set the dispatcher either names two disjoint
//! squares that both link `gamma`, or an edge `e` of a K_{4,4} all of whose
//! squares through `e` link `gamma` (a 2-link through `e` then finishes the
//! step).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::classify::{classify_set, ClassifyError, LinkingPattern};
use crate::graph::{disjoint, opposite_pairs, Edge, Square, SubgraphRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "base")]
    Base,
    #[serde(rename = "1a")]
    Case1a,
    #[serde(rename = "1a-cascade")]
    Case1aCascade,
    #[serde(rename = "1b")]
    Case1b,
    #[serde(rename = "2a")]
    Case2a,
    #[serde(rename = "2b")]
    Case2b,
    #[serde(rename = "exhaustive")]
    Exhaustive,
    #[serde(rename = "exhaustive-fallback")]
    ExhaustiveFallback,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Base => "base",
            CaseLabel::Case1a => "1a",
            CaseLabel::Case1aCascade => "1a-cascade",
            CaseLabel::Case1b => "1b",
            CaseLabel::Case2a => "2a",
            CaseLabel::Case2b => "2b",
            CaseLabel::Exhaustive => "exhaustive",
            CaseLabel::ExhaustiveFallback => "exhaustive-fallback",
        }
    }

    pub fn parse(s: &str) -> Option<CaseLabel> {
        [
            CaseLabel::Base,
            CaseLabel::Case1a,
            CaseLabel::Case1aCascade,
            CaseLabel::Case1b,
            CaseLabel::Case2a,
            CaseLabel::Case2b,
            CaseLabel::Exhaustive,
            CaseLabel::ExhaustiveFallback,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    /// Two disjoint squares that both link gamma.
    BothLinkGamma { l_o: Square, l_1: Square },
    /// Every square of `k44` through `edge` links gamma.
    EdgeLink { k44: SubgraphRef, edge: Edge },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dispatch {
    pub case: CaseLabel,
    pub g0: SubgraphRef,
    /// Auxiliary K_{4,4} subgraphs visited by the cascade.
    pub g1: Vec<SubgraphRef>,
    pub resolution: Resolution,
    /// Case 2(a) possibility that terminated the step.
    pub possibility: Option<u8>,
    /// Possibility-4 configurations met before termination.
    pub dead_ends: usize,
    pub evidence: Vec<(SubgraphRef, LinkingPattern)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DispatchFailure {
    Pattern(ClassifyError),
    /// The case analysis ran out of options; the step is left unresolved.
    Exhausted {
        case: CaseLabel,
        g0: SubgraphRef,
        g1: Vec<SubgraphRef>,
        reason: String,
    },
}

impl From<ClassifyError> for DispatchFailure {
    fn from(e: ClassifyError) -> Self {
        DispatchFailure::Pattern(e)
    }
}

struct Patterns<'a> {
    linked: &'a BTreeSet<Square>,
    cache: BTreeMap<SubgraphRef, LinkingPattern>,
}

impl<'a> Patterns<'a> {
    fn get(&mut self, m: &SubgraphRef) -> Result<LinkingPattern, ClassifyError> {
        if let Some(p) = self.cache.get(m) {
            return Ok(p.clone());
        }
        let set: BTreeSet<Square> = m.squares().into_iter().filter(|s| self.linked.contains(s)).collect();
        let p = classify_set(m, &set)?;
        self.cache.insert(m.clone(), p.clone());
        Ok(p)
    }
}

/// The one vertex per part of the K_{3,3} `m` outside `alpha`.
fn new_vertices(m: &SubgraphRef, alpha: &Square) -> (usize, usize) {
    let x = *m.xs().iter().find(|a| !alpha.xs().contains(a)).expect("K_{3,3} over a square");
    let y = *m.ys().iter().find(|b| !alpha.ys().contains(b)).expect("K_{3,3} over a square");
    (x, y)
}

/// The square spanned by `e` and the vertices of `m` outside `alpha`.
fn square_on(e: Edge, m: &SubgraphRef, alpha: &Square) -> Square {
    let (x, y) = new_vertices(m, alpha);
    Square::new(e.x, x, e.y, y).expect("distinct vertices")
}

fn spare(outer: &[usize], inner: &[usize]) -> usize {
    *outer.iter().find(|v| !inner.contains(v)).expect("K_{5,5} has a spare vertex per part")
}

fn replace(g0: &SubgraphRef, side_x: bool, from: usize, to: usize) -> SubgraphRef {
    let swap = |v: &usize| if *v == from { to } else { *v };
    if side_x {
        SubgraphRef::new(g0.xs().iter().map(swap), g0.ys().iter().copied()).expect("nonempty")
    } else {
        SubgraphRef::new(g0.xs().iter().copied(), g0.ys().iter().map(swap)).expect("nonempty")
    }
}

enum Stage {
    Done(CaseLabel, Resolution, Vec<(SubgraphRef, LinkingPattern)>),
    /// Only adjacent common edges: `(alpha, m, n, e_m, e_n)`.
    Adjacent(Square, SubgraphRef, SubgraphRef, Edge, Edge),
}

/// One pass of Case 1 inside a K_{4,4}: a pair of alpha-opposite subgraphs with
/// the same common edge (1b), else one with nonadjacent common edges (1a).
fn case1_stage(g0: &SubgraphRef, pats: &mut Patterns) -> Result<Option<Stage>, ClassifyError> {
    let alphas: Vec<Square> = g0.squares().into_iter().filter(|s| pats.linked.contains(s)).collect();
    let mut adjacent = None;
    let mut nonadjacent = None;
    for alpha in &alphas {
        for (m, n) in opposite_pairs(g0, alpha) {
            let (pm, pn) = (pats.get(&m)?, pats.get(&n)?);
            let (Some(em), Some(en)) = (pm.common_edge(), pn.common_edge()) else {
                continue;
            };
            if em == en {
                let ev = vec![(m, pm), (n, pn)];
                return Ok(Some(Stage::Done(
                    CaseLabel::Case1b,
                    Resolution::EdgeLink { k44: g0.clone(), edge: em },
                    ev,
                )));
            }
            if em.shares_vertex(en) {
                adjacent.get_or_insert((*alpha, m, n, em, en));
            } else {
                if nonadjacent.is_none() {
                    let (l_o, l_1) = (square_on(em, &m, alpha), square_on(en, &n, alpha));
                    nonadjacent = Some((m, n, pm, pn, l_o, l_1));
                }
            }
        }
    }
    if let Some((m, n, pm, pn, l_o, l_1)) = nonadjacent {
        return Ok(Some(Stage::Done(
            CaseLabel::Case1a,
            Resolution::BothLinkGamma { l_o, l_1 },
            vec![(m, pm), (n, pn)],
        )));
    }
    Ok(adjacent.map(|(a, m, n, em, en)| Stage::Adjacent(a, m, n, em, en)))
}

fn case1(g: &SubgraphRef, j: &Square, pats: &mut Patterns) -> Result<Dispatch, DispatchFailure> {
    // J plus the two lowest further vertices of each part of G
    let xs: Vec<usize> = j
        .xs()
        .into_iter()
        .chain(g.xs().iter().copied().filter(|a| !j.xs().contains(a)).take(2))
        .collect();
    let ys: Vec<usize> = j
        .ys()
        .into_iter()
        .chain(g.ys().iter().copied().filter(|b| !j.ys().contains(b)).take(2))
        .collect();
    let g0 = SubgraphRef::new(xs, ys).expect("nonempty");
    let exhausted = |g1: Vec<SubgraphRef>, reason: &str| DispatchFailure::Exhausted {
        case: CaseLabel::Case1a,
        g0: g0.clone(),
        g1,
        reason: reason.to_string(),
    };
    match case1_stage(&g0, pats)? {
        Some(Stage::Done(case, resolution, evidence)) => Ok(Dispatch {
            case,
            g0,
            g1: Vec::new(),
            resolution,
            possibility: None,
            dead_ends: 0,
            evidence,
        }),
        None => Err(exhausted(Vec::new(), "no square of G_0 links gamma")),
        Some(Stage::Adjacent(_alpha, m, n, em, en)) => {
            // swap out the far endpoint of each common edge for G's spare vertex
            let (side_x, far_m, far_n, spare_v) = if em.x == en.x {
                (false, em.y, en.y, spare(g.ys(), g0.ys()))
            } else {
                (true, em.x, en.x, spare(g.xs(), g0.xs()))
            };
            let mut evidence = vec![(m.clone(), pats.get(&m)?), (n.clone(), pats.get(&n)?)];
            let mut visited = Vec::new();
            for far in [far_m, far_n] {
                let g1 = replace(&g0, side_x, far, spare_v);
                visited.push(g1.clone());
                if let Some(Stage::Done(_, resolution, ev)) = case1_stage(&g1, pats)? {
                    evidence.extend(ev);
                    return Ok(Dispatch {
                        case: CaseLabel::Case1aCascade,
                        g0,
                        g1: visited,
                        resolution,
                        possibility: None,
                        dead_ends: 0,
                        evidence,
                    });
                }
            }
            Err(exhausted(visited, "cascade exhausted at the depth of the argument"))
        }
    }
}

fn case2(g: &SubgraphRef, j: &Square, pats: &mut Patterns) -> Result<Dispatch, DispatchFailure> {
    let mut k44s = g.subgraphs(4, 4);
    k44s.sort_by_key(|h| !h.contains_square(j));
    let mut g0 = None;
    for h in k44s {
        let mut has_six = false;
        for m in h.subgraphs(3, 3) {
            if pats.get(&m)?.is_six() {
                has_six = true;
                break;
            }
        }
        if has_six {
            g0 = Some(h);
            break;
        }
    }
    let g0 = g0.expect("case 2 is entered only when some K_{3,3} of G is SIX");
    let alphas: Vec<Square> = g0.squares().into_iter().filter(|s| pats.linked.contains(s)).collect();

    // 2(b): both alpha-opposite subgraphs SIX
    for alpha in &alphas {
        for (m, n) in opposite_pairs(&g0, alpha) {
            let (pm, pn) = (pats.get(&m)?, pats.get(&n)?);
            if !(pm.is_six() && pn.is_six()) {
                continue;
            }
            let (xm, ym) = new_vertices(&m, alpha);
            let (xn, yn) = new_vertices(&n, alpha);
            for a in alpha.xs() {
                for b in alpha.ys() {
                    let l_o = Square::new(a, xm, b, ym).expect("distinct");
                    if !pats.linked.contains(&l_o) {
                        continue;
                    }
                    let c = alpha.xs().into_iter().find(|&c| c != a).expect("two");
                    let d = alpha.ys().into_iter().find(|&d| d != b).expect("two");
                    let l_1 = Square::new(c, xn, d, yn).expect("distinct");
                    if pats.linked.contains(&l_1) {
                        debug_assert!(disjoint(&l_o, &l_1));
                        return Ok(Dispatch {
                            case: CaseLabel::Case2b,
                            g0,
                            g1: Vec::new(),
                            resolution: Resolution::BothLinkGamma { l_o, l_1 },
                            possibility: None,
                            dead_ends: 0,
                            evidence: vec![(m, pm), (n, pn)],
                        });
                    }
                }
            }
            return Err(DispatchFailure::Exhausted {
                case: CaseLabel::Case2b,
                g0: g0.clone(),
                g1: Vec::new(),
                reason: "no disjoint pair among the squares on the leftover matching edges".into(),
            });
        }
    }

    // 2(a): one opposite subgraph SIX, the other FOUR with common edge e
    let mut dead_ends = 0;
    for alpha in &alphas {
        for (m, n) in opposite_pairs(&g0, alpha) {
            let (pm, pn) = (pats.get(&m)?, pats.get(&n)?);
            let (six, four, p_six, p_four) = match (pm.is_six(), pn.common_edge().is_some()) {
                (true, true) => (&m, &n, &pm, &pn),
                _ if pn.is_six() && pm.common_edge().is_some() => (&n, &m, &pn, &pm),
                _ => continue,
            };
            let e = p_four.common_edge().expect("FOUR");
            let LinkingPattern::Six { doubled, .. } = p_six else { unreachable!() };
            let in_alpha: Vec<Edge> = doubled.iter().copied().filter(|&t| alpha.contains_edge(t)).collect();
            let [t] = in_alpha[..] else {
                return Err(DispatchFailure::Exhausted {
                    case: CaseLabel::Case2a,
                    g0: g0.clone(),
                    g1: Vec::new(),
                    reason: "matching of a SIX subgraph does not meet alpha once".into(),
                });
            };
            let opposite = alpha.opposite_edge(e).expect("e lies on alpha");
            let possibility = if t == opposite {
                1
            } else if t == e {
                4
            } else if t.y == e.y {
                2
            } else {
                3
            };
            if possibility == 4 {
                dead_ends += 1;
                continue;
            }
            let l_o = square_on(e, four, alpha);
            let l_1 = square_on(opposite, six, alpha);
            if !(pats.linked.contains(&l_o) && pats.linked.contains(&l_1)) {
                return Err(DispatchFailure::Exhausted {
                    case: CaseLabel::Case2a,
                    g0: g0.clone(),
                    g1: Vec::new(),
                    reason: format!("possibility {possibility} squares do not both link gamma"),
                });
            }
            return Ok(Dispatch {
                case: CaseLabel::Case2a,
                g0,
                g1: Vec::new(),
                resolution: Resolution::BothLinkGamma { l_o, l_1 },
                possibility: Some(possibility),
                dead_ends,
                evidence: vec![(six.clone(), p_six.clone()), (four.clone(), p_four.clone())],
            });
        }
    }
    Err(DispatchFailure::Exhausted {
        case: CaseLabel::Case2a,
        g0,
        g1: Vec::new(),
        reason: format!("no terminating configuration ({dead_ends} possibility-4 dead ends)"),
    })
}

/// Runs the case analysis on the K_{5,5} `g` containing the square `j`, where
/// `linked` holds every square of `g` that links gamma (and contains `j`).
pub fn proof_guided(g: &SubgraphRef, j: &Square, linked: &BTreeSet<Square>) -> Result<Dispatch, DispatchFailure> {
    let mut pats = Patterns {
        linked,
        cache: BTreeMap::new(),
    };
    let mut any_six = false;
    for m in g.subgraphs(3, 3) {
        any_six |= pats.get(&m)?.is_six();
    }
    if any_six {
        case2(g, j, &mut pats)
    } else {
        case1(g, j, &mut pats)
    }
}
