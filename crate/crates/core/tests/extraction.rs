mod common;

use std::collections::BTreeMap;

use bilink::diagram::{project_generic, CurveRef};
use bilink::extract::{
    edge_nlink, edge_nlink_in, extract_nlink, extract_nlink_in, verify_certificate, CaseLabel, ExtractError, ExtractOptions, Method,
};
use bilink::geometry::random_embedding;
use bilink::graph::{disjoint, PartitionedGraph, Square};

fn opts(method: Method) -> ExtractOptions {
    ExtractOptions {
        method,
        allow_fallback: false,
        seed: 5,
    }
}

#[test]
fn k55_cannot_hold_three_components() {
    let g = PartitionedGraph::complete(5, 5).unwrap();
    let e = random_embedding(&g, 0, 0).unwrap();
    assert!(matches!(extract_nlink(&e, 3, &opts(Method::ProofGuided)), Err(ExtractError::Domain(_))));
    assert!(matches!(extract_nlink(&e, 1, &opts(Method::ProofGuided)), Err(ExtractError::Domain(_))));
}

#[test]
fn matrix_matches_an_independent_recomputation() {
    let g = PartitionedGraph::complete(7, 7).unwrap();
    let e = random_embedding(&g, 21, 1).unwrap();
    let c = extract_nlink(&e, 3, &opts(Method::ProofGuided)).unwrap();
    // a different projection of the whole graph
    let d = project_generic(&e, &[], 999).unwrap();
    let curves: Vec<CurveRef> = c.components.iter().map(CurveRef::from).collect();
    assert_eq!(d.linking_matrix(&curves).unwrap(), c.matrix);
    assert_eq!(c.components.len(), 3);
    assert_eq!(c.designated, 2);
    assert_eq!(c.trace.len(), 2);
    assert_eq!(c.trace[0].case, CaseLabel::Base);
}

#[test]
fn tampering_is_reported() {
    let g = PartitionedGraph::complete(7, 7).unwrap();
    let e = random_embedding(&g, 4, 1).unwrap();
    let c = extract_nlink(&e, 3, &opts(Method::Exhaustive)).unwrap();
    assert!(verify_certificate(&e, &c, 1).passed());

    let mut forged = c.clone();
    forged.matrix[0][1] ^= 1;
    forged.matrix[1][0] ^= 1;
    let rep = verify_certificate(&e, &forged, 1);
    assert!(rep.checks.iter().any(|k| k.name == "matrix" && !k.passed));

    let mut overlapping = c.clone();
    let [x0, _] = overlapping.components[0].xs();
    let [_, x1b] = overlapping.components[1].xs();
    let ys = overlapping.components[1].ys();
    overlapping.components[1] = Square::new(x0, x1b, ys[0], ys[1]).unwrap();
    let rep = verify_certificate(&e, &overlapping, 1);
    assert!(rep.checks.iter().any(|k| k.name == "disjoint" && !k.passed));

    let mut bad_tree = c.clone();
    bad_tree.spanning_tree.pop();
    assert!(!verify_certificate(&e, &bad_tree, 1).passed());
}

#[test]
fn every_edge_of_a_k55_lies_on_a_2_link() {
    let g = PartitionedGraph::complete(5, 5).unwrap();
    let e = random_embedding(&g, 8, 1).unwrap();
    let d = project_generic(&e, &[], 8).unwrap();
    for edge in g.edges() {
        let c = edge_nlink_in(&d, edge, 2, &opts(Method::ProofGuided)).unwrap();
        assert!(c.components[0].contains_edge(edge));
        assert!(disjoint(&c.components[0], &c.components[1]));
        assert!(verify_certificate(&e, &c, 77).passed());
    }
}

#[test]
fn edge_links_keep_the_edge_through_growth() {
    let g = PartitionedGraph::complete(7, 7).unwrap();
    let e = random_embedding(&g, 2, 1).unwrap();
    let edge = g.edge("13", "14").unwrap();
    let c = edge_nlink(&e, edge, 3, &opts(Method::ProofGuided)).unwrap();
    assert!(c.components[0].contains_edge(edge));
    assert_eq!(c.trace[0].l_o, c.components[0]);
    assert!(verify_certificate(&e, &c, 3).passed());
}

#[test]
fn methods_agree_and_case_two_a_ends_in_possibilities_one_to_three() {
    let g = PartitionedGraph::complete(7, 7).unwrap();
    let mut fired: BTreeMap<CaseLabel, usize> = BTreeMap::new();
    for seed in 100..112 {
        let e = random_embedding(&g, seed, 1).unwrap();
        let d = project_generic(&e, &[], seed).unwrap();
        let a = extract_nlink_in(&d, 3, &opts(Method::ProofGuided)).unwrap();
        let b = extract_nlink_in(&d, 3, &opts(Method::Exhaustive)).unwrap();
        assert!(verify_certificate(&e, &a, seed).passed());
        assert!(verify_certificate(&e, &b, seed).passed());
        // the base step does not depend on the method
        assert_eq!(a.trace[0], b.trace[0]);
        for s in &a.trace[1..] {
            *fired.entry(s.case).or_default() += 1;
            if s.case == CaseLabel::Case2a {
                assert!(matches!(s.possibility, Some(1..=3)));
            }
            let gamma = s.gamma.unwrap();
            assert!(d.omega(&gamma.into(), &s.l_o.into()).unwrap());
        }
    }
    assert_eq!(fired.values().sum::<usize>(), 12);
}

#[test]
fn larger_graphs_are_accepted() {
    // n = 2 inside a K_{6,5}: only the leading K_{5,5} is used
    let g = PartitionedGraph::complete(6, 5).unwrap();
    let e = random_embedding(&g, 1, 0).unwrap();
    let c = extract_nlink(&e, 2, &opts(Method::ProofGuided)).unwrap();
    assert!(verify_certificate(&e, &c, 0).passed());
}

#[test]
fn meridian_of_one_edge_fires_case_one_b() {
    use bilink::classify::linked_squares;
    use bilink::extract::{proof_guided, Resolution};
    let g = PartitionedGraph::complete(5, 5).unwrap();
    let e = random_embedding(&g, 3, 0).unwrap();
    let whole = g.whole();
    for edge in [g.edge("1", "2").unwrap(), g.edge("7", "10").unwrap()] {
        let d = project_generic(&e, &[common::meridian(&e, edge)], 1).unwrap();
        let linked = linked_squares(&d, &CurveRef::External(0), &whole).unwrap();
        let j = whole.squares_containing_edge(edge).unwrap()[0];
        let disp = proof_guided(&whole, &j, &linked).unwrap();
        assert_eq!(disp.case, CaseLabel::Case1b);
        assert!(matches!(disp.resolution, Resolution::EdgeLink { edge: f, .. } if f == edge));
    }
}
