mod common;

use bilink::classify::{classify, linked_squares, LinkingPattern};
use bilink::diagram::{project_generic, CurveRef};
use bilink::geometry::random_embedding;
use bilink::graph::{PartitionedGraph, Square};
use common::{meridian, piercing_parity, planar_pair_scene, planar_square_scene};

#[test]
fn omega_matches_piercing_parity_for_a_flat_square() {
    let mut linked = 0;
    for seed in 0..50 {
        let (e, curve, quad) = planar_square_scene(seed);
        let expected = piercing_parity(&quad, &curve).unwrap();
        let d = project_generic(&e, std::slice::from_ref(&curve), seed).unwrap();
        let sq = Square::new(0, 1, 0, 1).unwrap();
        let w = d.omega(&CurveRef::from(sq), &CurveRef::External(0)).unwrap();
        assert_eq!(w, expected, "seed {seed}");
        linked += w as usize;
    }
    // both outcomes must be exercised
    assert!(linked > 0 && linked < 50, "{linked} of 50 linked");
}

#[test]
fn omega_matches_piercing_parity_between_flat_squares() {
    let mut linked = 0;
    for seed in 0..50 {
        let (e, a, b, quad_a, quad_b) = planar_pair_scene(seed);
        let curve_a = e.cycle_polyline(&a.cycle()).unwrap();
        let curve_b = e.cycle_polyline(&b.cycle()).unwrap();
        let expected = piercing_parity(&quad_a, &curve_b).unwrap();
        // the oracle is itself symmetric when both disks are flat
        if let Some(back) = piercing_parity(&quad_b, &curve_a) {
            assert_eq!(back, expected);
        }
        let d = project_generic(&e, &[], seed).unwrap();
        assert_eq!(d.omega(&a.into(), &b.into()).unwrap(), expected, "seed {seed}");
        linked += expected as usize;
    }
    assert!(linked > 0 && linked < 50, "{linked} of 50 linked");
}

#[test]
fn meridian_links_the_four_squares_on_its_edge() {
    let g = PartitionedGraph::complete(3, 3).unwrap();
    let m = g.whole();
    for seed in 0..4 {
        let e = random_embedding(&g, seed, 0).unwrap();
        for edge in g.edges() {
            let loop_ = meridian(&e, edge);
            let d = project_generic(&e, &[loop_], seed).unwrap();
            let p = classify(&d, &CurveRef::External(0), &m).unwrap();
            assert!(
                matches!(p, LinkingPattern::Four { common_edge, .. } if common_edge == edge),
                "seed {seed} edge {}: {}",
                g.edge_name(edge),
                p.describe(&g)
            );
        }
    }
}

#[test]
fn meridian_in_k55_links_exactly_the_squares_through_the_edge() {
    let g = PartitionedGraph::complete(5, 5).unwrap();
    let e = random_embedding(&g, 11, 0).unwrap();
    let edge = g.edge("3", "6").unwrap();
    let d = project_generic(&e, &[meridian(&e, edge)], 2).unwrap();
    let linked = linked_squares(&d, &CurveRef::External(0), &g.whole()).unwrap();
    let expected: std::collections::BTreeSet<Square> = g.squares().into_iter().filter(|s| s.contains_edge(edge)).collect();
    assert_eq!(expected.len(), 16);
    assert_eq!(linked, expected);
}
