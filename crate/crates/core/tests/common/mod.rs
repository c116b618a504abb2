//! Scene builders and independent linking oracles shared by the integration tests.
#![allow(dead_code)]

use bilink::geometry::{int, rational, random_closed_curve, random_embedding, EmbeddedGraph, Point3, Polyline, Rational, Vec3};
use bilink::graph::{Edge, PartitionedGraph, Square, Vertex};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random K_{3,3} embedding and a random closed curve avoiding it.
pub fn k33_scene(seed: u64) -> (EmbeddedGraph, Polyline) {
    let g = PartitionedGraph::complete(3, 3).unwrap();
    let e = random_embedding(&g, seed, 1).unwrap();
    let c = random_closed_curve(&e, &[], seed ^ 0xc0ffee, 5).unwrap();
    (e, c)
}

fn coord(p: &Point3, axis: usize) -> &Rational {
    match axis {
        0 => &p.x,
        1 => &p.y,
        _ => &p.z,
    }
}

/// Parity of the number of times `curve` pierces the planar polygon `disk`,
/// or `None` if the curve touches the plane of the disk degenerately.
///
/// A closed curve links the boundary of a flat disk mod 2 iff it crosses the
/// disk an odd number of times, so this needs no projection at all.
pub fn piercing_parity(disk: &[Point3], curve: &Polyline) -> Option<bool> {
    let n = disk[1].sub(&disk[0]).cross(&disk[2].sub(&disk[0]));
    assert!(!n.is_zero());
    for q in &disk[3..] {
        assert!(n.dot(&q.sub(&disk[0])).is_zero(), "disk is not planar");
    }
    let drop = n.dominant_axis();
    let (a, b) = match drop {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let side = |p: &Point3| n.dot(&p.sub(&disk[0]));
    let pts = curve.points();
    let mut parity = false;
    for i in 0..pts.len() {
        let (p, q) = (&pts[i], &pts[(i + 1) % pts.len()]);
        let (sp, sq) = (side(p), side(q));
        if sp.is_zero() || sq.is_zero() {
            return None;
        }
        if sp.is_positive() == sq.is_positive() {
            continue;
        }
        // where the segment meets the plane
        let t = &sp / (&sp - &sq);
        let hit = p.add(&q.sub(p).scale(&t));
        let (hu, hv) = (coord(&hit, a).clone(), coord(&hit, b).clone());
        // even-odd rule along a ray in +u
        let mut inside = false;
        for k in 0..disk.len() {
            let (c0, c1) = (&disk[k], &disk[(k + 1) % disk.len()]);
            let (u0, v0, u1, v1) = (coord(c0, a), coord(c0, b), coord(c1, a), coord(c1, b));
            let cross = (u1 - u0) * (&hv - v0) - (v1 - v0) * (&hu - u0);
            let within_v = (v0 <= &hv && &hv <= v1) || (v1 <= &hv && &hv <= v0);
            let within_u = (u0 <= &hu && &hu <= u1) || (u1 <= &hu && &hu <= u0);
            if cross.is_zero() && within_u && within_v {
                return None;
            }
            if (v0 > &hv) != (v1 > &hv) {
                let u_at = u0 + (u1 - u0) * ((&hv - v0) / (v1 - v0));
                if u_at > hu {
                    inside = !inside;
                }
            }
        }
        parity ^= inside;
    }
    Some(parity)
}

fn planar_quad(rng: &mut ChaCha8Rng) -> [Point3; 4] {
    let r = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| rng.gen_range(lo..=hi);
    let o = Point3::from_ints(r(rng, -50, 50), r(rng, -50, 50), r(rng, -50, 50));
    let (u, v) = loop {
        let u = Vec3::from_ints(r(rng, -9, 9), r(rng, -9, 9), r(rng, -9, 9));
        let v = Vec3::from_ints(r(rng, -9, 9), r(rng, -9, 9), r(rng, -9, 9));
        if !u.cross(&v).is_zero() {
            break (u, v);
        }
    };
    // a convex quadrilateral with one corner on each half-axis of (u, v)
    let corner = |s: &Vec3, k: i64| o.add(&s.scale(&int(k)));
    [
        corner(&u, -r(rng, 1, 6)),
        corner(&v, -r(rng, 1, 6)),
        corner(&u, r(rng, 1, 6)),
        corner(&v, r(rng, 1, 6)),
    ]
}

/// A straight K_{2,2} whose square is a flat convex quadrilateral, plus a
/// random closed curve near it. Cycle order of the square is x0 y0 x1 y1.
pub fn planar_square_scene(seed: u64) -> (EmbeddedGraph, Polyline, [Point3; 4]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = PartitionedGraph::complete(2, 2).unwrap();
    loop {
        let q = planar_quad(&mut rng);
        let e = EmbeddedGraph::straight(g.clone(), vec![q[0].clone(), q[2].clone()], vec![q[1].clone(), q[3].clone()]).unwrap();
        // two points on either side of the quad's center, then a random detour
        let center = q[0].add(&q[2].sub(&q[0]).scale(&rational(1, 2)));
        let normal = q[1].sub(&q[0]).cross(&q[2].sub(&q[0]));
        let jitter = |rng: &mut ChaCha8Rng| Vec3::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let mut pts = Vec::new();
        for sign in [1, -1] {
            let k = rational(sign * rng.gen_range(1..=20), 100);
            pts.push(center.add(&normal.scale(&k)).add(&jitter(&mut rng)));
        }
        for _ in 0..3 {
            pts.push(Point3::from_ints(rng.gen_range(-90..=90), rng.gen_range(-90..=90), rng.gen_range(-90..=90)));
        }
        let Ok(c) = Polyline::closed(pts) else { continue };
        if !bilink::geometry::validate_scene(&e, std::slice::from_ref(&c)).is_valid() {
            continue;
        }
        if piercing_parity(&q, &c).is_some() {
            return (e, c, q);
        }
    }
}

/// A K_{4,4} whose squares x0y0x1y1 and x2y2x3y3 are flat quadrilaterals
/// placed so that they often link; the other edges are bent at random.
pub fn planar_pair_scene(seed: u64) -> (EmbeddedGraph, Square, Square, [Point3; 4], [Point3; 4]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = PartitionedGraph::complete(4, 4).unwrap();
    loop {
        let a = planar_quad(&mut rng);
        let b = planar_quad(&mut rng);
        let xs = vec![a[0].clone(), a[2].clone(), b[0].clone(), b[2].clone()];
        let ys = vec![a[1].clone(), a[3].clone(), b[1].clone(), b[3].clone()];
        let mut e = EmbeddedGraph::straight(g.clone(), xs, ys).unwrap();
        for edge in g.edges() {
            let keep = (edge.x < 2 && edge.y < 2) || (edge.x >= 2 && edge.y >= 2);
            if !keep {
                let p = Point3::new(
                    rational(rng.gen_range(-400..=400), rng.gen_range(1..=3)),
                    rational(rng.gen_range(-400..=400), rng.gen_range(1..=3)),
                    rational(rng.gen_range(-400..=400), rng.gen_range(1..=3)),
                );
                e.set_bends(edge, vec![p]);
            }
        }
        if !bilink::geometry::validate_embedding(&e).is_valid() {
            continue;
        }
        let sa = Square::new(0, 1, 0, 1).unwrap();
        let sb = Square::new(2, 3, 2, 3).unwrap();
        let curve_b = e.cycle_polyline(&sb.cycle()).unwrap();
        if piercing_parity(&a, &curve_b).is_some() {
            return (e, sa, sb, a, b);
        }
    }
}

/// A small square loop around the midpoint of the straight edge `edge`,
/// shrunk until it avoids the rest of the embedding.
pub fn meridian(e: &EmbeddedGraph, edge: Edge) -> Polyline {
    let p = e.position(Vertex::X(edge.x));
    let q = e.position(Vertex::Y(edge.y));
    assert!(e.bends(edge).is_empty());
    let dir = q.sub(p);
    let axis = match dir.dominant_axis() {
        0 => Vec3::from_ints(0, 1, 0),
        _ => Vec3::from_ints(1, 0, 0),
    };
    let u = dir.cross(&axis);
    let v = dir.cross(&u);
    let mid = p.add(&dir.scale(&rational(1, 2)));
    let mut eps = rational(1, 1000);
    loop {
        let (su, sv) = (u.scale(&eps), v.scale(&eps));
        let corners = vec![
            mid.add(&su),
            mid.add(&sv),
            mid.add(&su.scale(&int(-1))),
            mid.add(&sv.scale(&int(-1))),
        ];
        let c = Polyline::closed(corners).unwrap();
        if bilink::geometry::validate_scene(e, std::slice::from_ref(&c)).is_valid() {
            return c;
        }
        eps /= int(10);
        assert!(eps > rational(1, 1_000_000_000_000), "meridian never fits");
    }
}

/// Edge-sum of `c` over the square, mod 2.
pub fn cochain_parity(s: &Square, c: &[Edge]) -> bool {
    s.edges().iter().filter(|e| c.contains(e)).count() % 2 == 1
}

/// Crossings between the external curve 0 and a graph edge, with that edge.
pub fn curve_edge_crossings(d: &bilink::diagram::Diagram) -> Vec<(bilink::diagram::Crossing, Edge)> {
    use bilink::geometry::RouteRef;
    d.crossings()
        .iter()
        .filter_map(|c| match (d.owner(c.upper.strand), d.owner(c.lower.strand)) {
            (RouteRef::Curve(0), RouteRef::Edge(f)) | (RouteRef::Edge(f), RouteRef::Curve(0)) => Some((c.clone(), f)),
            _ => None,
        })
        .collect()
}
