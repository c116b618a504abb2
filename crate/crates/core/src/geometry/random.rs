use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::validate::validate_scene;
use super::{rational, EmbeddedGraph, GeometryError, Point3, Polyline};
use crate::graph::PartitionedGraph;

/// Numerators are drawn from `[-LATTICE_RADIUS, LATTICE_RADIUS]`.
pub const LATTICE_RADIUS: i64 = 1000;
/// Denominators are drawn from `1..=LATTICE_DENOMINATOR`.
pub const LATTICE_DENOMINATOR: i64 = 4;
const MAX_ATTEMPTS: usize = 200;

fn lattice_point(rng: &mut ChaCha8Rng) -> Point3 {
    let mut c = || {
        rational(
            rng.gen_range(-LATTICE_RADIUS..=LATTICE_RADIUS),
            rng.gen_range(1..=LATTICE_DENOMINATOR),
        )
    };
    let (x, y, z) = (c(), c(), c());
    Point3::new(x, y, z)
}

/// A seeded random PL embedding with `bends_per_edge` interior points per edge.
/// Resamples until the embedding validates.
pub fn random_embedding(
    g: &PartitionedGraph,
    seed: u64,
    bends_per_edge: usize,
) -> Result<EmbeddedGraph, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (r, s) = g.shape();
    for _ in 0..MAX_ATTEMPTS {
        let xs: Vec<Point3> = (0..r).map(|_| lattice_point(&mut rng)).collect();
        let ys: Vec<Point3> = (0..s).map(|_| lattice_point(&mut rng)).collect();
        let bends: Vec<Vec<Point3>> = (0..r * s)
            .map(|_| (0..bends_per_edge).map(|_| lattice_point(&mut rng)).collect())
            .collect();
        let Ok(e) = EmbeddedGraph::new(g.clone(), xs, ys, bends) else {
            continue;
        };
        if validate_scene(&e, &[]).is_valid() {
            return Ok(e);
        }
    }
    Err(GeometryError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        radius: LATTICE_RADIUS,
        denominator: LATTICE_DENOMINATOR,
    })
}

/// A seeded random closed polyline with `vertices` points that is simple and
/// disjoint from the embedding and from `others`.
pub fn random_closed_curve(
    e: &EmbeddedGraph,
    others: &[Polyline],
    seed: u64,
    vertices: usize,
) -> Result<Polyline, GeometryError> {
    let vertices = vertices.max(3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let pts: Vec<Point3> = (0..vertices).map(|_| lattice_point(&mut rng)).collect();
        let Ok(c) = Polyline::closed(pts) else {
            continue;
        };
        let mut scene = others.to_vec();
        scene.push(c.clone());
        if validate_scene(e, &scene).is_valid() {
            return Ok(c);
        }
    }
    Err(GeometryError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        radius: LATTICE_RADIUS,
        denominator: LATTICE_DENOMINATOR,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_embedding;

    #[test]
    fn straight_k33_is_valid_and_deterministic() {
        let g = PartitionedGraph::complete(3, 3).unwrap();
        let a = random_embedding(&g, 1, 0).unwrap();
        let b = random_embedding(&g, 1, 0).unwrap();
        assert_eq!(a, b);
        assert!(validate_embedding(&a).is_valid());
        assert_ne!(a, random_embedding(&g, 2, 0).unwrap());
    }

    #[test]
    fn bent_k55_routes_have_three_segments() {
        let g = PartitionedGraph::complete(5, 5).unwrap();
        let e = random_embedding(&g, 3, 2).unwrap();
        assert!(validate_embedding(&e).is_valid());
        for edge in g.edges() {
            assert_eq!(e.edge_route(edge).unwrap().segment_count(), 3);
        }
    }

    #[test]
    fn random_curve_avoids_the_graph() {
        let g = PartitionedGraph::complete(3, 3).unwrap();
        let e = random_embedding(&g, 5, 1).unwrap();
        let c = random_closed_curve(&e, &[], 9, 6).unwrap();
        assert_eq!(c.segment_count(), 6);
        assert!(validate_scene(&e, &[c]).is_valid());
    }
}
