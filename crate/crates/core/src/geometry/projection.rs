//! Regular parallel projections of a scene and exact crossing extraction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::predicates::orient2d;
use super::validate::{scene_strands, RouteRef, Strand};
use super::{int, to_f64, EmbeddedGraph, GeometryError, Point3, Polyline, ProjectionDirection, Rational, Vec3};

/// Bound on the integer components of sampled directions.
const DIRECTION_RADIUS: i64 = 97;
const MAX_DIRECTION_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub u: Rational,
    pub v: Rational,
}

impl Point2 {
    fn xy(&self) -> (&Rational, &Rational) {
        (&self.u, &self.v)
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.u), to_f64(&self.v)]
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// A failed regularity condition, naming the segments involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    SegmentToPoint { route: RouteRef, segment: usize },
    /// Images touch at an endpoint or overlap along a line.
    Touching {
        a: (RouteRef, usize),
        b: (RouteRef, usize),
    },
    EqualHeights {
        a: (RouteRef, usize),
        b: (RouteRef, usize),
        point: Point2,
    },
    /// More than two segments pass through one image point.
    MultiplePoint { point: Point2 },
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::SegmentToPoint { route, segment } => {
                write!(f, "segment {segment} of {route:?} projects to a point")
            }
            Degeneracy::Touching { a, b } => write!(
                f,
                "images of segment {} of {:?} and segment {} of {:?} touch",
                a.1, a.0, b.1, b.0
            ),
            Degeneracy::EqualHeights { a, b, point } => write!(
                f,
                "segment {} of {:?} and segment {} of {:?} meet in space over {point}",
                a.1, a.0, b.1, b.0
            ),
            Degeneracy::MultiplePoint { point } => write!(f, "multiple point at {point}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedStrand {
    pub owner: RouteRef,
    pub points: Vec<Point2>,
    pub closed: bool,
}

/// A transverse double point; `upper` is strictly higher along the direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCrossing {
    pub upper: (usize, usize),
    pub lower: (usize, usize),
    pub point: Point2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedScene {
    pub direction: ProjectionDirection,
    pub strands: Vec<ProjectedStrand>,
    pub crossings: Vec<RawCrossing>,
}

/// Orthogonal frame `(u, v)` of the plane normal to `d`.
fn frame(d: &Vec3) -> (Vec3, Vec3) {
    let axes = [Vec3::from_ints(1, 0, 0), Vec3::from_ints(0, 1, 0), Vec3::from_ints(0, 0, 1)];
    // the axis least aligned with d gives a nonzero cross product
    let mut best = 0;
    let a = [d.x.clone(), d.y.clone(), d.z.clone()].map(|c| if c < Rational::zero() { -c } else { c });
    for k in 1..3 {
        if a[k] < a[best] {
            best = k;
        }
    }
    let u = d.cross(&axes[best]);
    let v = d.cross(&u);
    (u, v)
}

struct Seg<'a> {
    strand: usize,
    index: usize,
    a3: &'a Point3,
    b3: &'a Point3,
    a: Point2,
    b: Point2,
    ha: Rational,
    hb: Rational,
    bbox: [f64; 4],
}

fn cross2(ax: &Rational, ay: &Rational, bx: &Rational, by: &Rational) -> Rational {
    ax * by - ay * bx
}

fn on_closed_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let within = |lo: &Rational, x: &Rational, hi: &Rational| {
        if lo <= hi {
            lo <= x && x <= hi
        } else {
            hi <= x && x <= lo
        }
    };
    within(&a.u, &p.u, &b.u) && within(&a.v, &p.v, &b.v)
}

// a degeneracy is reported at most once per attempted direction
#[allow(clippy::result_large_err)]
pub(crate) fn project_strands(
    strands: &[Strand],
    direction: &ProjectionDirection,
) -> Result<ProjectedScene, Degeneracy> {
    let d = direction.vector();
    let (fu, fv) = frame(d);
    let img = |p: &Point3| Point2 {
        u: fu.dot_point(p),
        v: fv.dot_point(p),
    };

    let mut out_strands = Vec::with_capacity(strands.len());
    let mut segs: Vec<Seg> = Vec::new();
    for (si, s) in strands.iter().enumerate() {
        let pts2: Vec<Point2> = s.line.points().iter().map(img).collect();
        let heights: Vec<Rational> = s.line.points().iter().map(|p| d.dot_point(p)).collect();
        let n = pts2.len();
        for (k, (a3, b3)) in s.line.segments().enumerate() {
            if d.cross(&b3.sub(a3)).is_zero() {
                return Err(Degeneracy::SegmentToPoint {
                    route: s.owner,
                    segment: k,
                });
            }
            let (a, b) = (pts2[k].clone(), pts2[(k + 1) % n].clone());
            let (af, bf) = (a.to_f64(), b.to_f64());
            let pad = |x: f64, y: f64| 1e-9 * (1.0 + x.abs().max(y.abs()));
            let bbox = [
                af[0].min(bf[0]) - pad(af[0], bf[0]),
                af[0].max(bf[0]) + pad(af[0], bf[0]),
                af[1].min(bf[1]) - pad(af[1], bf[1]),
                af[1].max(bf[1]) + pad(af[1], bf[1]),
            ];
            segs.push(Seg {
                strand: si,
                index: k,
                a3,
                b3,
                a,
                b,
                ha: heights[k].clone(),
                hb: heights[(k + 1) % n].clone(),
                bbox,
            });
        }
        out_strands.push(ProjectedStrand {
            owner: s.owner,
            points: pts2,
            closed: s.line.is_closed(),
        });
    }

    let tag = |s: &Seg| (strands[s.strand].owner, s.index);
    let mut crossings = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (s, t) = (&segs[i], &segs[j]);
            if s.bbox[1] < t.bbox[0] || t.bbox[1] < s.bbox[0] || s.bbox[3] < t.bbox[2] || t.bbox[3] < s.bbox[2] {
                continue;
            }
            // segments with a common endpoint in space may only meet there
            let shared = [(s.a3, s.b3, &s.a, &s.b), (s.b3, s.a3, &s.b, &s.a)]
                .into_iter()
                .find_map(|(p, pother, _, pimg_other)| {
                    if p == t.a3 {
                        Some((pother, t.b3, pimg_other, &t.b))
                    } else if p == t.b3 {
                        Some((pother, t.a3, pimg_other, &t.a))
                    } else {
                        None
                    }
                });
            if let Some((p_other3, q_other3, p_other, q_other)) = shared {
                if p_other3 == q_other3 {
                    return Err(Degeneracy::Touching { a: tag(s), b: tag(t) });
                }
                let base = if s.a3 == t.a3 || s.a3 == t.b3 { &s.a } else { &s.b };
                if orient2d(base.xy(), p_other.xy(), q_other.xy()) == Ordering::Equal {
                    let dot = (&p_other.u - &base.u) * (&q_other.u - &base.u)
                        + (&p_other.v - &base.v) * (&q_other.v - &base.v);
                    if dot > Rational::zero() {
                        return Err(Degeneracy::Touching { a: tag(s), b: tag(t) });
                    }
                }
                continue;
            }

            let o1 = orient2d(s.a.xy(), s.b.xy(), t.a.xy());
            let o2 = orient2d(s.a.xy(), s.b.xy(), t.b.xy());
            let o3 = orient2d(t.a.xy(), t.b.xy(), s.a.xy());
            let o4 = orient2d(t.a.xy(), t.b.xy(), s.b.xy());
            let touch = (o1 == Ordering::Equal && on_closed_segment(&s.a, &s.b, &t.a))
                || (o2 == Ordering::Equal && on_closed_segment(&s.a, &s.b, &t.b))
                || (o3 == Ordering::Equal && on_closed_segment(&t.a, &t.b, &s.a))
                || (o4 == Ordering::Equal && on_closed_segment(&t.a, &t.b, &s.b));
            if touch {
                return Err(Degeneracy::Touching { a: tag(s), b: tag(t) });
            }
            if o1 == Ordering::Equal || o2 == Ordering::Equal || o1 == o2 || o3 == o4 {
                continue;
            }
            let (sx, sy) = (&s.b.u - &s.a.u, &s.b.v - &s.a.v);
            let (tx, ty) = (&t.b.u - &t.a.u, &t.b.v - &t.a.v);
            let (cx, cy) = (&t.a.u - &s.a.u, &t.a.v - &s.a.v);
            let den = cross2(&sx, &sy, &tx, &ty);
            let ps = cross2(&cx, &cy, &tx, &ty) / &den;
            let pt = cross2(&cx, &cy, &sx, &sy) / &den;
            let point = Point2 {
                u: &s.a.u + &ps * &sx,
                v: &s.a.v + &ps * &sy,
            };
            let hs = &s.ha + &ps * (&s.hb - &s.ha);
            let ht = &t.ha + &pt * (&t.hb - &t.ha);
            let (upper, lower) = match hs.cmp(&ht) {
                Ordering::Greater => ((s.strand, s.index), (t.strand, t.index)),
                Ordering::Less => ((t.strand, t.index), (s.strand, s.index)),
                Ordering::Equal => {
                    return Err(Degeneracy::EqualHeights {
                        a: tag(s),
                        b: tag(t),
                        point,
                    })
                }
            };
            crossings.push(RawCrossing { upper, lower, point });
        }
    }

    let mut seen: BTreeMap<&Point2, usize> = BTreeMap::new();
    for c in &crossings {
        if seen.insert(&c.point, 0).is_some() {
            return Err(Degeneracy::MultiplePoint { point: c.point.clone() });
        }
    }
    crossings.sort_by(|a, b| {
        (a.upper, &a.point, a.lower).cmp(&(b.upper, &b.point, b.lower))
    });
    Ok(ProjectedScene {
        direction: direction.clone(),
        strands: out_strands,
        crossings,
    })
}

/// Projects the embedding plus extra closed curves along `d`, checking regularity.
#[allow(clippy::result_large_err)]
pub fn project_scene(
    e: &EmbeddedGraph,
    extra: &[Polyline],
    d: &ProjectionDirection,
) -> Result<ProjectedScene, Degeneracy> {
    let (strands, _) = scene_strands(e, extra);
    project_strands(&strands, d)
}

/// Samples rational directions from `seed` until one is regular for the scene.
pub(crate) fn generic_projection_of(
    strands: &[Strand],
    seed: u64,
) -> Result<ProjectedScene, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..MAX_DIRECTION_ATTEMPTS {
        let v = loop {
            let v = Vec3::new(
                int(rng.gen_range(-DIRECTION_RADIUS..=DIRECTION_RADIUS)),
                int(rng.gen_range(-DIRECTION_RADIUS..=DIRECTION_RADIUS)),
                int(rng.gen_range(-DIRECTION_RADIUS..=DIRECTION_RADIUS)),
            );
            if !v.is_zero() {
                break v;
            }
        };
        let d = ProjectionDirection::new(v).expect("nonzero");
        match project_strands(strands, &d) {
            Ok(p) => return Ok(p),
            Err(deg) => last = Some(deg),
        }
    }
    Err(GeometryError::NoGenericDirection {
        attempts: MAX_DIRECTION_ATTEMPTS,
        last: Box::new(last.expect("at least one attempt")),
    })
}

/// A regular projection of the scene under a seeded generic direction.
pub fn generic_projection(
    e: &EmbeddedGraph,
    extra: &[Polyline],
    seed: u64,
) -> Result<ProjectedScene, GeometryError> {
    let (strands, _) = scene_strands(e, extra);
    generic_projection_of(&strands, seed)
}

/// A direction whose projection of the scene is regular. Deterministic in `seed`.
pub fn pick_generic_direction(
    e: &EmbeddedGraph,
    extra: &[Polyline],
    seed: u64,
) -> Result<ProjectionDirection, GeometryError> {
    Ok(generic_projection(e, extra, seed)?.direction)
}
