use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::{Point3, Rational};

/// Sign of the signed area of `(a, b, c)` in the plane.
pub fn orient2d(a: (&Rational, &Rational), b: (&Rational, &Rational), c: (&Rational, &Rational)) -> Ordering {
    let det = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    det.cmp(&Rational::zero())
}

/// How two closed segments meet in 3-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentContact {
    Disjoint,
    /// A single common point.
    Point(Point3),
    /// Collinear with a common sub-segment; carries one common point.
    Overlap(Point3),
}

fn coord(p: &Point3, axis: usize) -> &Rational {
    match axis {
        0 => &p.x,
        1 => &p.y,
        _ => &p.z,
    }
}

fn between(lo: &Rational, x: &Rational, hi: &Rational) -> bool {
    if lo <= hi {
        lo <= x && x <= hi
    } else {
        hi <= x && x <= lo
    }
}

/// Exact intersection of the closed segments `p0p1` and `q0q1`.
pub fn segment_intersection_3d(p0: &Point3, p1: &Point3, q0: &Point3, q1: &Point3) -> SegmentContact {
    let d = p1.sub(p0);
    let n0 = d.cross(&q0.sub(p0));
    let n1 = d.cross(&q1.sub(p0));
    if n0.is_zero() && n1.is_zero() {
        // all four collinear: compare along the dominant axis of d
        let ax = d.dominant_axis();
        let (a0, a1) = (coord(p0, ax), coord(p1, ax));
        let (b0, b1) = (coord(q0, ax), coord(q1, ax));
        let (lo_a, hi_a) = if a0 <= a1 { (a0, a1) } else { (a1, a0) };
        let (lo_b, hi_b) = if b0 <= b1 { (b0, b1) } else { (b1, b0) };
        let lo = lo_a.max(lo_b);
        let hi = hi_a.min(hi_b);
        return match lo.cmp(hi) {
            Ordering::Greater => SegmentContact::Disjoint,
            Ordering::Equal => {
                let p = [p0, p1, q0, q1]
                    .into_iter()
                    .find(|p| coord(p, ax) == lo)
                    .expect("shared extreme is an endpoint");
                SegmentContact::Point(p.clone())
            }
            Ordering::Less => {
                let p = [p0, p1, q0, q1]
                    .into_iter()
                    .find(|p| coord(p, ax) == lo)
                    .expect("shared extreme is an endpoint");
                SegmentContact::Overlap(p.clone())
            }
        };
    }
    // plane normal through p0, p1 and a non-collinear q point
    let normal = if n0.is_zero() { n1 } else { n0 };
    if !normal.dot(&q1.sub(p0)).is_zero() || !normal.dot(&q0.sub(p0)).is_zero() {
        return SegmentContact::Disjoint;
    }
    // coplanar: drop the coordinate where the normal is largest
    let drop = normal.dominant_axis();
    let (u, v) = match drop {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let pr = |p: &Point3| (coord(p, u).clone(), coord(p, v).clone());
    let (a, b, c, e) = (pr(p0), pr(p1), pr(q0), pr(q1));
    let o1 = orient2d((&a.0, &a.1), (&b.0, &b.1), (&c.0, &c.1));
    let o2 = orient2d((&a.0, &a.1), (&b.0, &b.1), (&e.0, &e.1));
    let o3 = orient2d((&c.0, &c.1), (&e.0, &e.1), (&a.0, &a.1));
    let o4 = orient2d((&c.0, &c.1), (&e.0, &e.1), (&b.0, &b.1));
    let on = |s0: &(Rational, Rational), s1: &(Rational, Rational), p: &(Rational, Rational)| {
        between(&s0.0, &p.0, &s1.0) && between(&s0.1, &p.1, &s1.1)
    };
    if o1 == Ordering::Equal && on(&a, &b, &c) {
        return SegmentContact::Point(q0.clone());
    }
    if o2 == Ordering::Equal && on(&a, &b, &e) {
        return SegmentContact::Point(q1.clone());
    }
    if o3 == Ordering::Equal && on(&c, &e, &a) {
        return SegmentContact::Point(p0.clone());
    }
    if o4 == Ordering::Equal && on(&c, &e, &b) {
        return SegmentContact::Point(p1.clone());
    }
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal {
        // t along p: cross(c - a, e - c) / cross(b - a, e - c)
        let ex = &e.0 - &c.0;
        let ey = &e.1 - &c.1;
        let num = (&c.0 - &a.0) * &ey - (&c.1 - &a.1) * &ex;
        let den = (&b.0 - &a.0) * &ey - (&b.1 - &a.1) * &ex;
        let t = num / den;
        debug_assert!(t.is_positive() && t < Rational::one());
        return SegmentContact::Point(p0.add(&d.scale(&t)));
    }
    SegmentContact::Disjoint
}
