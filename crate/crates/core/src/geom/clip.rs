use std::cmp::Ordering;

use num_traits::Zero;

use super::{orient, orient_sign_filtered, signed_area, BBox, triangulate_simple, Coord, FPoint, GeomError, Point2, Rational, SimplePolygon};

/// Keeps the part of `poly` on the closed left side of the directed line `a -> b`.
pub(crate) fn clip_halfplane<T: Coord>(poly: &[Point2<T>], a: &Point2<T>, b: &Point2<T>) -> Vec<Point2<T>> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    if n == 0 {
        return out;
    }
    // Compare against zero explicitly: `Signed` treats -0.0 as negative for floats.
    let zero = T::zero();
    let side: Vec<T> = poly.iter().map(|p| orient(a, b, p)).collect();
    for i in 0..n {
        let j = (i + 1) % n;
        let (si, sj) = (&side[i], &side[j]);
        if *si >= zero {
            out.push(poly[i].clone());
        }
        let crosses = (*si > zero && *sj < zero) || (*si < zero && *sj > zero);
        if crosses {
            let t = si.clone() / (si.clone() - sj.clone());
            out.push(poly[i].lerp(&poly[j], &t));
        }
    }
    out
}

/// Sutherland-Hodgman clip of `subject` against a convex counterclockwise
/// `clipper`. The result may contain repeated or collinear vertices.
pub fn clip_convex_raw<T: Coord>(subject: &[Point2<T>], clipper: &[Point2<T>]) -> Vec<Point2<T>> {
    let n = clipper.len();
    let mut cur = subject.to_vec();
    for i in 0..n {
        if cur.is_empty() {
            break;
        }
        cur = clip_halfplane(&cur, &clipper[i], &clipper[(i + 1) % n]);
    }
    cur
}

/// Area of the intersection of two convex counterclockwise float polygons.
pub fn clip_area_f64(a: &[FPoint], b: &[FPoint]) -> f64 {
    signed_area(&clip_convex_raw(a, b)).max(0.0)
}

/// Exact intersection of two convex polygons; `None` when it has no area.
pub fn convex_clip(a: &SimplePolygon, b: &SimplePolygon) -> Result<Option<SimplePolygon>, GeomError> {
    if !a.is_convex() || !b.is_convex() {
        return Err(GeomError::NotConvex);
    }
    Ok(clip_convex_pair(a, b))
}

pub(crate) fn clip_convex_pair(a: &SimplePolygon, b: &SimplePolygon) -> Option<SimplePolygon> {
    if !a.bbox().overlaps_open(&b.bbox()) {
        return None;
    }
    SimplePolygon::from_convex_raw(clip_convex_raw(a.vertices(), b.vertices()))
}

/// Splits a polygon into convex parts: itself when convex, else its triangulation.
pub(crate) fn convex_parts(p: &SimplePolygon) -> Vec<SimplePolygon> {
    if p.is_convex() {
        vec![p.clone()]
    } else {
        triangulate_simple(p).expect("normalized simple polygons always triangulate")
    }
}

/// Exact area shared by two unions of interior-disjoint convex parts.
pub(crate) fn parts_intersection_area(a: &[SimplePolygon], b: &[SimplePolygon]) -> Rational {
    let mut total = Rational::zero();
    for pa in a {
        let ba = pa.bbox();
        for pb in b {
            if !ba.overlaps_open(&pb.bbox()) {
                continue;
            }
            if let Some(c) = SimplePolygon::from_convex_raw(clip_convex_raw(pa.vertices(), pb.vertices())) {
                total += c.area();
            }
        }
    }
    total
}

/// True iff the open interiors of `a` and `b` meet.
pub fn interiors_overlap(a: &SimplePolygon, b: &SimplePolygon) -> bool {
    if !a.bbox().overlaps_open(&b.bbox()) {
        return false;
    }
    let pa = convex_parts(a);
    let pb = convex_parts(b);
    pa.iter().any(|x| pb.iter().any(|y| convex_interiors_meet(x, y)))
}

/// Separating-axis test for convex counterclockwise polygons: the interiors
/// are disjoint iff some edge line of either one has the other on its closed
/// outer side.
pub(crate) fn convex_interiors_meet(a: &SimplePolygon, b: &SimplePolygon) -> bool {
    if !a.bbox().overlaps_open(&b.bbox()) {
        return false;
    }
    let (fa, fb) = (a.to_f64(), b.to_f64());
    let separates = |p: &[Point2], fp: &[FPoint], q: &[Point2], fq: &[FPoint]| {
        (0..p.len()).any(|i| {
            let j = (i + 1) % p.len();
            q.iter().zip(fq).all(|w| orient_sign_filtered((&p[i], &fp[i]), (&p[j], &fp[j]), w) != Ordering::Greater)
        })
    };
    !separates(a.vertices(), &fa, b.vertices(), &fb) && !separates(b.vertices(), &fb, a.vertices(), &fa)
}

/// True iff `inner` lies in the closure of `outer`.
///
/// Decided by comparing `area(inner ∩ outer)` with `area(inner)`.
pub fn polygon_contains(outer: &SimplePolygon, inner: &SimplePolygon) -> bool {
    parts_contain(&outer.bbox(), &convex_parts(outer), inner)
}

/// `polygon_contains` against an outer polygon given by its box and convex parts.
pub(crate) fn parts_contain(outer_box: &BBox, outer_parts: &[SimplePolygon], inner: &SimplePolygon) -> bool {
    if !outer_box.contains_box(&inner.bbox()) {
        return false;
    }
    let inner_parts = convex_parts(inner);
    let within_one = |x: &SimplePolygon| {
        let (bx, fx) = (x.bbox(), x.to_f64());
        outer_parts.iter().any(|o| o.bbox().contains_box(&bx) && convex_within(x.vertices(), &fx, o.vertices(), &o.to_f64()))
    };
    inner_parts.iter().all(within_one) || parts_intersection_area(&inner_parts, outer_parts) == inner.area()
}

/// True when every point of `inner` is on the closed left side of every edge of the convex `outer`.
fn convex_within(inner: &[Point2], finner: &[FPoint], outer: &[Point2], fouter: &[FPoint]) -> bool {
    (0..outer.len()).all(|i| {
        let j = (i + 1) % outer.len();
        inner.iter().zip(finner).all(|w| orient_sign_filtered((&outer[i], &fouter[i]), (&outer[j], &fouter[j]), w) != Ordering::Less)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, ratio};
    use proptest::prelude::*;

    fn poly(c: &[(i64, i64)]) -> SimplePolygon {
        SimplePolygon::from_ints(c).unwrap()
    }

    fn shifted_square(dx: Rational, dy: Rational) -> SimplePolygon {
        SimplePolygon::rectangle(dx.clone(), dy.clone(), dx + rat(1), dy + rat(1)).unwrap()
    }

    #[test]
    fn clip_examples() {
        let sq = SimplePolygon::unit_square();
        assert_eq!(convex_clip(&sq, &sq).unwrap().unwrap().area(), rat(1));
        assert_eq!(convex_clip(&sq, &shifted_square(rat(3), rat(0))).unwrap(), None);
        let half = convex_clip(&sq, &shifted_square(ratio(1, 2), rat(0))).unwrap().unwrap();
        assert_eq!(half.area(), ratio(1, 2));
        // edge contact only
        assert_eq!(convex_clip(&sq, &shifted_square(rat(1), rat(0))).unwrap(), None);
        let l = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        assert_eq!(convex_clip(&l, &sq), Err(GeomError::NotConvex));
    }

    #[test]
    fn overlap_examples() {
        let a = poly(&[(0, 0), (1, 0), (0, 1)]);
        let b = poly(&[(1, 0), (1, 1), (0, 1)]);
        assert!(!interiors_overlap(&a, &b));
        assert!(interiors_overlap(&a, &a));
        let sq = SimplePolygon::unit_square();
        assert!(interiors_overlap(&sq, &shifted_square(ratio(1, 2), ratio(1, 2))));
        // a vertex touching only
        assert!(!interiors_overlap(&sq, &shifted_square(rat(1), rat(1))));
        // non-convex: a square sitting in the notch of an L does not overlap it
        let l = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        assert!(!interiors_overlap(&l, &shifted_square(rat(1), rat(1))));
        assert!(interiors_overlap(&l, &shifted_square(ratio(1, 2), ratio(1, 2))));
    }

    #[test]
    fn containment_examples() {
        let sq = SimplePolygon::unit_square();
        assert!(polygon_contains(&sq, &poly(&[(0, 0), (1, 0), (0, 1)])));
        assert!(!polygon_contains(&sq, &poly(&[(0, 0), (2, 0), (0, 1)])));
        assert!(polygon_contains(&sq, &sq));
        // triangle spanning the notch of an L through its reflex corner
        let l = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        assert!(!polygon_contains(&l, &poly(&[(0, 1), (2, 1), (1, 2)])));
        assert!(polygon_contains(&l, &poly(&[(0, 0), (2, 0), (0, 2)])));
        assert!(!polygon_contains(&l, &poly(&[(1, 0), (2, 0), (2, 2)])));
    }

    fn convex_quad() -> impl Strategy<Value = SimplePolygon> {
        (0i64..8, 0i64..8, 1i64..8, 1i64..8).prop_map(|(x, y, w, h)| {
            SimplePolygon::new(vec![
                Point2::from_ints(x, y),
                Point2::from_ints(x + w, y),
                Point2::from_ints(x + w + 1, y + h),
                Point2::from_ints(x, y + h + 1),
            ])
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn clip_area_bounded_and_commutative(a in convex_quad(), b in convex_quad()) {
            let ab = convex_clip(&a, &b).unwrap().map(|p| p.area()).unwrap_or_default();
            let ba = convex_clip(&b, &a).unwrap().map(|p| p.area()).unwrap_or_default();
            prop_assert_eq!(&ab, &ba);
            prop_assert!(ab <= a.area() && ab <= b.area());
        }
    }
}
