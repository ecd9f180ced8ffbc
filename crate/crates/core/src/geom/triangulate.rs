use num_traits::Signed;

use super::{orient, GeomError, Point2, SimplePolygon};

/// Point in the closed triangle `abc` (counterclockwise).
fn in_closed_triangle(a: &Point2, b: &Point2, c: &Point2, p: &Point2) -> bool {
    !orient(a, b, p).is_negative() && !orient(b, c, p).is_negative() && !orient(c, a, p).is_negative()
}

/// Ear-clipping triangulation using only the polygon's own vertices.
///
/// Returns `len - 2` counterclockwise triangles that tile the polygon.
pub fn triangulate_simple(p: &SimplePolygon) -> Result<Vec<SimplePolygon>, GeomError> {
    let pts = p.vertices();
    let n = pts.len();
    if n == 3 {
        return Ok(vec![p.clone()]);
    }
    let mut ring: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n - 2);
    let mut start = 0;
    while ring.len() > 3 {
        let m = ring.len();
        let convex = |k: usize| {
            let (a, b, c) = (&pts[ring[(k + m - 1) % m]], &pts[ring[k]], &pts[ring[(k + 1) % m]]);
            orient(a, b, c).is_positive()
        };
        // Only non-convex vertices can sit inside a candidate ear.
        let blockers: Vec<usize> = (0..m).filter(|&k| !convex(k)).map(|k| ring[k]).collect();
        let ear = (0..m).map(|off| (start + off) % m).find(|&k| {
            if !convex(k) {
                return false;
            }
            let (ia, ib, ic) = (ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]);
            blockers
                .iter()
                .filter(|&&v| v != ia && v != ib && v != ic)
                .all(|&v| !in_closed_triangle(&pts[ia], &pts[ib], &pts[ic], &pts[v]))
        });
        let Some(k) = ear else {
            return Err(GeomError::InvalidPolygon("no ear found".into()));
        };
        let (ia, ib, ic) = (ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]);
        out.push(SimplePolygon::new_unchecked(vec![pts[ia].clone(), pts[ib].clone(), pts[ic].clone()]));
        ring.remove(k);
        start = if k == 0 { 0 } else { k - 1 };
    }
    let last: Vec<Point2> = ring.iter().map(|&i| pts[i].clone()).collect();
    if !orient(&last[0], &last[1], &last[2]).is_positive() {
        return Err(GeomError::InvalidPolygon("degenerate final triangle".into()));
    }
    out.push(SimplePolygon::new_unchecked(last));
    Ok(out)
}
