use num_traits::{Signed, Zero};

use super::{orient, rat, segments_intersect, Coord, FPoint, GeomError, Point2, Rational, RigidMotion};

/// Twice-free shoelace area; positive for counterclockwise vertex order.
pub fn signed_area<T: Coord>(pts: &[Point2<T>]) -> T {
    let n = pts.len();
    if n < 3 {
        return T::zero();
    }
    let mut twice = T::zero();
    for i in 0..n {
        twice = twice + pts[i].cross(&pts[(i + 1) % n]);
    }
    twice / (T::one() + T::one())
}

/// Axis-aligned bounding box.
#[derive(Clone, Debug, PartialEq)]
pub struct BBox<T = Rational> {
    pub min: Point2<T>,
    pub max: Point2<T>,
}

impl<T: Coord> BBox<T> {
    pub fn of(pts: &[Point2<T>]) -> Self {
        let mut min = pts[0].clone();
        let mut max = pts[0].clone();
        for p in &pts[1..] {
            if p.x < min.x {
                min.x = p.x.clone();
            }
            if p.y < min.y {
                min.y = p.y.clone();
            }
            if p.x > max.x {
                max.x = p.x.clone();
            }
            if p.y > max.y {
                max.y = p.y.clone();
            }
        }
        BBox { min, max }
    }

    /// True when the boxes share a region of positive area.
    pub fn overlaps_open(&self, o: &Self) -> bool {
        self.min.x < o.max.x && o.min.x < self.max.x && self.min.y < o.max.y && o.min.y < self.max.y
    }

    pub fn contains_box(&self, o: &Self) -> bool {
        self.min.x <= o.min.x && self.min.y <= o.min.y && o.max.x <= self.max.x && o.max.y <= self.max.y
    }

    pub fn union(&self, o: &Self) -> Self {
        let pick_min = |a: &T, b: &T| if a <= b { a.clone() } else { b.clone() };
        let pick_max = |a: &T, b: &T| if a >= b { a.clone() } else { b.clone() };
        BBox {
            min: Point2::new(pick_min(&self.min.x, &o.min.x), pick_min(&self.min.y, &o.min.y)),
            max: Point2::new(pick_max(&self.max.x, &o.max.x), pick_max(&self.max.y, &o.max.y)),
        }
    }
}

/// A simple polygon with exact vertices, stored counterclockwise with no
/// repeated or collinear consecutive vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplePolygon {
    vertices: Vec<Point2>,
}

/// Drops repeated vertices and straight-angle vertices until none remain.
fn normalize(mut v: Vec<Point2>) -> Vec<Point2> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let drop = (0..n).find(|&i| {
            let prev = &v[(i + n - 1) % n];
            let next = &v[(i + 1) % n];
            v[i] == *next || orient(prev, &v[i], next).is_zero()
        });
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

fn check_simple(v: &[Point2]) -> Result<(), GeomError> {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if segments_intersect(&v[i], &v[(i + 1) % n], &v[j], &v[(j + 1) % n]) {
                return Err(GeomError::SelfIntersecting(i, j));
            }
        }
    }
    Ok(())
}

/// Index pairs `(i, j)` with `i < j` whose boxes share positive area, sorted.
pub fn overlapping_box_pairs<T: Coord>(boxes: &[BBox<T>]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&a, &b| boxes[a].min.x.partial_cmp(&boxes[b].min.x).unwrap_or(std::cmp::Ordering::Equal));
    let mut out = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if boxes[j].min.x >= boxes[i].max.x {
                break;
            }
            if boxes[i].overlaps_open(&boxes[j]) {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Pairs `(i, j)` with `a[i]` and `b[j]` sharing positive area, sorted.
pub fn overlapping_box_pairs_between<T: Coord>(a: &[BBox<T>], b: &[BBox<T>]) -> Vec<(usize, usize)> {
    let all: Vec<BBox<T>> = a.iter().chain(b).cloned().collect();
    let n = a.len();
    let mut out: Vec<(usize, usize)> = overlapping_box_pairs(&all)
        .into_iter()
        .filter(|&(i, j)| i < n && j >= n)
        .map(|(i, j)| (i, j - n))
        .collect();
    out.sort_unstable();
    out
}

impl SimplePolygon {
    /// Normalizes the vertex list (duplicates and collinear vertices removed,
    /// clockwise input reversed) and checks simplicity.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeomError> {
        let mut v = normalize(vertices);
        if v.len() < 3 {
            return Err(GeomError::TooFewVertices);
        }
        check_simple(&v)?;
        let area = signed_area(&v);
        if area.is_zero() {
            return Err(GeomError::TooFewVertices);
        }
        if area.is_negative() {
            v.reverse();
            // keep the first vertex first
            v.rotate_right(1);
        }
        Ok(SimplePolygon { vertices: v })
    }

    /// Like [`SimplePolygon::new`] but refuses any input that normalization
    /// would change.
    pub fn from_normalized(vertices: Vec<Point2>) -> Result<Self, GeomError> {
        let n = vertices.len();
        let p = SimplePolygon::new(vertices.clone())?;
        if p.vertices.len() != n {
            return Err(GeomError::NotNormalized("repeated or collinear vertices"));
        }
        if p.vertices != vertices {
            return Err(GeomError::NotNormalized("vertices must be counterclockwise"));
        }
        Ok(p)
    }

    /// Caller guarantees the list is already normalized, counterclockwise and simple.
    pub(crate) fn new_unchecked(vertices: Vec<Point2>) -> Self {
        debug_assert!(vertices.len() >= 3);
        SimplePolygon { vertices }
    }

    /// Builds a convex polygon from a possibly degenerate vertex list, or
    /// `None` when nothing of positive area is left.
    pub(crate) fn from_convex_raw(vertices: Vec<Point2>) -> Option<Self> {
        let v = normalize(vertices);
        if v.len() < 3 || !signed_area(&v).is_positive() {
            return None;
        }
        Some(SimplePolygon { vertices: v })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeomError> {
        SimplePolygon::new(coords.iter().map(|&(x, y)| Point2::from_ints(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> Rational {
        signed_area(&self.vertices)
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| orient(&self.vertices[i], &self.vertices[(i + 1) % n], &self.vertices[(i + 2) % n]).is_positive())
    }

    pub fn bbox(&self) -> BBox {
        BBox::of(&self.vertices)
    }

    pub fn to_f64(&self) -> Vec<FPoint> {
        self.vertices.iter().map(Point2::to_f64).collect()
    }

    /// Image under a proper motion, not re-validated.
    pub fn transformed(&self, m: &RigidMotion) -> SimplePolygon {
        debug_assert!(m.is_proper());
        SimplePolygon { vertices: self.vertices.iter().map(|p| m.apply(p)).collect() }
    }

    /// Same region, listed starting from a different vertex.
    pub fn same_region_as(&self, o: &SimplePolygon) -> bool {
        let n = self.vertices.len();
        n == o.vertices.len()
            && (0..n).any(|s| (0..n).all(|i| self.vertices[(i + s) % n] == o.vertices[i]))
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Result<Self, GeomError> {
        SimplePolygon::new(vec![
            Point2::new(x0.clone(), y0.clone()),
            Point2::new(x1.clone(), y0),
            Point2::new(x1, y1.clone()),
            Point2::new(x0, y1),
        ])
    }

    pub fn unit_square() -> Self {
        SimplePolygon::rectangle(rat(0), rat(0), rat(1), rat(1)).expect("unit square")
    }
}

pub fn polygon_area(p: &SimplePolygon) -> Rational {
    p.area()
}
