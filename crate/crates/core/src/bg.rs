//! Unhinged equidecomposition of equal-area polygons.
//!
//! `polygon_to_canonical_chart` maps a polygon onto the `w × H` rectangle via
//! `triangulate_simple`, `triangle_to_rectangle`, `rectangle_to_width` and
//! `stack_rectangles`. `mutual_chart` charts both polygons at one width and
//! combines them with `overlay_charts`.
//!
//! All cuts and motions are rational. Oblique rectangles become axis-aligned
//! through two cut-and-translate shears; no rotation other than quarter and
//! half turns is used.

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::figure::{AreaValue, Check, Failure, VerifyReport};
use crate::geom::clip::{clip_convex_pair, convex_interiors_meet, convex_parts, parts_contain};
use crate::geom::{
    clip_area_f64, format_rational, orient, overlapping_box_pairs, overlapping_box_pairs_between,
    rat, signed_area, to_f64, triangulate_simple, BBox, FPoint, FloatMotion, GeomError, Point2,
    Rational, RigidMotion, SimplePolygon,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BgError {
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("width must be positive, got {0}")]
    BadWidth(String),
    #[error("rectangles have different widths")]
    WidthMismatch,
    #[error("rectangle is not axis-aligned")]
    NotAxisAligned,
    #[error("not a rectangle: {0}")]
    NotRectangle(&'static str),
    #[error("nothing to stack")]
    Empty,
    #[error("charts have different target rectangles")]
    TargetMismatch,
    #[error("areas differ: {0} vs {1}")]
    AreaMismatch(String, String),
    #[error("chart lacks exact target motions")]
    InexactChart,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A rectangle given by its corners in counterclockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct RectangleForm {
    pub corners: [Point2; 4],
    /// Squared length of `corners[1] - corners[0]`.
    pub width_sq: Rational,
    /// Squared length of `corners[3] - corners[0]`.
    pub height_sq: Rational,
}

impl RectangleForm {
    pub fn new(corners: [Point2; 4]) -> Result<Self, BgError> {
        let p = corners[1].sub(&corners[0]);
        let q = corners[3].sub(&corners[0]);
        if corners[2] != corners[1].add(&q) {
            return Err(BgError::NotRectangle("opposite sides differ"));
        }
        if !p.dot(&q).is_zero() {
            return Err(BgError::NotRectangle("sides are not perpendicular"));
        }
        if !p.cross(&q).is_positive() {
            return Err(BgError::NotRectangle("corners must be counterclockwise with positive area"));
        }
        Ok(RectangleForm { width_sq: p.norm_sq(), height_sq: q.norm_sq(), corners })
    }

    /// `[0, w] × [0, h]`.
    pub fn axis_aligned(w: Rational, h: Rational) -> Result<Self, BgError> {
        let o = Point2::origin();
        RectangleForm::new([o, Point2::new(w.clone(), rat(0)), Point2::new(w, h.clone()), Point2::new(rat(0), h)])
    }

    /// Recognizes a four-vertex polygon that is a rectangle.
    pub fn from_polygon(p: &SimplePolygon) -> Option<Self> {
        let v = p.vertices();
        if v.len() != 4 {
            return None;
        }
        RectangleForm::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]).ok()
    }

    pub fn area(&self) -> Rational {
        self.side_p().cross(&self.side_q())
    }

    pub fn polygon(&self) -> SimplePolygon {
        SimplePolygon::new(self.corners.to_vec()).expect("rectangles are simple")
    }

    pub fn is_axis_aligned(&self) -> bool {
        let p = self.side_p();
        p.x.is_zero() || p.y.is_zero()
    }

    /// Lower-left corner and extents, for axis-aligned rectangles.
    fn axis_extent(&self) -> Option<(Point2, Rational, Rational)> {
        if !self.is_axis_aligned() {
            return None;
        }
        let b = BBox::of(&self.corners);
        let (w, h) = (b.max.x.clone() - &b.min.x, b.max.y.clone() - &b.min.y);
        Some((b.min, w, h))
    }

    fn side_p(&self) -> Point2 {
        self.corners[1].sub(&self.corners[0])
    }

    fn side_q(&self) -> Point2 {
        self.corners[3].sub(&self.corners[0])
    }
}

/// Pieces of some region, each with a motion placing it into a rectangle.
#[derive(Clone, Debug, PartialEq)]
pub struct RectangleDissection {
    pub pieces: Vec<SimplePolygon>,
    pub motions: Vec<RigidMotion>,
    pub rect: RectangleForm,
}

type Parts = Vec<(SimplePolygon, RigidMotion)>;

/// Pushes every part through a stage: part `(s, m)` and region `(r, n)` give
/// the fragment of `s` that `m` sends into `r`, with motion `n ∘ m`.
fn refine(parts: Parts, stage: &[(SimplePolygon, RigidMotion)]) -> Parts {
    if let [(_, n)] = stage {
        return parts.into_iter().map(|(s, m)| (s, n.compose(&m))).collect();
    }
    let mut out = Vec::new();
    for (s, m) in parts {
        let placed = s.transformed(&m);
        let back = m.inverse();
        for (r, n) in stage {
            if let Some(f) = clip_convex_pair(&placed, r) {
                out.push((f.transformed(&back), n.compose(&m)));
            }
        }
    }
    out
}

fn parallelogram(o: &Point2, p: &Point2, q: &Point2) -> SimplePolygon {
    let a = o.add(p);
    SimplePolygon::new(vec![o.clone(), a.clone(), a.add(q), o.add(q)]).expect("nondegenerate parallelogram")
}

fn axis_rect(x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational) -> SimplePolygon {
    SimplePolygon::rectangle(x0.clone(), y0.clone(), x1.clone(), y1.clone()).expect("nondegenerate rectangle")
}

fn translate(x: Rational, y: Rational) -> RigidMotion {
    RigidMotion::translation(Point2::new(x, y))
}

fn half(r: &Rational) -> Rational {
    r / rat(2)
}

/// Cuts a triangle into at most three pieces that reassemble into a rectangle
/// on one of its sides, at half the height.
///
/// The base is the first side (in counterclockwise order from the first
/// vertex) whose altitude foot lies strictly inside it.
pub fn triangle_to_rectangle(t: &[Point2; 3]) -> Result<RectangleDissection, BgError> {
    let mut v = t.clone();
    let o = orient(&v[0], &v[1], &v[2]);
    if o.is_zero() {
        return Err(BgError::DegenerateTriangle);
    }
    if o.is_negative() {
        v.swap(1, 2);
    }
    let (a, b, c) = (0..3)
        .map(|i| (v[i].clone(), v[(i + 1) % 3].clone(), v[(i + 2) % 3].clone()))
        .find(|(a, b, c)| {
            let ab = b.sub(a);
            let t = c.sub(a).dot(&ab) / ab.norm_sq();
            t.is_positive() && t < rat(1)
        })
        .expect("the longest side has an interior altitude foot");
    let ab = b.sub(&a);
    let foot = a.add(&ab.scale(&(c.sub(&a).dot(&ab) / ab.norm_sq())));
    let m1 = a.midpoint(&c);
    let m2 = b.midpoint(&c);
    let g = c.midpoint(&foot);
    let offset = c.sub(&foot).scale(&half(&rat(1)));
    let pieces = vec![
        SimplePolygon::new(vec![a.clone(), b.clone(), m2.clone(), m1.clone()])?,
        SimplePolygon::new(vec![m1.clone(), g.clone(), c.clone()])?,
        SimplePolygon::new(vec![g, m2.clone(), c])?,
    ];
    let motions = vec![RigidMotion::identity(), RigidMotion::half_turn_about(&m1), RigidMotion::half_turn_about(&m2)];
    let rect = RectangleForm::new([a.clone(), b.clone(), b.add(&offset), a.add(&offset)])?;
    Ok(RectangleDissection { pieces, motions, rect })
}

/// Stages taking an oblique rectangle to an axis-aligned one at the origin.
fn oblique_stages(r: &RectangleForm) -> Vec<Parts> {
    let mut stages = Vec::new();
    let mut o = r.corners[0].clone();
    let mut p = r.side_p();
    let mut q = r.side_q();
    // bring the aspect ratio near 1 by cutting the long side into strips
    let rho = to_f64(&(q.norm_sq() / p.norm_sq())).sqrt();
    let m = rho.max(1.0 / rho).sqrt().round() as i64;
    if m > 1 {
        let mr = rat(m);
        let (long, short) = if rho > 1.0 { (q.clone(), p.clone()) } else { (p.clone(), q.clone()) };
        let piece = long.scale(&(rat(1) / &mr));
        let mut regions = Vec::new();
        for i in 0..m {
            let start = o.add(&piece.scale(&rat(i)));
            let region = if rho > 1.0 { parallelogram(&start, &short, &piece) } else { parallelogram(&start, &piece, &short) };
            regions.push((region, RigidMotion::translation(short.sub(&piece).scale(&rat(i)))));
        }
        stages.push(regions);
        if rho > 1.0 {
            p = p.scale(&mr);
            q = piece;
        } else {
            q = q.scale(&mr);
            p = piece;
        }
    }
    // start from a corner whose outgoing side is the more horizontal one
    if p.x.abs() < p.y.abs() {
        o = o.add(&p);
        let next = q.clone();
        q = p.neg();
        p = next;
    }
    let shear = |o: &Point2, fixed: &Point2, from: &Point2, to: &Point2, fixed_first: bool| -> Parts {
        // `from` and `to` differ by k·fixed; tile the band along `fixed`
        let span = if fixed_first { parallelogram(o, fixed, from) } else { parallelogram(o, from, fixed) };
        let k = (to.sub(from).norm_sq() / fixed.norm_sq()).to_f64().unwrap_or(0.0).sqrt();
        let reach = k.ceil() as i64 + 1;
        let mut regions = Vec::new();
        for m in -reach..=reach {
            let shift = fixed.scale(&rat(m));
            let corner = o.sub(&shift);
            let cell = if fixed_first { parallelogram(&corner, fixed, to) } else { parallelogram(&corner, to, fixed) };
            if let Some(f) = clip_convex_pair(&span, &cell) {
                regions.push((f, RigidMotion::translation(shift)));
            }
        }
        regions
    };
    if !q.x.is_zero() {
        let k = -(q.x.clone() / &p.x);
        let q2 = q.add(&p.scale(&k));
        stages.push(shear(&o, &p, &q, &q2, true));
        q = q2;
    }
    if !p.y.is_zero() {
        let j = -(p.y.clone() / &q.y);
        let p2 = p.add(&q.scale(&j));
        stages.push(shear(&o, &q, &p, &p2, false));
        p = p2;
    }
    let b = BBox::of(&[o.clone(), o.add(&p), o.add(&p).add(&q), o.add(&q)]);
    if !b.min.x.is_zero() || !b.min.y.is_zero() {
        stages.push(vec![(parallelogram(&o, &p, &q), RigidMotion::translation(b.min.neg()))]);
    }
    stages
}

/// Strip count for bringing side `a` into `[w, 2w)`, and the resulting side.
fn strip_plan(a: &Rational, w: &Rational) -> (i64, Rational) {
    let two_w = w * rat(2);
    if a >= &two_w {
        let m = (a / w).floor().to_integer().to_i64().expect("strip count fits");
        (m, a / rat(m))
    } else if a < w {
        let m = (w / a).ceil().to_integer().to_i64().expect("strip count fits");
        (m, a * rat(m))
    } else {
        (1, a.clone())
    }
}

fn piece_estimate(a: &Rational, w: &Rational) -> i64 {
    let (m, side) = strip_plan(a, w);
    if &side == w {
        m
    } else {
        3 * m
    }
}

/// Stages taking `[0, a] × [0, b]` to `[0, w] × [0, ab/w]`.
fn axis_stages(mut a: Rational, mut b: Rational, w: &Rational) -> Vec<Parts> {
    let zero = rat(0);
    let mut stages = Vec::new();
    if piece_estimate(&b, w) < piece_estimate(&a, w) {
        let turn = translate(b.clone(), rat(0)).compose(&RigidMotion::quarter_turns(1));
        stages.push(vec![(axis_rect(&zero, &zero, &a, &b), turn)]);
        std::mem::swap(&mut a, &mut b);
    }
    let (m, side) = strip_plan(&a, w);
    if m > 1 {
        let mut regions = Vec::new();
        if side < a {
            // vertical strips stacked upward
            for i in 0..m {
                let (x0, x1) = (side.clone() * rat(i), side.clone() * rat(i + 1));
                regions.push((axis_rect(&x0, &zero, &x1, &b), translate(-x0.clone(), b.clone() * rat(i))));
            }
            b *= rat(m);
        } else {
            // horizontal strips laid side by side
            let t = b.clone() / rat(m);
            for i in 0..m {
                let (y0, y1) = (t.clone() * rat(i), t.clone() * rat(i + 1));
                regions.push((axis_rect(&zero, &y0, &a, &y1), translate(a.clone() * rat(i), -y0.clone())));
            }
            b = t;
        }
        stages.push(regions);
        a = side;
    }
    if &a > w {
        // slide along the diagonal from (0, H) to (a, 0)
        let h = a.clone() * &b / w;
        let e = Point2::new(a.clone() - w, b.clone());
        let f = Point2::new(w.clone(), h.clone() - &b);
        let pt = |x: &Rational, y: &Rational| Point2::new(x.clone(), y.clone());
        let poly = |v: Vec<Point2>| SimplePolygon::new(v).expect("slide piece");
        stages.push(vec![
            (poly(vec![pt(&zero, &zero), pt(w, &zero), f.clone(), e.clone(), pt(&zero, &b)]), RigidMotion::identity()),
            (poly(vec![e, pt(&a, &zero), pt(&a, &b)]), translate(w.clone() - &a, h - &b)),
            (poly(vec![pt(w, &zero), pt(&a, &zero), f]), translate(-w.clone(), b.clone())),
        ]);
    }
    stages
}

/// Dissects a rectangle into pieces that assemble into `[0, w] × [0, area/w]`.
pub fn rectangle_to_width(r: &RectangleForm, w: &Rational) -> Result<RectangleDissection, BgError> {
    if !w.is_positive() {
        return Err(BgError::BadWidth(format_rational(w)));
    }
    let mut stages = Vec::new();
    let (a, b) = match r.axis_extent() {
        Some((min, a, b)) => {
            if !min.x.is_zero() || !min.y.is_zero() {
                stages.push(vec![(r.polygon(), RigidMotion::translation(min.neg()))]);
            }
            (a, b)
        }
        None => {
            stages.extend(oblique_stages(r));
            let last = stages.last().expect("oblique rectangles need at least one stage");
            let mut bbox: Option<BBox> = None;
            for (s, m) in last {
                let pb = s.transformed(m).bbox();
                bbox = Some(match bbox {
                    Some(b) => b.union(&pb),
                    None => pb,
                });
            }
            let bb = bbox.expect("nonempty stage");
            (bb.max.x - bb.min.x, bb.max.y - bb.min.y)
        }
    };
    let height = r.area() / w;
    stages.extend(axis_stages(a, b, w));
    let mut parts: Parts = vec![(r.polygon(), RigidMotion::identity())];
    for s in &stages {
        parts = refine(parts, s);
    }
    let (pieces, motions) = parts.into_iter().unzip();
    Ok(RectangleDissection { pieces, motions, rect: RectangleForm::axis_aligned(w.clone(), height)? })
}

/// Translations stacking axis-aligned rectangles of equal width from `y = 0`
/// upward in input order, and the combined rectangle.
pub fn stack_rectangles(rects: &[RectangleForm]) -> Result<(Vec<RigidMotion>, RectangleForm), BgError> {
    let first = rects.first().ok_or(BgError::Empty)?;
    let (_, w, _) = first.axis_extent().ok_or(BgError::NotAxisAligned)?;
    let mut y = rat(0);
    let mut motions = Vec::with_capacity(rects.len());
    for r in rects {
        let (min, rw, rh) = r.axis_extent().ok_or(BgError::NotAxisAligned)?;
        if rw != w {
            return Err(BgError::WidthMismatch);
        }
        motions.push(translate(-min.x, y.clone() - min.y));
        y += rh;
    }
    Ok((motions, RectangleForm::axis_aligned(w, y)?))
}

/// A target-side motion: angle and translation in floating point, plus the
/// exact motion when known.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartMotion {
    pub angle_rad: f64,
    pub tx: f64,
    pub ty: f64,
    pub exact: Option<RigidMotion>,
}

impl ChartMotion {
    pub fn from_exact(m: RigidMotion) -> Self {
        let f = m.to_float();
        ChartMotion { angle_rad: f.angle(), tx: f.tx, ty: f.ty, exact: Some(m) }
    }

    pub fn to_float(&self) -> FloatMotion {
        FloatMotion::from_angle(self.angle_rad, self.tx, self.ty)
    }
}

/// A dissection of `source` whose pieces, moved by `target_motions`, tile `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct DissectionChart {
    pub source: SimplePolygon,
    pub target: SimplePolygon,
    /// Pieces in source coordinates.
    pub pieces: Vec<SimplePolygon>,
    /// Placement of each piece in the source; identity by convention.
    pub source_motions: Vec<RigidMotion>,
    pub target_motions: Vec<ChartMotion>,
}

impl DissectionChart {
    pub fn new(source: SimplePolygon, target: SimplePolygon, pieces: Vec<SimplePolygon>, motions: Vec<RigidMotion>) -> Self {
        DissectionChart {
            source,
            target,
            source_motions: vec![RigidMotion::identity(); pieces.len()],
            target_motions: motions.into_iter().map(ChartMotion::from_exact).collect(),
            pieces,
        }
    }

    /// Exact target motions, if every piece has one.
    pub fn exact_target_motions(&self) -> Option<Vec<RigidMotion>> {
        self.target_motions.iter().map(|m| m.exact.clone()).collect()
    }
}

/// Dissects `p` into pieces that tile `[0, w] × [0, area/w]`.
pub fn polygon_to_canonical_chart(p: &SimplePolygon, w: &Rational) -> Result<DissectionChart, BgError> {
    if !w.is_positive() {
        return Err(BgError::BadWidth(format_rational(w)));
    }
    let mut groups: Vec<(Parts, RectangleForm)> = Vec::new();
    if let Some(r) = RectangleForm::from_polygon(p) {
        let d = rectangle_to_width(&r, w)?;
        groups.push((d.pieces.into_iter().zip(d.motions).collect(), d.rect));
    } else {
        for t in triangulate_simple(p)? {
            let v = t.vertices();
            let tr = triangle_to_rectangle(&[v[0].clone(), v[1].clone(), v[2].clone()])?;
            let wr = rectangle_to_width(&tr.rect, w)?;
            let stage: Parts = wr.pieces.into_iter().zip(wr.motions).collect();
            groups.push((refine(tr.pieces.into_iter().zip(tr.motions).collect(), &stage), wr.rect));
        }
    }
    let rects: Vec<RectangleForm> = groups.iter().map(|(_, r)| r.clone()).collect();
    let (stack, total) = stack_rectangles(&rects)?;
    let mut pieces = Vec::new();
    let mut motions = Vec::new();
    for ((parts, _), s) in groups.into_iter().zip(&stack) {
        for (piece, m) in parts {
            pieces.push(piece);
            motions.push(s.compose(&m));
        }
    }
    Ok(DissectionChart::new(p.clone(), total.polygon(), pieces, motions))
}

/// Overlays two charts onto the same rectangle, giving a chart from
/// `ca.source` directly to `cb.source`.
pub fn overlay_charts(ca: &DissectionChart, cb: &DissectionChart) -> Result<DissectionChart, BgError> {
    if !ca.target.same_region_as(&cb.target) {
        return Err(BgError::TargetMismatch);
    }
    let ma = ca.exact_target_motions().ok_or(BgError::InexactChart)?;
    let mb = cb.exact_target_motions().ok_or(BgError::InexactChart)?;
    let placed_a: Vec<SimplePolygon> = ca.pieces.iter().zip(&ma).map(|(p, m)| p.transformed(m)).collect();
    let placed_b: Vec<SimplePolygon> = cb.pieces.iter().zip(&mb).map(|(p, m)| p.transformed(m)).collect();
    let boxes_a: Vec<BBox> = placed_a.iter().map(SimplePolygon::bbox).collect();
    let boxes_b: Vec<BBox> = placed_b.iter().map(SimplePolygon::bbox).collect();
    let mut pieces = Vec::new();
    let mut motions = Vec::new();
    let inv_a: Vec<RigidMotion> = ma.iter().map(RigidMotion::inverse).collect();
    let inv_b: Vec<RigidMotion> = mb.iter().map(RigidMotion::inverse).collect();
    for (i, j) in overlapping_box_pairs_between(&boxes_a, &boxes_b) {
        let parts_a = convex_parts(&placed_a[i]);
        let parts_b = convex_parts(&placed_b[j]);
        for x in &parts_a {
            for y in &parts_b {
                if let Some(f) = clip_convex_pair(x, y) {
                    pieces.push(f.transformed(&inv_a[i]));
                    motions.push(inv_b[j].compose(&ma[i]));
                }
            }
        }
    }
    log::debug!("overlay: {} x {} pieces -> {} fragments", ca.pieces.len(), cb.pieces.len(), pieces.len());
    Ok(DissectionChart::new(ca.source.clone(), cb.source.clone(), pieces, motions))
}

/// Mutual dissection between two polygons of equal area via width `w`.
pub fn mutual_chart(a: &SimplePolygon, b: &SimplePolygon, w: &Rational) -> Result<DissectionChart, BgError> {
    if a.area() != b.area() {
        return Err(BgError::AreaMismatch(format_rational(&a.area()), format_rational(&b.area())));
    }
    overlay_charts(&polygon_to_canonical_chart(a, w)?, &polygon_to_canonical_chart(b, w)?)
}

fn fail(check: Check, detail: String) -> Failure {
    Failure { check, detail }
}

/// Checks that the pieces partition the source exactly and that their placed
/// images tile the target within `tolerance` relative to its area.
pub fn verify_chart(c: &DissectionChart, tolerance: f64) -> VerifyReport {
    let mut failures = Vec::new();
    let n = c.pieces.len();
    if c.target_motions.len() != n || c.source_motions.len() != n {
        failures.push(fail(
            Check::ProperMotion,
            format!("{n} pieces, {} source and {} target motions", c.source_motions.len(), c.target_motions.len()),
        ));
        return VerifyReport::new(failures, AreaValue::Exact(rat(0)));
    }

    // source side, exact
    for (i, m) in c.source_motions.iter().enumerate() {
        if !m.is_proper() {
            failures.push(fail(Check::ProperMotion, format!("source motion {i} is not a rotation")));
        }
    }
    let placed: Vec<SimplePolygon> = c.pieces.iter().zip(&c.source_motions).map(|(p, m)| p.transformed(m)).collect();
    let boxes: Vec<BBox> = placed.iter().map(SimplePolygon::bbox).collect();
    let placed_parts: Vec<Vec<SimplePolygon>> = placed.iter().map(convex_parts).collect();
    for (i, j) in overlapping_box_pairs(&boxes) {
        if placed_parts[i].iter().any(|x| placed_parts[j].iter().any(|y| convex_interiors_meet(x, y))) {
            failures.push(fail(Check::PairwiseDisjoint, format!("source pieces {i} and {j} overlap")));
        }
    }
    let (source_box, source_parts) = (c.source.bbox(), convex_parts(&c.source));
    for (i, p) in placed.iter().enumerate() {
        if !parts_contain(&source_box, &source_parts, p) {
            failures.push(fail(Check::Containment, format!("source piece {i} leaves the source polygon")));
        }
    }
    let total: Rational = placed.iter().map(SimplePolygon::area).sum();
    let source_area = c.source.area();
    if total != source_area {
        failures.push(fail(
            Check::AreaCoverage,
            format!("source pieces cover {} of {}", format_rational(&total), format_rational(&source_area)),
        ));
    }

    // target side, within tolerance
    let target_area = to_f64(&c.target.area());
    let slack = tolerance * target_area;
    let floats: Vec<FloatMotion> = c.target_motions.iter().map(ChartMotion::to_float).collect();
    for (i, (m, f)) in c.target_motions.iter().zip(&floats).enumerate() {
        if let Some(e) = &m.exact {
            if !e.is_proper() {
                failures.push(fail(Check::ProperMotion, format!("target motion {i} is not a rotation")));
            }
            let g = e.to_float();
            let scale = 1.0 + g.tx.abs().max(g.ty.abs());
            let gap = (g.cos - f.cos).abs().max((g.sin - f.sin).abs()).max((g.tx - f.tx).abs().max((g.ty - f.ty).abs()) / scale);
            if gap > tolerance {
                failures.push(fail(Check::ProperMotion, format!("target motion {i} disagrees with its exact form by {gap:e}")));
            }
        }
    }
    let place = |p: &SimplePolygon, m: &FloatMotion| -> Vec<FPoint> { p.to_f64().iter().map(|q| m.apply(q)).collect() };
    let parts: Vec<Vec<Vec<FPoint>>> =
        c.pieces.iter().zip(&floats).map(|(p, m)| convex_parts(p).iter().map(|q| place(q, m)).collect()).collect();
    let target_parts: Vec<Vec<FPoint>> = convex_parts(&c.target).iter().map(SimplePolygon::to_f64).collect();
    let fboxes: Vec<BBox<f64>> = parts.iter().map(|ps| BBox::of(&ps.concat())).collect();
    for (i, j) in overlapping_box_pairs(&fboxes) {
        let shared: f64 = parts[i].iter().flat_map(|a| parts[j].iter().map(move |b| clip_area_f64(a, b))).sum();
        if shared > slack {
            failures.push(fail(Check::PairwiseDisjoint, format!("placed pieces {i} and {j} overlap by {shared:e}")));
        }
    }
    let target_boxes: Vec<BBox<f64>> = target_parts.iter().map(|p| BBox::of(p)).collect();
    let mut inside = vec![0.0; n];
    for (i, j) in overlapping_box_pairs_between(&fboxes, &target_boxes) {
        inside[i] += parts[i].iter().map(|a| clip_area_f64(a, &target_parts[j])).sum::<f64>();
    }
    let mut covered = 0.0;
    for (i, ps) in parts.iter().enumerate() {
        let own: f64 = ps.iter().map(|p| signed_area(p)).sum();
        let inside = inside[i];
        covered += inside;
        if own - inside > slack {
            failures.push(fail(Check::Containment, format!("placed piece {i} sticks out of the target by {:e}", own - inside)));
        }
    }
    if (covered - target_area).abs() > slack {
        failures.push(fail(Check::AreaCoverage, format!("placed pieces cover {covered} of {target_area}")));
    }
    VerifyReport::new(failures, AreaValue::Exact(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{interiors_overlap, polygon_area, polygon_contains, ratio};
    use proptest::prelude::*;

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn prat(x: Rational, y: Rational) -> Point2 {
        Point2::new(x, y)
    }

    /// Exact check that the moved pieces tile `target`.
    fn assert_tiles(pieces: &[SimplePolygon], motions: &[RigidMotion], target: &SimplePolygon) {
        assert_eq!(pieces.len(), motions.len());
        let placed: Vec<SimplePolygon> = pieces.iter().zip(motions).map(|(p, m)| p.transformed(m)).collect();
        for (i, p) in placed.iter().enumerate() {
            assert!(polygon_contains(target, p), "piece {i} outside");
            for q in &placed[i + 1..] {
                assert!(!interiors_overlap(p, q));
            }
        }
        let total: Rational = placed.iter().map(polygon_area).sum();
        assert_eq!(total, target.area());
    }

    fn assert_partitions(pieces: &[SimplePolygon], source: &SimplePolygon) {
        assert_tiles(pieces, &vec![RigidMotion::identity(); pieces.len()], source);
    }

    #[test]
    fn isoceles_triangle_to_rectangle() {
        let t = [pt(0, 0), pt(2, 0), pt(1, 2)];
        let d = triangle_to_rectangle(&t).unwrap();
        assert_eq!(d.rect.corners, [pt(0, 0), pt(2, 0), pt(2, 1), pt(0, 1)]);
        assert_eq!(d.pieces.len(), 3);
        assert_partitions(&d.pieces, &SimplePolygon::new(t.to_vec()).unwrap());
        assert_tiles(&d.pieces, &d.motions, &d.rect.polygon());
    }

    #[test]
    fn right_triangle_goes_on_hypotenuse() {
        let d = triangle_to_rectangle(&[pt(0, 0), pt(2, 0), pt(0, 2)]).unwrap();
        let h = ratio(1, 2);
        assert_eq!(
            d.rect.corners,
            [pt(2, 0), pt(0, 2), prat(-h.clone(), ratio(3, 2)), prat(ratio(3, 2), -h)]
        );
        assert_eq!(d.rect.area(), rat(2));
        assert_tiles(&d.pieces, &d.motions, &d.rect.polygon());
    }

    #[test]
    fn clockwise_and_degenerate_triangles() {
        let d = triangle_to_rectangle(&[pt(0, 0), pt(1, 2), pt(2, 0)]).unwrap();
        assert_eq!(d.rect.area(), rat(2));
        assert_eq!(triangle_to_rectangle(&[pt(0, 0), pt(1, 1), pt(2, 2)]), Err(BgError::DegenerateTriangle));
    }

    #[test]
    fn width_examples() {
        let r = RectangleForm::axis_aligned(rat(1), rat(4)).unwrap();
        let d = rectangle_to_width(&r, &rat(2)).unwrap();
        assert_eq!(d.pieces.len(), 2);
        assert_eq!(d.rect, RectangleForm::axis_aligned(rat(2), rat(2)).unwrap());
        assert_tiles(&d.pieces, &d.motions, &d.rect.polygon());

        let r = RectangleForm::axis_aligned(rat(2), rat(2)).unwrap();
        let d = rectangle_to_width(&r, &rat(2)).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert!(d.motions[0].is_identity());

        let r = RectangleForm::axis_aligned(rat(1), rat(3)).unwrap();
        let d = rectangle_to_width(&r, &rat(2)).unwrap();
        assert!(d.pieces.len() <= 4);
        assert_eq!(d.rect, RectangleForm::axis_aligned(rat(2), ratio(3, 2)).unwrap());
        assert_tiles(&d.pieces, &d.motions, &d.rect.polygon());

        assert!(matches!(rectangle_to_width(&r, &rat(0)), Err(BgError::BadWidth(_))));
    }

    #[test]
    fn slide_step() {
        let r = RectangleForm::axis_aligned(rat(3), rat(3)).unwrap();
        let d = rectangle_to_width(&r, &rat(2)).unwrap();
        assert_eq!(d.pieces.len(), 3);
        assert_eq!(d.rect, RectangleForm::axis_aligned(rat(2), ratio(9, 2)).unwrap());
        assert_tiles(&d.pieces, &d.motions, &d.rect.polygon());
    }

    #[test]
    fn oblique_rectangle_to_width() {
        let d = triangle_to_rectangle(&[pt(0, 0), pt(7, 1), pt(2, 5)]).unwrap();
        let r = d.rect.clone();
        assert!(!r.is_axis_aligned());
        let w = ratio(3, 2);
        let e = rectangle_to_width(&r, &w).unwrap();
        assert_eq!(e.rect, RectangleForm::axis_aligned(w.clone(), r.area() / &w).unwrap());
        assert_partitions(&e.pieces, &r.polygon());
        assert_tiles(&e.pieces, &e.motions, &e.rect.polygon());
    }

    #[test]
    fn stacking() {
        let a = RectangleForm::axis_aligned(rat(2), rat(1)).unwrap();
        let b = RectangleForm::axis_aligned(rat(2), rat(3)).unwrap();
        let (m, total) = stack_rectangles(&[a.clone(), b]).unwrap();
        assert_eq!(total, RectangleForm::axis_aligned(rat(2), rat(4)).unwrap());
        assert!(m[0].is_identity());
        assert_eq!(m[1], RigidMotion::translation(pt(0, 1)));
        let (m, total) = stack_rectangles(std::slice::from_ref(&a)).unwrap();
        assert!(m[0].is_identity());
        assert_eq!(total, a);
        let c = RectangleForm::axis_aligned(rat(3), rat(1)).unwrap();
        assert_eq!(stack_rectangles(&[a, c]), Err(BgError::WidthMismatch));
        assert_eq!(stack_rectangles(&[]), Err(BgError::Empty));
    }

    #[test]
    fn canonical_charts() {
        let sq = SimplePolygon::unit_square();
        let c = polygon_to_canonical_chart(&sq, &rat(1)).unwrap();
        assert_eq!(c.pieces.len(), 1);
        assert!(verify_chart(&c, 1e-9).accepted);

        let t = SimplePolygon::from_ints(&[(0, 0), (4, 0), (0, 2)]).unwrap();
        let c = polygon_to_canonical_chart(&t, &rat(2)).unwrap();
        assert!(c.target.same_region_as(&SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()));
        let r = verify_chart(&c, 1e-9);
        assert!(r.accepted, "{r}");
        assert_tiles(&c.pieces, &c.exact_target_motions().unwrap(), &c.target);

        let l = SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        let c = polygon_to_canonical_chart(&l, &rat(1)).unwrap();
        assert!(verify_chart(&c, 1e-9).accepted);
        assert!(SimplePolygon::from_ints(&[(0, 0), (1, 1), (2, 2)]).is_err());
    }

    #[test]
    fn overlay_examples() {
        let sq = SimplePolygon::unit_square();
        let half = ratio(1, 2);
        let (z, one) = (rat(0), rat(1));
        let v = vec![
            SimplePolygon::rectangle(z.clone(), z.clone(), half.clone(), one.clone()).unwrap(),
            SimplePolygon::rectangle(half.clone(), z.clone(), one.clone(), one.clone()).unwrap(),
        ];
        let h = vec![
            SimplePolygon::rectangle(z.clone(), z.clone(), one.clone(), half.clone()).unwrap(),
            SimplePolygon::rectangle(z, half, one.clone(), one).unwrap(),
        ];
        let id = vec![RigidMotion::identity(); 2];
        let cv = DissectionChart::new(sq.clone(), sq.clone(), v, id.clone());
        let ch = DissectionChart::new(sq.clone(), sq.clone(), h, id);
        let o = overlay_charts(&cv, &ch).unwrap();
        assert_eq!(o.pieces.len(), 4);
        assert!(o.pieces.iter().all(|p| p.area() == ratio(1, 4)));
        assert!(verify_chart(&o, 1e-9).accepted);

        let same = overlay_charts(&cv, &cv).unwrap();
        assert_eq!(same.pieces.len(), 2);
        assert!(same.pieces.iter().zip(&cv.pieces).all(|(a, b)| a.same_region_as(b)));

        let other = DissectionChart::new(sq.clone(), SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 1), (0, 1)]).unwrap(), vec![], vec![]);
        assert_eq!(overlay_charts(&cv, &other), Err(BgError::TargetMismatch));
    }

    #[test]
    fn square_to_triangle() {
        let sq = SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let t = SimplePolygon::from_ints(&[(0, 0), (4, 0), (0, 2)]).unwrap();
        let c = mutual_chart(&sq, &t, &rat(2)).unwrap();
        let r = verify_chart(&c, 1e-9);
        assert!(r.accepted, "{r}");
        assert_eq!(r.computed_area, AreaValue::Exact(rat(4)));
        assert_tiles(&c.pieces, &c.exact_target_motions().unwrap(), &t);
        let back = mutual_chart(&t, &sq, &rat(1)).unwrap();
        assert!(verify_chart(&back, 1e-9).accepted);
        assert!(matches!(mutual_chart(&sq, &SimplePolygon::unit_square(), &rat(1)), Err(BgError::AreaMismatch(..))));
    }

    #[test]
    fn verify_chart_rejections() {
        let l = SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        let mut c = polygon_to_canonical_chart(&l, &rat(1)).unwrap();
        c.target_motions[0].tx += 1e-3;
        let r = verify_chart(&c, 1e-9);
        assert!(!r.accepted);
        c.target_motions[0].exact = None;
        assert!(!verify_chart(&c, 1e-9).accepted);

        let empty = DissectionChart::new(l.clone(), l, vec![], vec![]);
        let r = verify_chart(&empty, 1e-9);
        assert!(r.failed(Check::AreaCoverage));
    }

    fn small_point() -> impl Strategy<Value = (i64, i64)> {
        (-8i64..=8, -8i64..=8)
    }

    proptest! {
        #[test]
        fn triangle_rectangles_are_exact(a in small_point(), b in small_point(), c in small_point()) {
            let t = [pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1)];
            prop_assume!(!orient(&t[0], &t[1], &t[2]).is_zero());
            let d = triangle_to_rectangle(&t).unwrap();
            prop_assert!(d.pieces.len() <= 3);
            prop_assert!(d.rect.width_sq.is_positive() && d.rect.height_sq.is_positive());
            assert_partitions(&d.pieces, &SimplePolygon::new(t.to_vec()).unwrap());
            assert_tiles(&d.pieces, &d.motions, &d.rect.polygon());
        }

        #[test]
        fn rectangles_reach_any_width(a in small_point(), b in small_point(), c in small_point(), wn in 1i64..6, wd in 1i64..4) {
            let t = [pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1)];
            prop_assume!(!orient(&t[0], &t[1], &t[2]).is_zero());
            let r = triangle_to_rectangle(&t).unwrap().rect;
            let w = ratio(wn, wd);
            let d = rectangle_to_width(&r, &w).unwrap();
            assert_partitions(&d.pieces, &r.polygon());
            assert_tiles(&d.pieces, &d.motions, &d.rect.polygon());
        }

        #[test]
        fn axis_piece_count_bound(wn in 1i64..40, hn in 1i64..40, w in 1i64..6) {
            let r = RectangleForm::axis_aligned(rat(wn), rat(hn)).unwrap();
            let d = rectangle_to_width(&r, &rat(w)).unwrap();
            let aspect = (wn as f64 / w as f64).max(w as f64 / wn as f64);
            let bound = 3 * aspect.ceil() as usize;
            prop_assert!(d.pieces.len() <= bound, "{} > {}", d.pieces.len(), bound);
            assert_tiles(&d.pieces, &d.motions, &d.rect.polygon());
        }
    }
}
