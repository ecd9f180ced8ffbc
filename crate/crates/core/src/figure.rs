//! Hinged figures, configurations, and the configuration verifier.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::geom::{
    clip::{convex_interiors_meet, convex_parts, parts_contain, parts_intersection_area},
    clip_area_f64, overlapping_box_pairs, rat, signed_area, to_f64, BBox, FPoint, FloatMotion, GeomError, Point2, Rational, RigidMotion,
    SimplePolygon,
};
use crate::polyomino::{Cell, Polyomino};

/// Default tolerance for approximate configurations.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FigureError {
    #[error("size must be at least 1, got {0}")]
    BadSize(i64),
    #[error("piece {index}: {source}")]
    Piece { index: usize, source: GeomError },
    #[error("hinge {0} references a piece or vertex that does not exist")]
    HingeOutOfRange(usize),
    #[error("hinge {0} joins a piece to itself")]
    SelfHinge(usize),
    #[error("cycle topology requires hinge {0} to join piece {0} to its successor")]
    NotCycleLayout(usize),
    #[error("figure has {pieces} pieces but configuration has {placements} placements")]
    CountMismatch { pieces: usize, placements: usize },
}

/// A piece in its own frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieceShape {
    polygon: SimplePolygon,
}

impl PieceShape {
    /// Vertices must be counterclockwise with no redundant vertices; hinges
    /// refer to them by index.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeomError> {
        Ok(PieceShape { polygon: SimplePolygon::from_normalized(vertices)? })
    }

    pub fn polygon(&self) -> &SimplePolygon {
        &self.polygon
    }

    pub fn vertex(&self, i: usize) -> &Point2 {
        &self.polygon.vertices()[i]
    }
}

/// Pins `vertex_a` of `piece_a` to `vertex_b` of `piece_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hinge {
    pub piece_a: usize,
    pub vertex_a: usize,
    pub piece_b: usize,
    pub vertex_b: usize,
}

impl Hinge {
    pub const fn new(piece_a: usize, vertex_a: usize, piece_b: usize, vertex_b: usize) -> Self {
        Hinge { piece_a, vertex_a, piece_b, vertex_b }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    /// Hinge `i` joins piece `i` to piece `i + 1 (mod k)`.
    Cycle,
    General,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Cycle => "cycle",
            Topology::General => "general",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HingedFigure {
    pieces: Vec<PieceShape>,
    hinges: Vec<Hinge>,
    topology: Topology,
}

impl HingedFigure {
    pub fn new(pieces: Vec<PieceShape>, hinges: Vec<Hinge>, topology: Topology) -> Result<Self, FigureError> {
        for (i, h) in hinges.iter().enumerate() {
            let ok = |p: usize, v: usize| p < pieces.len() && v < pieces[p].polygon.len();
            if !ok(h.piece_a, h.vertex_a) || !ok(h.piece_b, h.vertex_b) {
                return Err(FigureError::HingeOutOfRange(i));
            }
            if h.piece_a == h.piece_b {
                return Err(FigureError::SelfHinge(i));
            }
        }
        if topology == Topology::Cycle {
            let k = pieces.len();
            if hinges.len() != k {
                return Err(FigureError::NotCycleLayout(hinges.len().min(k)));
            }
            if let Some(i) = hinges.iter().enumerate().position(|(i, h)| h.piece_a != i || h.piece_b != (i + 1) % k) {
                return Err(FigureError::NotCycleLayout(i));
            }
        }
        Ok(HingedFigure { pieces, hinges, topology })
    }

    pub fn pieces(&self) -> &[PieceShape] {
        &self.pieces
    }

    pub fn hinges(&self) -> &[Hinge] {
        &self.hinges
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn total_area(&self) -> Rational {
        self.pieces.iter().map(|p| p.polygon.area()).sum()
    }
}

/// The cycle of `2n` half-square triangles `(0,0), (1,0), (0,1)`, hinge `i`
/// joining vertex 1 of piece `i` to vertex 2 of piece `i + 1`.
pub fn canonical_chain_figure(n: i64) -> Result<HingedFigure, FigureError> {
    if n < 1 {
        return Err(FigureError::BadSize(n));
    }
    let k = 2 * n as usize;
    let tri = PieceShape::new(vec![Point2::from_ints(0, 0), Point2::from_ints(1, 0), Point2::from_ints(0, 1)])
        .expect("unit right triangle");
    let hinges = (0..k).map(|i| Hinge::new(i, 1, (i + 1) % k, 2)).collect();
    HingedFigure::new(vec![tri; k], hinges, Topology::Cycle)
}

/// Structural equality: same pieces vertex for vertex, same hinge tuples.
pub fn figures_equal(a: &HingedFigure, b: &HingedFigure) -> bool {
    a == b
}

/// One proper motion per piece.
#[derive(Clone, Debug, PartialEq)]
pub enum Configuration {
    Exact(Vec<RigidMotion>),
    Approx { placements: Vec<FloatMotion>, tolerance: f64 },
}

impl Configuration {
    pub fn len(&self) -> usize {
        match self {
            Configuration::Exact(m) => m.len(),
            Configuration::Approx { placements, .. } => placements.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Configuration::Exact(_))
    }

    pub fn float_placements(&self) -> Vec<FloatMotion> {
        match self {
            Configuration::Exact(m) => m.iter().map(RigidMotion::to_float).collect(),
            Configuration::Approx { placements, .. } => placements.clone(),
        }
    }

    /// The same placements checked numerically.
    pub fn to_approx(&self, tolerance: f64) -> Configuration {
        Configuration::Approx { placements: self.float_placements(), tolerance }
    }
}

/// What a configuration is supposed to assemble into.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Polygon(SimplePolygon),
    Polyomino(Polyomino),
}

impl Target {
    pub fn area(&self) -> Rational {
        match self {
            Target::Polygon(p) => p.area(),
            Target::Polyomino(p) => rat(p.cell_count() as i64),
        }
    }

    fn convex_parts(&self) -> Vec<SimplePolygon> {
        match self {
            Target::Polygon(p) => convex_parts(p),
            Target::Polyomino(p) => p.cells().iter().map(|c| c.polygon()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    ProperMotion,
    HingeCoincidence,
    PairwiseDisjoint,
    Containment,
    AreaCoverage,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AreaValue {
    Exact(Rational),
    Approx(f64),
}

impl fmt::Display for AreaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AreaValue::Exact(r) => f.write_str(&crate::geom::format_rational(r)),
            AreaValue::Approx(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub accepted: bool,
    pub failures: Vec<Failure>,
    pub computed_area: AreaValue,
}

impl VerifyReport {
    pub fn new(failures: Vec<Failure>, computed_area: AreaValue) -> Self {
        VerifyReport { accepted: failures.is_empty(), failures, computed_area }
    }

    pub fn failed(&self, check: Check) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in [Check::ProperMotion, Check::HingeCoincidence, Check::PairwiseDisjoint, Check::Containment, Check::AreaCoverage] {
            let fails: Vec<&Failure> = self.failures.iter().filter(|x| x.check == check).collect();
            if fails.is_empty() {
                writeln!(f, "  {check}: ok")?;
            } else {
                writeln!(f, "  {check}: FAILED")?;
                for x in fails.iter().take(8) {
                    writeln!(f, "    - {}", x.detail)?;
                }
                if fails.len() > 8 {
                    writeln!(f, "    - ... {} more", fails.len() - 8)?;
                }
            }
        }
        write!(f, "  area: {}  => {}", self.computed_area, if self.accepted { "ACCEPTED" } else { "REJECTED" })
    }
}

/// Checks, in order, that a configuration places the figure's pieces as a
/// non-overlapping, hinge-respecting tiling of `target`.
pub fn verify_configuration(f: &HingedFigure, c: &Configuration, target: &Target) -> Result<VerifyReport, FigureError> {
    if c.len() != f.piece_count() {
        return Err(FigureError::CountMismatch { pieces: f.piece_count(), placements: c.len() });
    }
    Ok(match c {
        Configuration::Exact(m) => verify_exact(f, m, target),
        Configuration::Approx { placements, tolerance } => verify_approx(f, placements, *tolerance, target),
    })
}

fn fail(check: Check, detail: String) -> Failure {
    Failure { check, detail }
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().unwrap_or(i64::MIN)
}

fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

fn verify_exact(f: &HingedFigure, motions: &[RigidMotion], target: &Target) -> VerifyReport {
    let mut failures = Vec::new();

    for (i, m) in motions.iter().enumerate() {
        if !m.is_proper() {
            failures.push(fail(Check::ProperMotion, format!("piece {i}: cos^2 + sin^2 != 1")));
        }
    }

    for (i, h) in f.hinges.iter().enumerate() {
        let pa = motions[h.piece_a].apply(f.pieces[h.piece_a].vertex(h.vertex_a));
        let pb = motions[h.piece_b].apply(f.pieces[h.piece_b].vertex(h.vertex_b));
        if pa != pb {
            failures.push(fail(Check::HingeCoincidence, format!("hinge {i}: piece {} at {pa}, piece {} at {pb}", h.piece_a, h.piece_b)));
        }
    }

    // Improper placements distort the piece; they are reported above and
    // only their images that are still simple polygons take part below.
    let placed: Vec<Option<SimplePolygon>> = f
        .pieces
        .iter()
        .zip(motions)
        .map(|(p, m)| {
            if m.is_proper() {
                Some(p.polygon.transformed(m))
            } else {
                SimplePolygon::new(p.polygon.vertices().iter().map(|v| m.apply(v)).collect()).ok()
            }
        })
        .collect();
    for (i, p) in placed.iter().enumerate() {
        if p.is_none() {
            failures.push(fail(Check::Containment, format!("piece {i}: placement collapses the piece")));
        }
    }
    let parts: Vec<Vec<SimplePolygon>> = placed.iter().map(|p| p.as_ref().map(convex_parts).unwrap_or_default()).collect();
    let present: Vec<usize> = (0..placed.len()).filter(|&i| placed[i].is_some()).collect();
    let boxes: Vec<BBox> = present.iter().filter_map(|&i| placed[i].as_ref().map(SimplePolygon::bbox)).collect();
    for (a, b) in overlapping_box_pairs(&boxes) {
        let (i, j) = (present[a].min(present[b]), present[a].max(present[b]));
        if parts[i].iter().any(|x| parts[j].iter().any(|y| convex_interiors_meet(x, y))) {
            failures.push(fail(Check::PairwiseDisjoint, format!("pieces {i} and {j} overlap")));
        }
    }

    match target {
        Target::Polyomino(poly) => {
            for (i, p) in placed.iter().enumerate() {
                let Some(p) = p else { continue };
                let b = p.bbox();
                let mut inside = Rational::zero();
                for x in floor_i64(&b.min.x)..ceil_i64(&b.max.x) {
                    for y in floor_i64(&b.min.y)..ceil_i64(&b.max.y) {
                        let cell = Cell::new(x, y);
                        if poly.contains(cell) {
                            inside += parts_intersection_area(&parts[i], &[cell.polygon()]);
                        }
                    }
                }
                if inside != p.area() {
                    failures.push(fail(Check::Containment, format!("piece {i} is not inside the polyomino")));
                }
            }
        }
        Target::Polygon(outer) => {
            let (outer_box, outer_parts) = (outer.bbox(), convex_parts(outer));
            for (i, p) in placed.iter().enumerate() {
                let Some(p) = p else { continue };
                if !parts_contain(&outer_box, &outer_parts, p) {
                    failures.push(fail(Check::Containment, format!("piece {i} is not inside the target")));
                }
            }
        }
    }

    let total = f.total_area();
    let target_area = target.area();
    if total != target_area {
        failures.push(fail(
            Check::AreaCoverage,
            format!("pieces cover {}, target has {}", crate::geom::format_rational(&total), crate::geom::format_rational(&target_area)),
        ));
    }
    VerifyReport::new(failures, AreaValue::Exact(total))
}

fn to_float_parts(parts: &[SimplePolygon], m: Option<&FloatMotion>) -> Vec<Vec<FPoint>> {
    parts
        .iter()
        .map(|p| {
            let pts = p.to_f64();
            match m {
                Some(m) => pts.iter().map(|q| m.apply(q)).collect(),
                None => pts,
            }
        })
        .collect()
}

fn float_bbox(parts: &[Vec<FPoint>]) -> BBox<f64> {
    parts.iter().map(|p| BBox::of(p)).reduce(|a, b| a.union(&b)).expect("non-empty")
}

/// True for NaN too.
fn exceeds(value: f64, bound: f64) -> bool {
    value.is_nan() || value > bound
}

fn verify_approx(f: &HingedFigure, motions: &[FloatMotion], tol: f64, target: &Target) -> VerifyReport {
    let mut failures = Vec::new();
    let target_area = to_f64(&target.area());
    let length_scale = target_area.sqrt().max(1.0);

    for (i, m) in motions.iter().enumerate() {
        let r = m.unit_residual();
        if exceeds(r, tol) {
            failures.push(fail(Check::ProperMotion, format!("piece {i}: |cos^2 + sin^2 - 1| = {r:e}")));
        }
    }

    for (i, h) in f.hinges.iter().enumerate() {
        let pa = motions[h.piece_a].apply(&f.pieces[h.piece_a].vertex(h.vertex_a).to_f64());
        let pb = motions[h.piece_b].apply(&f.pieces[h.piece_b].vertex(h.vertex_b).to_f64());
        let d = ((pa.x - pb.x).powi(2) + (pa.y - pb.y).powi(2)).sqrt();
        if exceeds(d, tol * length_scale) {
            failures.push(fail(Check::HingeCoincidence, format!("hinge {i}: endpoints {d:e} apart")));
        }
    }

    let parts: Vec<Vec<Vec<FPoint>>> =
        f.pieces.iter().zip(motions).map(|(p, m)| to_float_parts(&convex_parts(&p.polygon), Some(m))).collect();
    let boxes: Vec<BBox<f64>> = parts.iter().map(|p| float_bbox(p)).collect();
    let piece_area = |i: usize| -> f64 { parts[i].iter().map(|p| signed_area(p)).sum() };

    for (i, j) in overlapping_box_pairs(&boxes) {
        let a: f64 = parts[i].iter().flat_map(|x| parts[j].iter().map(move |y| clip_area_f64(x, y))).sum();
        if exceeds(a, tol * target_area) {
            failures.push(fail(Check::PairwiseDisjoint, format!("pieces {i} and {j} overlap by {a:e}")));
        }
    }

    let target_parts = to_float_parts(&target.convex_parts(), None);
    for (i, piece) in parts.iter().enumerate() {
        let inside: f64 = piece.iter().flat_map(|x| target_parts.iter().map(move |y| clip_area_f64(x, y))).sum();
        let outside = piece_area(i) - inside;
        if exceeds(outside, tol * target_area) {
            failures.push(fail(Check::Containment, format!("piece {i}: {outside:e} outside the target")));
        }
    }

    let total: f64 = (0..parts.len()).map(piece_area).sum();
    let residual = (total - target_area).abs() / target_area;
    if exceeds(residual, tol) {
        failures.push(fail(Check::AreaCoverage, format!("pieces cover {total}, target has {target_area} (relative {residual:e})")));
    }
    VerifyReport::new(failures, AreaValue::Approx(total))
}
