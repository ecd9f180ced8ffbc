//! Hinge angles and sampled motion between two configurations of a cycle.
//!
//! One hinge is cut; the rest of the cycle becomes an open chain driven by
//! relative hinge angles from the piece after the cut. Pieces may pass
//! through each other mid-motion, and the overlaps are reported per frame.

use std::f64::consts::PI;

use thiserror::Error;

use crate::figure::{Configuration, HingedFigure, Topology};
use crate::geom::clip::convex_parts;
use crate::geom::{clip_area_f64, overlapping_box_pairs, BBox, FPoint, FloatMotion, Point2};

/// Overlap areas at or below this are not reported.
pub const OVERLAP_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KinematicsError {
    #[error("figure is not a cycle")]
    NotCycle,
    #[error("poses cut different hinges or have different lengths")]
    CutMismatch,
    #[error("hinge {0} does not exist")]
    CutOutOfRange(usize),
    #[error("need at least 2 frames, got {0}")]
    TooFewFrames(usize),
    #[error("configuration has {placements} placements for {pieces} pieces")]
    CountMismatch { pieces: usize, placements: usize },
}

/// A configuration of a cut cycle as a root placement plus relative angles.
#[derive(Clone, Debug, PartialEq)]
pub struct AnglePose {
    pub root_index: usize,
    pub root_placement: FloatMotion,
    /// Angle at hinge `(cut + 1 + j) mod k` for `j` in `0..k-1`.
    pub relative_angles: Vec<f64>,
    pub cut_hinge: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MotionSample {
    pub t: f64,
    pub placements: Vec<FloatMotion>,
    /// `(i, j, area)` with `i < j` for every pair overlapping by more than the threshold.
    pub overlaps: Vec<(usize, usize, f64)>,
}

/// Maps an angle to `(-π, π]`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

fn check_cycle(f: &HingedFigure, cut: usize) -> Result<(), KinematicsError> {
    if f.topology() != Topology::Cycle {
        return Err(KinematicsError::NotCycle);
    }
    if cut >= f.hinges().len() {
        return Err(KinematicsError::CutOutOfRange(cut));
    }
    Ok(())
}

/// Vertex of piece `h` and of piece `h + 1` pinned by hinge `h`.
fn hinge_vertices(f: &HingedFigure, h: usize) -> (FPoint, FPoint) {
    let hinge = &f.hinges()[h];
    let a = f.pieces()[hinge.piece_a].vertex(hinge.vertex_a).to_f64();
    let b = f.pieces()[hinge.piece_b].vertex(hinge.vertex_b).to_f64();
    if hinge.piece_a == h {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn extract_pose(f: &HingedFigure, c: &Configuration, cut: usize) -> Result<AnglePose, KinematicsError> {
    check_cycle(f, cut)?;
    let k = f.piece_count();
    if c.len() != k {
        return Err(KinematicsError::CountMismatch { pieces: k, placements: c.len() });
    }
    let p = c.float_placements();
    let root = (cut + 1) % k;
    let relative_angles = (0..k - 1)
        .map(|j| {
            let i = (root + j) % k;
            normalize_angle(p[(i + 1) % k].angle() - p[i].angle())
        })
        .collect();
    Ok(AnglePose { root_index: root, root_placement: p[root], relative_angles, cut_hinge: cut })
}

/// Placements of every piece, pinning each uncut hinge.
pub fn forward_kinematics(f: &HingedFigure, pose: &AnglePose) -> Vec<FloatMotion> {
    let k = f.piece_count();
    let mut out = vec![FloatMotion::identity(); k];
    let mut cur = pose.root_placement;
    let mut angle = cur.angle();
    out[pose.root_index] = cur;
    for (j, rel) in pose.relative_angles.iter().enumerate() {
        let i = (pose.root_index + j) % k;
        let (va, vb) = hinge_vertices(f, i);
        let pin = cur.apply(&va);
        angle += rel;
        let rot = FloatMotion::from_angle(angle, 0.0, 0.0).rotate(&vb);
        cur = FloatMotion::from_angle(angle, pin.x - rot.x, pin.y - rot.y);
        out[(i + 1) % k] = cur;
    }
    out
}

pub fn interpolate(a: &AnglePose, b: &AnglePose, t: f64) -> Result<AnglePose, KinematicsError> {
    if a.cut_hinge != b.cut_hinge || a.root_index != b.root_index || a.relative_angles.len() != b.relative_angles.len() {
        return Err(KinematicsError::CutMismatch);
    }
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let arc = |x: f64, y: f64| x + t * normalize_angle(y - x);
    let (ra, rb) = (&a.root_placement, &b.root_placement);
    let root_placement = FloatMotion::from_angle(arc(ra.angle(), rb.angle()), ra.tx + t * (rb.tx - ra.tx), ra.ty + t * (rb.ty - ra.ty));
    Ok(AnglePose {
        root_index: a.root_index,
        root_placement,
        relative_angles: a.relative_angles.iter().zip(&b.relative_angles).map(|(&x, &y)| arc(x, y)).collect(),
        cut_hinge: a.cut_hinge,
    })
}

/// Convex parts of each piece in piece coordinates.
fn piece_parts(f: &HingedFigure) -> Vec<Vec<Vec<FPoint>>> {
    f.pieces().iter().map(|p| convex_parts(p.polygon()).iter().map(|q| q.to_f64()).collect()).collect()
}

fn overlaps_of(parts: &[Vec<Vec<FPoint>>], placements: &[FloatMotion]) -> Vec<(usize, usize, f64)> {
    let placed: Vec<Vec<Vec<FPoint>>> = parts
        .iter()
        .zip(placements)
        .map(|(ps, m)| ps.iter().map(|p| p.iter().map(|q| m.apply(q)).collect()).collect())
        .collect();
    let boxes: Vec<BBox<f64>> = placed.iter().map(|ps| BBox::of(&ps.concat())).collect();
    overlapping_box_pairs(&boxes)
        .into_iter()
        .filter_map(|(i, j)| {
            let area: f64 = placed[i].iter().flat_map(|a| placed[j].iter().map(move |b| clip_area_f64(a, b))).sum();
            (area > OVERLAP_THRESHOLD).then_some((i, j, area))
        })
        .collect()
}

/// Pairwise overlaps of placed pieces above the threshold.
pub fn placement_overlaps(f: &HingedFigure, placements: &[FloatMotion]) -> Vec<(usize, usize, f64)> {
    overlaps_of(&piece_parts(f), placements)
}

/// `frames` equally spaced samples from `ca` (t = 0) to `cb` (t = 1).
///
/// The end frames carry the input placements verbatim.
pub fn sample_motion(
    f: &HingedFigure,
    ca: &Configuration,
    cb: &Configuration,
    frames: usize,
    cut: usize,
) -> Result<Vec<MotionSample>, KinematicsError> {
    if frames < 2 {
        return Err(KinematicsError::TooFewFrames(frames));
    }
    let pa = extract_pose(f, ca, cut)?;
    let pb = extract_pose(f, cb, cut)?;
    let parts = piece_parts(f);
    (0..frames)
        .map(|i| {
            let placements = if i == 0 {
                ca.float_placements()
            } else if i == frames - 1 {
                cb.float_placements()
            } else {
                let t = i as f64 / (frames - 1) as f64;
                forward_kinematics(f, &interpolate(&pa, &pb, t)?)
            };
            let t = i as f64 / (frames - 1) as f64;
            Ok(MotionSample { t, overlaps: overlaps_of(&parts, &placements), placements })
        })
        .collect()
}

/// Default cut: the hinge closing the cycle.
pub fn default_cut(f: &HingedFigure) -> usize {
    f.hinges().len().saturating_sub(1)
}

/// Largest distance between the two pinned vertices of any hinge other than `cut`.
pub fn hinge_gap(f: &HingedFigure, placements: &[FloatMotion], cut: Option<usize>) -> f64 {
    f.hinges()
        .iter()
        .enumerate()
        .filter(|(h, _)| Some(*h) != cut)
        .map(|(_, h)| {
            let a = placements[h.piece_a].apply(&f.pieces()[h.piece_a].vertex(h.vertex_a).to_f64());
            let b = placements[h.piece_b].apply(&f.pieces()[h.piece_b].vertex(h.vertex_b).to_f64());
            dist(&a, &b)
        })
        .fold(0.0, f64::max)
}

/// Largest distance between corresponding placed vertices of two placements.
pub fn max_vertex_deviation(f: &HingedFigure, a: &[FloatMotion], b: &[FloatMotion]) -> f64 {
    f.pieces()
        .iter()
        .zip(a.iter().zip(b))
        .flat_map(|(p, (ma, mb))| {
            p.polygon().vertices().iter().map(move |v| {
                let v = v.to_f64();
                dist(&ma.apply(&v), &mb.apply(&v))
            })
        })
        .fold(0.0, f64::max)
}

fn dist(a: &Point2<f64>, b: &Point2<f64>) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}
