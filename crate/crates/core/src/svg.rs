//! SVG output for configurations, polyominoes, charts and animations.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bg::DissectionChart;
use crate::figure::{Configuration, HingedFigure};
use crate::geom::{BBox, FPoint, FloatMotion, Point2};
use crate::kinematics::MotionSample;
use crate::polyomino::Polyomino;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("configuration has {placements} placements for {pieces} pieces")]
    CountMismatch { pieces: usize, placements: usize },
    #[error("animation needs at least 2 frames, got {0}")]
    TooFewFrames(usize),
    #[error("bad render style: {0}")]
    BadStyle(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    /// Pixels per unit.
    pub scale: f64,
    pub palette: Vec<String>,
    pub stroke_width: f64,
    pub show_hinges: bool,
    pub show_labels: bool,
    /// Seconds for one pass from the first frame to the last.
    pub duration: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            scale: 40.0,
            palette: ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            stroke_width: 1.0,
            show_hinges: false,
            show_labels: false,
            duration: 4.0,
        }
    }
}

impl RenderStyle {
    fn check(&self) -> Result<(), RenderError> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(RenderError::BadStyle("scale must be positive"));
        }
        if self.palette.is_empty() {
            return Err(RenderError::BadStyle("palette is empty"));
        }
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(RenderError::BadStyle("duration must be positive"));
        }
        Ok(())
    }

    fn color(&self, i: usize) -> String {
        escape(&self.palette[i % self.palette.len()])
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn num(x: f64) -> String {
    let x = if x.abs() < 5e-7 { 0.0 } else { x };
    format!("{x:.6}")
}

/// World-to-page mapping: y flipped, 5% margin around `bbox`.
struct Frame {
    min_x: f64,
    max_y: f64,
    margin: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn new(b: &BBox<f64>, scale: f64) -> Self {
        let (w, h) = (b.max.x - b.min.x, b.max.y - b.min.y);
        let margin = 0.05 * w.max(h).max(1e-9);
        Frame { min_x: b.min.x, max_y: b.max.y, margin, scale, width: (w + 2.0 * margin) * scale, height: (h + 2.0 * margin) * scale }
    }

    fn x(&self, p: &FPoint) -> f64 {
        (p.x - self.min_x + self.margin) * self.scale
    }

    fn y(&self, p: &FPoint) -> f64 {
        (self.max_y - p.y + self.margin) * self.scale
    }

    fn path(&self, pts: &[FPoint]) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(d, "{}{} {} ", if i == 0 { 'M' } else { 'L' }, num(self.x(p)), num(self.y(p)));
        }
        d.push('Z');
        d
    }

    fn open(&self, out: &mut String) {
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = num(self.width),
            h = num(self.height)
        );
    }
}

fn bbox_of<'a>(polys: impl IntoIterator<Item = &'a Vec<FPoint>>) -> BBox<f64> {
    let mut all: Vec<FPoint> = Vec::new();
    for p in polys {
        all.extend(p.iter().cloned());
    }
    if all.is_empty() {
        all.push(Point2::new(0.0, 0.0));
    }
    BBox::of(&all)
}

fn place(f: &HingedFigure, placements: &[FloatMotion]) -> Vec<Vec<FPoint>> {
    f.pieces().iter().zip(placements).map(|(p, m)| p.polygon().to_f64().iter().map(|v| m.apply(v)).collect()).collect()
}

fn centroid(pts: &[FPoint]) -> FPoint {
    let n = pts.len() as f64;
    Point2::new(pts.iter().map(|p| p.x).sum::<f64>() / n, pts.iter().map(|p| p.y).sum::<f64>() / n)
}

fn piece_path(out: &mut String, frame: &Frame, style: &RenderStyle, i: usize, pts: &[FPoint], indent: &str) {
    let _ = writeln!(
        out,
        r##"{indent}<path id="piece-{i}" d="{}" fill="{}" stroke="#222222" stroke-width="{}" stroke-linejoin="round"/>"##,
        frame.path(pts),
        style.color(i),
        num(style.stroke_width)
    );
}

fn label(out: &mut String, frame: &Frame, i: usize, pts: &[FPoint], indent: &str) {
    let c = centroid(pts);
    let _ = writeln!(
        out,
        r#"{indent}<text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="middle">{i}</text>"#,
        num(frame.x(&c)),
        num(frame.y(&c)),
        num(frame.scale * 0.25)
    );
}

/// One path per piece, placed by `c`.
pub fn render_config(f: &HingedFigure, c: &Configuration, style: &RenderStyle) -> Result<String, RenderError> {
    style.check()?;
    if c.len() != f.piece_count() {
        return Err(RenderError::CountMismatch { pieces: f.piece_count(), placements: c.len() });
    }
    let placements = c.float_placements();
    let placed = place(f, &placements);
    let frame = Frame::new(&bbox_of(&placed), style.scale);
    let mut out = String::new();
    frame.open(&mut out);
    for (i, pts) in placed.iter().enumerate() {
        piece_path(&mut out, &frame, style, i, pts, "  ");
    }
    if style.show_hinges {
        for (k, h) in f.hinges().iter().enumerate() {
            let p = placements[h.piece_a].apply(&f.pieces()[h.piece_a].vertex(h.vertex_a).to_f64());
            let _ = writeln!(
                out,
                r##"  <circle class="hinge" id="hinge-{k}" cx="{}" cy="{}" r="{}" fill="#000000"/>"##,
                num(frame.x(&p)),
                num(frame.y(&p)),
                num(style.stroke_width * 2.5)
            );
        }
    }
    if style.show_labels {
        for (i, pts) in placed.iter().enumerate() {
            label(&mut out, &frame, i, pts, "  ");
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// One path per cell.
pub fn render_polyomino(p: &Polyomino, style: &RenderStyle) -> Result<String, RenderError> {
    style.check()?;
    let cells: Vec<Vec<FPoint>> = p.cells().iter().map(|c| c.polygon().to_f64()).collect();
    let frame = Frame::new(&bbox_of(&cells), style.scale);
    let mut out = String::new();
    frame.open(&mut out);
    for (i, pts) in cells.iter().enumerate() {
        let _ = writeln!(
            out,
            r##"  <path id="cell-{i}" d="{}" fill="{}" stroke="#222222" stroke-width="{}"/>"##,
            frame.path(pts),
            style.color(0),
            num(style.stroke_width)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Animated document running through the samples and back, forever.
pub fn render_animation(f: &HingedFigure, samples: &[MotionSample], style: &RenderStyle) -> Result<String, RenderError> {
    style.check()?;
    if samples.len() < 2 {
        return Err(RenderError::TooFewFrames(samples.len()));
    }
    for s in samples {
        if s.placements.len() != f.piece_count() {
            return Err(RenderError::CountMismatch { pieces: f.piece_count(), placements: s.placements.len() });
        }
    }
    let frames: Vec<Vec<Vec<FPoint>>> = samples.iter().map(|s| place(f, &s.placements)).collect();
    let frame = Frame::new(&bbox_of(frames.iter().flatten()), style.scale);
    let dur = num(style.duration);
    let mut out = String::new();
    frame.open(&mut out);
    for i in 0..f.piece_count() {
        let ds: Vec<String> = frames.iter().map(|fr| frame.path(&fr[i])).collect();
        let back: Vec<String> = ds.iter().rev().cloned().collect();
        let _ = writeln!(
            out,
            r##"  <path id="piece-{i}" d="{}" fill="{}" fill-opacity="0.85" stroke="#222222" stroke-width="{}" stroke-linejoin="round">"##,
            ds[0],
            style.color(i),
            num(style.stroke_width)
        );
        let _ = writeln!(
            out,
            r#"    <animate id="fwd-{i}" attributeName="d" begin="0s;back-{i}.end" dur="{dur}s" fill="freeze" calcMode="linear" values="{}"/>"#,
            ds.join(";")
        );
        let _ = writeln!(
            out,
            r#"    <animate id="back-{i}" attributeName="d" begin="fwd-{i}.end" dur="{dur}s" fill="freeze" calcMode="linear" values="{}"/>"#,
            back.join(";")
        );
        out.push_str("  </path>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Source pieces and their target assembly side by side, colored alike.
pub fn render_chart(c: &DissectionChart, style: &RenderStyle) -> Result<String, RenderError> {
    style.check()?;
    let src: Vec<Vec<FPoint>> = c.pieces.iter().zip(&c.source_motions).map(|(p, m)| p.transformed(m).to_f64()).collect();
    let tgt: Vec<Vec<FPoint>> =
        c.pieces.iter().zip(&c.target_motions).map(|(p, m)| p.to_f64().iter().map(|v| m.to_float().apply(v)).collect()).collect();
    let sb = bbox_of(src.iter().chain(std::iter::once(&c.source.to_f64())));
    let tb = bbox_of(tgt.iter().chain(std::iter::once(&c.target.to_f64())));
    let gap = 0.1 * (sb.max.x - sb.min.x).max(tb.max.x - tb.min.x);
    let (dx, dy) = (sb.max.x + gap - tb.min.x, sb.min.y - tb.min.y);
    let shift = |pts: &Vec<FPoint>| -> Vec<FPoint> { pts.iter().map(|p| Point2::new(p.x + dx, p.y + dy)).collect() };
    let tgt: Vec<Vec<FPoint>> = tgt.iter().map(shift).collect();
    let frame = Frame::new(&bbox_of(src.iter().chain(&tgt)).union(&sb).union(&bbox_of([&shift(&c.target.to_f64())])), style.scale);
    let mut out = String::new();
    frame.open(&mut out);
    for (name, group, outline) in [("source", &src, c.source.to_f64()), ("target", &tgt, shift(&c.target.to_f64()))] {
        let _ = writeln!(out, r#"  <g id="{name}">"#);
        for (i, pts) in group.iter().enumerate() {
            piece_path(&mut out, &frame, style, i, pts, "    ");
        }
        let _ = writeln!(
            out,
            r##"    <path class="outline" d="{}" fill="none" stroke="#000000" stroke-width="{}"/>"##,
            frame.path(&outline),
            num(style.stroke_width * 2.0)
        );
        if style.show_labels {
            for (i, pts) in group.iter().enumerate() {
                label(&mut out, &frame, i, pts, "    ");
            }
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
