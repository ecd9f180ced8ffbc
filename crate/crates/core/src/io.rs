//! JSON interchange: HDJ documents, polygon and cell lists, dissection charts.
//!
//! Rationals are written as `"p/q"` strings, or as bare integers when the
//! denominator is 1. On input, strings and JSON numbers are both accepted and
//! decimals are read exactly.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bg::{ChartMotion, DissectionChart};
use crate::chain::{FoldResult, HingedDissection};
use crate::figure::{Configuration, FigureError, Hinge, HingedFigure, PieceShape, Target, Topology, DEFAULT_TOLERANCE};
use crate::geom::{format_rational, parse_rational, FloatMotion, GeomError, Point2, Rational, RigidMotion, SimplePolygon};
use crate::polyomino::{Cell, Polyomino, PolyominoError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Figure(#[from] FigureError),
    #[error(transparent)]
    Polyomino(#[from] PolyominoError),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

pub fn rational_to_json(r: &Rational) -> Value {
    if r.denom().is_one() {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, IoError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(bad(format!("expected a number, got {other}"))),
    };
    parse_rational(&text).map_err(|e| bad(e.to_string()))
}

fn float_from_json(v: &Value) -> Result<f64, IoError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad(format!("bad number {n}"))),
        _ => rational_from_json(v).map(|r| crate::geom::to_f64(&r)),
    }
}

fn float_to_json(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn point_to_json(p: &Point2) -> Value {
    json!([rational_to_json(&p.x), rational_to_json(&p.y)])
}

pub fn point_from_json(v: &Value) -> Result<Point2, IoError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point2::new(rational_from_json(x)?, rational_from_json(y)?)),
        _ => Err(bad(format!("expected a point [x, y], got {v}"))),
    }
}

fn points_from_json(v: &Value) -> Result<Vec<Point2>, IoError> {
    v.as_array().ok_or_else(|| bad("expected a list of points"))?.iter().map(point_from_json).collect()
}

pub fn polygon_to_json(p: &SimplePolygon) -> Value {
    Value::Array(p.vertices().iter().map(point_to_json).collect())
}

/// Reads a polygon given as a list of points or as `{"vertices": [...]}`.
pub fn polygon_from_json(v: &Value) -> Result<SimplePolygon, IoError> {
    let pts = match v {
        Value::Object(m) => points_from_json(m.get("vertices").ok_or_else(|| bad("polygon object needs \"vertices\""))?)?,
        _ => points_from_json(v)?,
    };
    Ok(SimplePolygon::new(pts)?)
}

pub fn parse_polygon(text: &str) -> Result<SimplePolygon, IoError> {
    polygon_from_json(&serde_json::from_str(text)?)
}

fn cells_from_json(v: &Value) -> Result<Polyomino, IoError> {
    let list = v.as_array().ok_or_else(|| bad("expected a list of cells"))?;
    let cells = list
        .iter()
        .map(|c| match c.as_array().map(Vec::as_slice) {
            Some([x, y]) => match (x.as_i64(), y.as_i64()) {
                (Some(x), Some(y)) => Ok(Cell::new(x, y)),
                _ => Err(bad(format!("cell coordinates must be integers: {c}"))),
            },
            _ => Err(bad(format!("expected a cell [x, y], got {c}"))),
        })
        .collect::<Result<Vec<Cell>, IoError>>()?;
    Ok(Polyomino::from_cells(cells)?)
}

fn cells_to_json(p: &Polyomino) -> Value {
    Value::Array(p.cells().iter().map(|c| json!([c.x, c.y])).collect())
}

/// Reads `{"cells": [[x, y], ...]}`.
pub fn parse_cells(text: &str) -> Result<Polyomino, IoError> {
    let v: Value = serde_json::from_str(text)?;
    cells_from_json(v.get("cells").ok_or_else(|| bad("expected {\"cells\": [...]}"))?)
}

pub fn cells_json(p: &Polyomino) -> String {
    json!({ "cells": cells_to_json(p) }).to_string()
}

#[derive(Serialize, Deserialize)]
struct RawFigure {
    pieces: Vec<Vec<Value>>,
    hinges: Vec<[usize; 4]>,
    topology: String,
}

#[derive(Serialize, Deserialize)]
struct RawPlacement {
    cos: Value,
    sin: Value,
    tx: Value,
    ty: Value,
}

#[derive(Serialize, Deserialize)]
struct RawConfiguration {
    name: String,
    mode: String,
    placements: Vec<RawPlacement>,
}

#[derive(Serialize, Deserialize)]
struct RawTarget {
    name: String,
    kind: String,
    data: Value,
}

#[derive(Serialize, Deserialize)]
struct RawHdj {
    figure: RawFigure,
    configurations: Vec<RawConfiguration>,
    targets: Vec<RawTarget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cell_map: Option<Vec<([i64; 2], [usize; 2])>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedConfiguration {
    pub name: String,
    pub config: Configuration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedTarget {
    pub name: String,
    pub target: Target,
}

/// A hinged figure with named configurations and targets.
#[derive(Clone, Debug, PartialEq)]
pub struct HdjDocument {
    pub figure: HingedFigure,
    pub configurations: Vec<NamedConfiguration>,
    pub targets: Vec<NamedTarget>,
    pub cell_map: Option<BTreeMap<Cell, (usize, usize)>>,
}

impl HdjDocument {
    /// A single configuration named "fold" with `p` as its target.
    pub fn from_fold(p: Polyomino, f: FoldResult) -> Self {
        HdjDocument {
            figure: f.figure,
            configurations: vec![NamedConfiguration { name: "fold".into(), config: f.config }],
            targets: vec![NamedTarget { name: "fold".into(), target: Target::Polyomino(p) }],
            cell_map: Some(f.cell_map),
        }
    }

    /// Configurations "a" and "b" with their polyomino targets.
    pub fn from_dissection(d: HingedDissection) -> Self {
        HdjDocument {
            figure: d.figure,
            configurations: vec![
                NamedConfiguration { name: "a".into(), config: d.config_a },
                NamedConfiguration { name: "b".into(), config: d.config_b },
            ],
            targets: vec![
                NamedTarget { name: "a".into(), target: Target::Polyomino(d.target_a) },
                NamedTarget { name: "b".into(), target: Target::Polyomino(d.target_b) },
            ],
            cell_map: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let raw: RawHdj = serde_json::from_str(text)?;
        let pieces = raw
            .figure
            .pieces
            .iter()
            .enumerate()
            .map(|(i, vs)| {
                let pts = vs.iter().map(point_from_json).collect::<Result<Vec<_>, _>>()?;
                PieceShape::new(pts).map_err(|e| IoError::Figure(FigureError::Piece { index: i, source: e }))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        let hinges = raw.figure.hinges.iter().map(|h| Hinge::new(h[0], h[1], h[2], h[3])).collect();
        let topology = match raw.figure.topology.as_str() {
            "cycle" => Topology::Cycle,
            "general" => Topology::General,
            t => return Err(bad(format!("unknown topology {t:?}"))),
        };
        let figure = HingedFigure::new(pieces, hinges, topology)?;
        let configurations = raw.configurations.iter().map(configuration_from_raw).collect::<Result<Vec<_>, _>>()?;
        let targets = raw.targets.iter().map(target_from_raw).collect::<Result<Vec<_>, _>>()?;
        let cell_map = raw
            .cell_map
            .map(|m| m.into_iter().map(|([x, y], [i, j])| (Cell::new(x, y), (i, j))).collect());
        Ok(HdjDocument { figure, configurations, targets, cell_map })
    }

    pub fn to_json(&self) -> String {
        let raw = RawHdj {
            figure: RawFigure {
                pieces: self.figure.pieces().iter().map(|p| p.polygon().vertices().iter().map(point_to_json).collect()).collect(),
                hinges: self.figure.hinges().iter().map(|h| [h.piece_a, h.vertex_a, h.piece_b, h.vertex_b]).collect(),
                topology: self.figure.topology().to_string(),
            },
            configurations: self.configurations.iter().map(configuration_to_raw).collect(),
            targets: self.targets.iter().map(target_to_raw).collect(),
            cell_map: self.cell_map.as_ref().map(|m| m.iter().map(|(c, &(i, j))| ([c.x, c.y], [i, j])).collect()),
        };
        serde_json::to_string_pretty(&raw).expect("HDJ serializes")
    }

    /// Target for configuration `i`: the target with the same name, else the
    /// `i`-th target.
    pub fn target_for(&self, i: usize) -> Option<&Target> {
        let name = &self.configurations.get(i)?.name;
        self.targets
            .iter()
            .find(|t| &t.name == name)
            .or_else(|| self.targets.get(i))
            .map(|t| &t.target)
    }
}

fn configuration_from_raw(c: &RawConfiguration) -> Result<NamedConfiguration, IoError> {
    let config = match c.mode.as_str() {
        "exact" => Configuration::Exact(
            c.placements
                .iter()
                .map(|p| {
                    let t = Point2::new(rational_from_json(&p.tx)?, rational_from_json(&p.ty)?);
                    // rotation validity is the verifier's job
                    Ok(RigidMotion::new_unchecked(rational_from_json(&p.cos)?, rational_from_json(&p.sin)?, t))
                })
                .collect::<Result<Vec<_>, IoError>>()?,
        ),
        "approx" => Configuration::Approx {
            placements: c
                .placements
                .iter()
                .map(|p| {
                    Ok(FloatMotion {
                        cos: float_from_json(&p.cos)?,
                        sin: float_from_json(&p.sin)?,
                        tx: float_from_json(&p.tx)?,
                        ty: float_from_json(&p.ty)?,
                    })
                })
                .collect::<Result<Vec<_>, IoError>>()?,
            tolerance: DEFAULT_TOLERANCE,
        },
        m => return Err(bad(format!("unknown configuration mode {m:?}"))),
    };
    Ok(NamedConfiguration { name: c.name.clone(), config })
}

fn configuration_to_raw(c: &NamedConfiguration) -> RawConfiguration {
    let (mode, placements) = match &c.config {
        Configuration::Exact(ms) => (
            "exact",
            ms.iter()
                .map(|m| RawPlacement {
                    cos: rational_to_json(m.cos()),
                    sin: rational_to_json(m.sin()),
                    tx: rational_to_json(&m.translate().x),
                    ty: rational_to_json(&m.translate().y),
                })
                .collect(),
        ),
        Configuration::Approx { placements, .. } => (
            "approx",
            placements
                .iter()
                .map(|m| RawPlacement { cos: float_to_json(m.cos), sin: float_to_json(m.sin), tx: float_to_json(m.tx), ty: float_to_json(m.ty) })
                .collect(),
        ),
    };
    RawConfiguration { name: c.name.clone(), mode: mode.to_string(), placements }
}

fn target_from_raw(t: &RawTarget) -> Result<NamedTarget, IoError> {
    let target = match t.kind.as_str() {
        "polygon" => Target::Polygon(polygon_from_json(&t.data)?),
        "polyomino" => Target::Polyomino(cells_from_json(&t.data)?),
        k => return Err(bad(format!("unknown target kind {k:?}"))),
    };
    Ok(NamedTarget { name: t.name.clone(), target })
}

fn target_to_raw(t: &NamedTarget) -> RawTarget {
    let (kind, data) = match &t.target {
        Target::Polygon(p) => ("polygon", polygon_to_json(p)),
        Target::Polyomino(p) => ("polyomino", cells_to_json(p)),
    };
    RawTarget { name: t.name.clone(), kind: kind.to_string(), data }
}

pub fn chart_to_json(c: &DissectionChart) -> String {
    let motions: Vec<Value> = c
        .target_motions
        .iter()
        .map(|m| {
            let mut v = json!({ "angle_rad": float_to_json(m.angle_rad), "tx": float_to_json(m.tx), "ty": float_to_json(m.ty) });
            if let Some(e) = &m.exact {
                v["exact"] = json!({
                    "cos": rational_to_json(e.cos()),
                    "sin": rational_to_json(e.sin()),
                    "tx": rational_to_json(&e.translate().x),
                    "ty": rational_to_json(&e.translate().y),
                });
            }
            v
        })
        .collect();
    let v = json!({
        "source": polygon_to_json(&c.source),
        "target": polygon_to_json(&c.target),
        "pieces": c.pieces.iter().map(polygon_to_json).collect::<Vec<_>>(),
        "target_motions": motions,
    });
    serde_json::to_string_pretty(&v).expect("chart serializes")
}

pub fn chart_from_json(text: &str) -> Result<DissectionChart, IoError> {
    let v: Value = serde_json::from_str(text)?;
    let field = |k: &str| v.get(k).ok_or_else(|| bad(format!("chart needs {k:?}")));
    let pieces = field("pieces")?
        .as_array()
        .ok_or_else(|| bad("\"pieces\" must be a list"))?
        .iter()
        .map(polygon_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let target_motions = field("target_motions")?
        .as_array()
        .ok_or_else(|| bad("\"target_motions\" must be a list"))?
        .iter()
        .map(|m| {
            let f = |k: &str| m.get(k).ok_or_else(|| bad(format!("motion needs {k:?}"))).and_then(float_from_json);
            let exact = match m.get("exact") {
                Some(e) => {
                    let r = |k: &str| e.get(k).ok_or_else(|| bad(format!("exact motion needs {k:?}"))).and_then(rational_from_json);
                    Some(RigidMotion::new_unchecked(r("cos")?, r("sin")?, Point2::new(r("tx")?, r("ty")?)))
                }
                None => None,
            };
            Ok(ChartMotion { angle_rad: f("angle_rad")?, tx: f("tx")?, ty: f("ty")?, exact })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(DissectionChart {
        source: polygon_from_json(field("source")?)?,
        target: polygon_from_json(field("target")?)?,
        source_motions: vec![RigidMotion::identity(); pieces.len()],
        pieces,
        target_motions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bg::{mutual_chart, verify_chart};
    use crate::chain::fold_chain;
    use crate::figure::verify_configuration;
    use crate::geom::{rat, ratio};
    use crate::polyomino::parse_grid;
    use crate::samples::DUDENEY_HDJ;

    #[test]
    fn rational_json_forms() {
        assert_eq!(rational_to_json(&rat(3)), json!(3));
        assert_eq!(rational_to_json(&ratio(-1, 2)), json!("-1/2"));
        assert_eq!(rational_from_json(&json!("6/4")).unwrap(), ratio(3, 2));
        assert_eq!(rational_from_json(&json!(0.25)).unwrap(), ratio(1, 4));
        assert_eq!(rational_from_json(&json!(-7)).unwrap(), rat(-7));
        assert!(rational_from_json(&json!(true)).is_err());
        assert!(rational_from_json(&json!("1/0")).is_err());
    }

    #[test]
    fn polygon_forms() {
        let a = parse_polygon("[[0,0],[2,0],[\"1/2\",1]]").unwrap();
        let b = parse_polygon("{\"vertices\": [[0,0],[2,0],[0.5,1]]}").unwrap();
        assert_eq!(a, b);
        assert!(parse_polygon("[[0,0],[1,1],[2,2]]").is_err());
        assert!(parse_polygon("{\"points\": []}").is_err());
    }

    #[test]
    fn cells_round_trip() {
        let p = parse_grid("##\n#.").unwrap();
        assert_eq!(parse_cells(&cells_json(&p)).unwrap(), p);
        assert!(matches!(parse_cells("{\"cells\": [[0,0],[2,0]]}"), Err(IoError::Polyomino(PolyominoError::Disconnected))));
        assert!(parse_cells("{\"cells\": [[0.5,0]]}").is_err());
    }

    #[test]
    fn hdj_round_trip() {
        let p = parse_grid("###\n.#.").unwrap();
        let f = fold_chain(&p);
        let doc = HdjDocument {
            figure: f.figure,
            configurations: vec![NamedConfiguration { name: "T".into(), config: f.config }],
            targets: vec![NamedTarget { name: "T".into(), target: Target::Polyomino(p) }],
            cell_map: Some(f.cell_map),
        };
        let text = doc.to_json();
        assert!(text.contains("\"cell_map\""));
        let back = HdjDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let r = verify_configuration(&back.figure, &back.configurations[0].config, back.target_for(0).unwrap()).unwrap();
        assert!(r.accepted);
    }

    #[test]
    fn dudeney_asset_parses() {
        let doc = HdjDocument::from_json(DUDENEY_HDJ).unwrap();
        assert_eq!(doc.figure.piece_count(), 4);
        assert_eq!(doc.configurations.len(), 2);
        assert!(!doc.configurations[0].config.is_exact());
        let again = HdjDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(again.figure, doc.figure);
    }

    #[test]
    fn hdj_rejections() {
        assert!(matches!(HdjDocument::from_json("{"), Err(IoError::Json(_))));
        let bad_topology = DUDENEY_HDJ.replace("\"general\"", "\"tree\"");
        assert!(matches!(HdjDocument::from_json(&bad_topology), Err(IoError::Format(_))));
        let bad_mode = DUDENEY_HDJ.replacen("\"approx\"", "\"fuzzy\"", 1);
        assert!(HdjDocument::from_json(&bad_mode).is_err());
    }

    #[test]
    fn chart_round_trip() {
        let sq = SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let t = SimplePolygon::from_ints(&[(0, 0), (4, 0), (0, 2)]).unwrap();
        let c = mutual_chart(&sq, &t, &rat(2)).unwrap();
        let back = chart_from_json(&chart_to_json(&c)).unwrap();
        assert_eq!(back.pieces, c.pieces);
        assert_eq!(back.exact_target_motions(), c.exact_target_motions());
        assert!(verify_chart(&back, 1e-9).accepted);
    }
}
