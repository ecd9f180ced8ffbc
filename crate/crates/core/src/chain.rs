//! Folding the universal cycle of `2n` half-square triangles onto an `n`-omino.
//!
//! The fold grows along a depth-first spanning tree of the cells. The root
//! cell is split along its anti-diagonal into two triangles hinged at
//! `(x+1, y)` and `(x, y+1)`. Every later cell `s`, attached to its parent
//! along a unit edge `e`, is added by a splice: take a hinge sitting on an
//! endpoint `u` of `e`, and insert two triangles `X`, `Y` covering `s` between
//! the pieces meeting there, so the chain runs `P -u- X -u*- Y -u- Q` where
//! `u*` is the corner of `s` opposite `u`.
//!
//! Every occupied cell carries hinges at two opposite corners; each edge of the
//! cell has exactly one of them as an endpoint.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use thiserror::Error;

use crate::figure::{canonical_chain_figure, Configuration, HingedFigure};
use crate::geom::{orient, RigidMotion, SimplePolygon};
use crate::polyomino::{dual_spanning_tree, Cell, LatticePoint, Polyomino};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("bad splice: {0}")]
    BadSplice(String),
    #[error("polyominoes have different cell counts ({0} vs {1})")]
    AreaMismatch(usize, usize),
}

/// A half-square triangle on the lattice. `base_u`/`base_v` are its 45°
/// corners, listed so that `(right_angle, base_u, base_v)` turns left; they
/// play the roles of local vertices 1 and 2 of the canonical piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlacedTriangle {
    pub right_angle: LatticePoint,
    pub base_u: LatticePoint,
    pub base_v: LatticePoint,
}

impl PlacedTriangle {
    /// The half of `cell` with hypotenuse `base_u`-`base_v` whose corners run
    /// counterclockwise from the right angle, if those are opposite corners.
    pub fn in_cell(cell: Cell, base_u: LatticePoint, base_v: LatticePoint) -> Option<Self> {
        if !cell.has_corner(base_u) || !cell.has_corner(base_v) {
            return None;
        }
        if (base_u.x - base_v.x).abs() != 1 || (base_u.y - base_v.y).abs() != 1 {
            return None;
        }
        cell.corners()
            .into_iter()
            .filter(|&c| c != base_u && c != base_v)
            .map(|c| PlacedTriangle { right_angle: c, base_u, base_v })
            .find(|t| orient(&t.right_angle.to_point(), &t.base_u.to_point(), &t.base_v.to_point()).is_positive())
    }

    pub fn cell(&self) -> Cell {
        Cell::new(self.base_u.x.min(self.base_v.x), self.base_u.y.min(self.base_v.y))
    }

    /// Motion carrying the canonical piece `(0,0), (1,0), (0,1)` onto this triangle.
    pub fn motion(&self) -> RigidMotion {
        let (c, s) = (self.base_u.x - self.right_angle.x, self.base_u.y - self.right_angle.y);
        let k = match (c, s) {
            (1, 0) => 0,
            (0, 1) => 1,
            (-1, 0) => 2,
            _ => 3,
        };
        RigidMotion::translation(self.right_angle.to_point()).compose(&RigidMotion::quarter_turns(k))
    }

    pub fn polygon(&self) -> SimplePolygon {
        SimplePolygon::new(vec![self.right_angle.to_point(), self.base_u.to_point(), self.base_v.to_point()])
            .expect("lattice half-square")
    }
}

/// A cycle of placed triangles under construction. Hinge `i` joins piece `i`
/// (at its `base_u`) to piece `i + 1` (at its `base_v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFold {
    cycle: Vec<PlacedTriangle>,
    occupied: BTreeSet<Cell>,
}

impl PartialFold {
    /// Two triangles splitting `root` along its anti-diagonal.
    pub fn base(root: Cell) -> Self {
        let (x, y) = (root.x, root.y);
        let east = LatticePoint::new(x + 1, y);
        let north = LatticePoint::new(x, y + 1);
        let lower = PlacedTriangle { right_angle: LatticePoint::new(x, y), base_u: east, base_v: north };
        let upper = PlacedTriangle { right_angle: LatticePoint::new(x + 1, y + 1), base_u: north, base_v: east };
        PartialFold { cycle: vec![lower, upper], occupied: BTreeSet::from([root]) }
    }

    pub fn cycle(&self) -> &[PlacedTriangle] {
        &self.cycle
    }

    pub fn occupied(&self) -> &BTreeSet<Cell> {
        &self.occupied
    }

    /// Location of hinge `i`.
    pub fn hinge_point(&self, i: usize) -> LatticePoint {
        self.cycle[i].base_u
    }

    pub fn hinge_points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.cycle.iter().map(|t| t.base_u)
    }

    /// Lowest cycle index of a hinge located at `p`.
    pub fn hinge_index_at(&self, p: LatticePoint) -> Option<usize> {
        self.cycle.iter().position(|t| t.base_u == p)
    }

    /// Adds `cell` by splicing two triangles into the hinge at `at`.
    ///
    /// `at` must be a corner of `cell` on an edge it shares with an occupied
    /// cell, and some hinge must sit there; the lowest-index one is used.
    pub fn splice_step(&mut self, at: LatticePoint, cell: Cell) -> Result<(), ChainError> {
        if self.occupied.contains(&cell) {
            return Err(ChainError::BadSplice(format!("cell ({}, {}) is already covered", cell.x, cell.y)));
        }
        let attached = cell.neighbors().into_iter().any(|nb| {
            self.occupied.contains(&nb)
                && cell.shared_edge(nb).is_some_and(|(a, b)| a == at || b == at)
        });
        if !attached {
            return Err(ChainError::BadSplice(format!(
                "{at} is not on an edge joining cell ({}, {}) to the covered region",
                cell.x, cell.y
            )));
        }
        let Some(i) = self.hinge_index_at(at) else {
            return Err(ChainError::BadSplice(format!("no hinge at {at}")));
        };
        let opposite = LatticePoint::new(2 * cell.x + 1 - at.x, 2 * cell.y + 1 - at.y);
        let x = PlacedTriangle::in_cell(cell, opposite, at).expect("opposite corners of one cell");
        let y = PlacedTriangle::in_cell(cell, at, opposite).expect("opposite corners of one cell");
        self.cycle.splice(i + 1..i + 1, [x, y]);
        self.occupied.insert(cell);
        Ok(())
    }
}

/// A folding of the canonical chain onto a polyomino.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldResult {
    pub figure: HingedFigure,
    pub config: Configuration,
    /// The two pieces covering each cell, lower index first.
    pub cell_map: BTreeMap<Cell, (usize, usize)>,
    pub triangles: Vec<PlacedTriangle>,
}

/// Folds the canonical `2n`-piece cycle onto `p`.
pub fn fold_chain(p: &Polyomino) -> FoldResult {
    let tree = dual_spanning_tree(p);
    let mut fold = PartialFold::base(tree.root);
    for entry in &tree.entries {
        // edge endpoints are in lexicographic order
        let (a, b) = entry.edge;
        let at = if fold.hinge_index_at(a).is_some() { a } else { b };
        fold.splice_step(at, entry.cell).expect("hinge availability holds along the tree");
    }
    let triangles = fold.cycle;
    let mut cell_map: BTreeMap<Cell, (usize, usize)> = BTreeMap::new();
    for (i, t) in triangles.iter().enumerate() {
        cell_map.entry(t.cell()).and_modify(|e| e.1 = i).or_insert((i, i));
    }
    let figure = canonical_chain_figure(p.cell_count() as i64).expect("non-empty polyomino");
    let config = Configuration::Exact(triangles.iter().map(PlacedTriangle::motion).collect());
    FoldResult { figure, config, cell_map, triangles }
}

/// A hinged dissection between two polyominoes of equal area.
#[derive(Clone, Debug, PartialEq)]
pub struct HingedDissection {
    pub figure: HingedFigure,
    pub config_a: Configuration,
    pub config_b: Configuration,
    pub target_a: Polyomino,
    pub target_b: Polyomino,
}

pub fn dissect_pair(a: &Polyomino, b: &Polyomino) -> Result<HingedDissection, ChainError> {
    if a.cell_count() != b.cell_count() {
        return Err(ChainError::AreaMismatch(a.cell_count(), b.cell_count()));
    }
    let fa = fold_chain(a);
    let fb = fold_chain(b);
    debug_assert_eq!(fa.figure, fb.figure);
    Ok(HingedDissection {
        figure: fa.figure,
        config_a: fa.config,
        config_b: fb.config,
        target_a: a.clone(),
        target_b: b.clone(),
    })
}
