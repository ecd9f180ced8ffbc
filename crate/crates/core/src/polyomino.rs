//! Polyominoes: parsing, validation, boundary tracing, dual spanning trees
//! and seeded random generation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::{Point2, SimplePolygon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyominoError {
    #[error("shape has no cells")]
    EmptyShape,
    #[error("cells are not edge-connected")]
    Disconnected,
    #[error("unexpected character {ch:?} at line {line}, column {column}")]
    BadCharacter { ch: char, line: usize, column: usize },
    #[error("cell set encloses a hole")]
    HolePresent,
    #[error("cell count must be at least 1, got {0}")]
    BadSize(i64),
}

/// A unit grid cell covering `[x, x+1] × [y, y+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    /// East, North, West, South.
    pub fn neighbors(self) -> [Cell; 4] {
        [
            Cell::new(self.x + 1, self.y),
            Cell::new(self.x, self.y + 1),
            Cell::new(self.x - 1, self.y),
            Cell::new(self.x, self.y - 1),
        ]
    }

    /// Corners in counterclockwise order starting at the lower-left.
    pub fn corners(self) -> [LatticePoint; 4] {
        let (x, y) = (self.x, self.y);
        [LatticePoint::new(x, y), LatticePoint::new(x + 1, y), LatticePoint::new(x + 1, y + 1), LatticePoint::new(x, y + 1)]
    }

    /// The unit edge shared with an edge-adjacent cell, endpoints in
    /// lexicographic order.
    pub fn shared_edge(self, other: Cell) -> Option<(LatticePoint, LatticePoint)> {
        let (x, y) = (self.x, self.y);
        match (other.x - x, other.y - y) {
            (1, 0) => Some((LatticePoint::new(x + 1, y), LatticePoint::new(x + 1, y + 1))),
            (-1, 0) => Some((LatticePoint::new(x, y), LatticePoint::new(x, y + 1))),
            (0, 1) => Some((LatticePoint::new(x, y + 1), LatticePoint::new(x + 1, y + 1))),
            (0, -1) => Some((LatticePoint::new(x, y), LatticePoint::new(x + 1, y))),
            _ => None,
        }
    }

    pub fn has_corner(self, p: LatticePoint) -> bool {
        (p.x == self.x || p.x == self.x + 1) && (p.y == self.y || p.y == self.y + 1)
    }

    pub fn polygon(self) -> SimplePolygon {
        SimplePolygon::from_ints(&[(self.x, self.y), (self.x + 1, self.y), (self.x + 1, self.y + 1), (self.x, self.y + 1)])
            .expect("unit square")
    }
}

/// An integer grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn to_point(self) -> Point2 {
        Point2::from_ints(self.x, self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A finite, non-empty, edge-connected set of unit cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyomino {
    cells: BTreeSet<Cell>,
}

fn is_connected(cells: &BTreeSet<Cell>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for nb in c.neighbors() {
            if cells.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == cells.len()
}

impl Polyomino {
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self, PolyominoError> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(PolyominoError::EmptyShape);
        }
        if !is_connected(&cells) {
            return Err(PolyominoError::Disconnected);
        }
        Ok(Polyomino { cells })
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Lexicographically smallest cell.
    pub fn min_cell(&self) -> Cell {
        *self.cells.iter().next().expect("non-empty")
    }

    pub fn bounds(&self) -> (Cell, Cell) {
        let min_x = self.cells.iter().map(|c| c.x).min().unwrap();
        let min_y = self.cells.iter().map(|c| c.y).min().unwrap();
        let max_x = self.cells.iter().map(|c| c.x).max().unwrap();
        let max_y = self.cells.iter().map(|c| c.y).max().unwrap();
        (Cell::new(min_x, min_y), Cell::new(max_x, max_y))
    }

    /// Translate so the bounding box starts at `(0, 0)`.
    pub fn normalized(&self) -> Polyomino {
        let (lo, _) = self.bounds();
        Polyomino { cells: self.cells.iter().map(|c| Cell::new(c.x - lo.x, c.y - lo.y)).collect() }
    }

    /// Empty cells not reachable from outside the bounding box.
    pub fn holes(&self) -> BTreeSet<Cell> {
        let (lo, hi) = self.bounds();
        let (x0, y0, x1, y1) = (lo.x - 1, lo.y - 1, hi.x + 1, hi.y + 1);
        let inside = |c: Cell| c.x >= x0 && c.x <= x1 && c.y >= y0 && c.y <= y1;
        let start = Cell::new(x0, y0);
        let mut outside = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for nb in c.neighbors() {
                if inside(nb) && !self.cells.contains(&nb) && outside.insert(nb) {
                    queue.push_back(nb);
                }
            }
        }
        (lo.x..=hi.x)
            .flat_map(|x| (lo.y..=hi.y).map(move |y| Cell::new(x, y)))
            .filter(|c| !self.cells.contains(c) && !outside.contains(c))
            .collect()
    }

    /// ASCII grid, first row on top.
    pub fn to_grid(&self) -> String {
        let (lo, hi) = self.bounds();
        let mut out = String::new();
        for y in (lo.y..=hi.y).rev() {
            for x in lo.x..=hi.x {
                out.push(if self.contains(Cell::new(x, y)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

/// Parses rows of `#` and `.`; the first row is the top of the shape.
pub fn parse_grid(text: &str) -> Result<Polyomino, PolyominoError> {
    let rows: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let rows: Vec<&str> = {
        let last = rows.iter().rposition(|r| !r.trim().is_empty()).map_or(0, |i| i + 1);
        rows[..last].to_vec()
    };
    let height = rows.len() as i64;
    let mut cells = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        for (col, ch) in row.chars().enumerate() {
            match ch {
                '#' => {
                    cells.insert(Cell::new(col as i64, height - 1 - r as i64));
                }
                '.' | ' ' => {}
                other => return Err(PolyominoError::BadCharacter { ch: other, line: r + 1, column: col + 1 }),
            }
        }
    }
    Ok(Polyomino::from_cells(cells)?.normalized())
}

/// Outer boundary as a counterclockwise lattice polygon.
pub fn boundary_polygon(p: &Polyomino) -> Result<SimplePolygon, PolyominoError> {
    if !p.holes().is_empty() {
        return Err(PolyominoError::HolePresent);
    }
    // Directed boundary edges with the interior on the left.
    let mut next: BTreeMap<LatticePoint, LatticePoint> = BTreeMap::new();
    for &c in p.cells() {
        let [ll, lr, ur, ul] = c.corners();
        let [e, n, w, s] = c.neighbors();
        if !p.contains(s) {
            next.insert(ll, lr);
        }
        if !p.contains(e) {
            next.insert(lr, ur);
        }
        if !p.contains(n) {
            next.insert(ur, ul);
        }
        if !p.contains(w) {
            next.insert(ul, ll);
        }
    }
    let start = *next.keys().next().expect("non-empty shape has a boundary");
    let mut ring = vec![start.to_point()];
    let mut cur = next[&start];
    while cur != start {
        ring.push(cur.to_point());
        cur = next[&cur];
    }
    Ok(SimplePolygon::new(ring).expect("hole-free polyomino boundary is simple"))
}

/// One tree edge of a dual spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEntry {
    pub cell: Cell,
    pub parent: Cell,
    pub edge: (LatticePoint, LatticePoint),
}

/// Depth-first spanning tree of the cell adjacency graph, in preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpanningTree {
    pub root: Cell,
    pub entries: Vec<TreeEntry>,
}

/// Deterministic DFS from the smallest cell, visiting E, N, W, S.
pub fn dual_spanning_tree(p: &Polyomino) -> DualSpanningTree {
    let root = p.min_cell();
    let mut seen = BTreeSet::from([root]);
    let mut entries = Vec::with_capacity(p.cell_count() - 1);
    let mut stack: Vec<(Cell, usize)> = vec![(root, 0)];
    while let Some((cell, dir)) = stack.last_mut() {
        if *dir == 4 {
            stack.pop();
            continue;
        }
        let cell = *cell;
        let nb = cell.neighbors()[*dir];
        *dir += 1;
        if p.contains(nb) && seen.insert(nb) {
            let edge = cell.shared_edge(nb).expect("neighbors share an edge");
            entries.push(TreeEntry { cell: nb, parent: cell, edge });
            stack.push((nb, 0));
        }
    }
    DualSpanningTree { root, entries }
}

/// Seeded random growth from a single cell.
pub fn random_polyomino(n: i64, seed: u64) -> Result<Polyomino, PolyominoError> {
    if n < 1 {
        return Err(PolyominoError::BadSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = BTreeSet::from([Cell::new(0, 0)]);
    let mut frontier: BTreeSet<Cell> = Cell::new(0, 0).neighbors().into_iter().collect();
    while (cells.len() as i64) < n {
        let pick = *frontier.iter().choose(&mut rng).expect("frontier of a finite shape is non-empty");
        frontier.remove(&pick);
        cells.insert(pick);
        for nb in pick.neighbors() {
            if !cells.contains(&nb) {
                frontier.insert(nb);
            }
        }
    }
    Ok(Polyomino::from_cells(cells)?.normalized())
}
