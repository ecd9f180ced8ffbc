#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use hingefold::chain::PlacedTriangle;
use hingefold::polyomino::{parse_grid, Cell, Polyomino};

pub const TETROMINOES: [(&str, &str); 5] = [
    ("I", "####"),
    ("O", "##\n##"),
    ("T", "###\n.#."),
    ("S", ".##\n##."),
    ("L", "#..\n###"),
];

pub const PENTOMINOES: [(&str, &str); 12] = [
    ("F", ".##\n##.\n.#."),
    ("I", "#####"),
    ("L", "#...\n####"),
    ("N", "##..\n.###"),
    ("P", "##\n##\n#."),
    ("T", "###\n.#.\n.#."),
    ("U", "#.#\n###"),
    ("V", "#..\n#..\n###"),
    ("W", "#..\n##.\n.##"),
    ("X", ".#.\n###\n.#."),
    ("Y", "..#.\n####"),
    ("Z", "##.\n.#.\n.##"),
];

pub fn grid(text: &str) -> Polyomino {
    parse_grid(text).expect("test grid parses")
}

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hingefold"))
}

pub fn asset(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("assets").join(name)
}

/// Both half-square triangles of `cell` for each of its two diagonals.
fn tilings_of_cell(cell: Cell) -> [[PlacedTriangle; 2]; 2] {
    let [ll, lr, ur, ul] = cell.corners();
    let split = |a, b| {
        [
            PlacedTriangle::in_cell(cell, a, b).expect("diagonal"),
            PlacedTriangle::in_cell(cell, b, a).expect("diagonal"),
        ]
    };
    [split(ll, ur), split(lr, ul)]
}

fn extend(
    tris: &[PlacedTriangle],
    used: &mut Vec<bool>,
    cycle: &mut Vec<PlacedTriangle>,
    out: &mut BTreeSet<Vec<PlacedTriangle>>,
) {
    if cycle.len() == tris.len() {
        if cycle[cycle.len() - 1].base_u == cycle[0].base_v {
            out.insert(cycle.clone());
        }
        return;
    }
    for i in 0..tris.len() {
        if used[i] {
            continue;
        }
        if let Some(last) = cycle.last() {
            if last.base_u != tris[i].base_v {
                continue;
            }
        }
        used[i] = true;
        cycle.push(tris[i]);
        extend(tris, used, cycle, out);
        cycle.pop();
        used[i] = false;
    }
}

/// Every cyclic sequence of half-square triangles tiling `p` in which each
/// triangle's `base_u` coincides with the next one's `base_v`.
///
/// Exhaustive over diagonal choices and orderings; meant for tiny shapes.
pub fn brute_force_cycles(p: &Polyomino) -> BTreeSet<Vec<PlacedTriangle>> {
    let cells: Vec<Cell> = p.cells().iter().copied().collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << cells.len()) {
        let tris: Vec<PlacedTriangle> = cells
            .iter()
            .enumerate()
            .flat_map(|(k, &c)| tilings_of_cell(c)[((mask >> k) & 1) as usize])
            .collect();
        extend(&tris, &mut vec![false; tris.len()], &mut Vec::new(), &mut out);
    }
    out
}
