//! Shipped example shapes.

use thiserror::Error;

use crate::polyomino::{parse_grid, Polyomino};

/// The four-piece square/triangle hinged dissection, as HDJ text.
pub const DUDENEY_HDJ: &str = include_str!("../assets/dudeney.hdj");

const GLYPHS: &[(&str, &str)] = &[
    ("I", include_str!("../assets/glyphs/I.txt")),
    ("L", include_str!("../assets/glyphs/L.txt")),
    ("O", include_str!("../assets/glyphs/O.txt")),
    ("T", include_str!("../assets/glyphs/T.txt")),
    ("7", include_str!("../assets/glyphs/7.txt")),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown sample shape {0:?} (available: I, L, O, T, 7)")]
pub struct UnknownShape(pub String);

/// Names of the shipped glyphs.
pub fn sample_names() -> impl Iterator<Item = &'static str> {
    GLYPHS.iter().map(|(n, _)| *n)
}

/// Loads a shipped 64-cell glyph.
pub fn load_sample_shape(name: &str) -> Result<Polyomino, UnknownShape> {
    let (_, text) = GLYPHS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| UnknownShape(name.to_string()))?;
    Ok(parse_grid(text).expect("shipped glyph parses"))
}
