//! Hinged dissections of polyominoes and classical dissections of polygons.
//!
//! `chain` folds a cycle of 2n half-square triangles onto any n-omino,
//! `figure` verifies configurations exactly, `bg` builds mutual dissections
//! of equal-area polygons through stacked rectangles, `kinematics` swings one
//! configuration into another, and `svg` draws the results.

pub mod geom;
pub mod polyomino;
pub mod figure;
pub mod chain;
pub mod samples;
pub mod bg;
pub mod io;
pub mod kinematics;
pub mod svg;
pub mod cli;
