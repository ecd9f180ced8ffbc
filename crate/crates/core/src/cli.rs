//! The `hingefold` command line.
//!
//! Exit codes: 0 success, 1 verification rejected, 2 invalid input,
//! 3 internal error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde_json::json;

use crate::bg::{mutual_chart, verify_chart, BgError};
use crate::chain::{dissect_pair, fold_chain, ChainError};
use crate::figure::{verify_configuration, Configuration, VerifyReport, DEFAULT_TOLERANCE};
use crate::geom::parse_rational;
use crate::io::{chart_to_json, parse_cells, parse_polygon, HdjDocument, IoError};
use crate::kinematics::{default_cut, sample_motion};
use crate::polyomino::{parse_grid, random_polyomino, Polyomino};
use crate::samples::load_sample_shape;
use crate::svg::{render_animation, render_chart, render_config, RenderStyle};

#[derive(Debug)]
pub enum CliError {
    Rejected(String),
    Invalid(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Rejected(m) | CliError::Invalid(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "hingefold", version, about = "Hinged dissections of polyominoes and polygons")]
pub struct Cli {
    /// More log output on stderr (repeatable)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Approx,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fold the 2n-triangle chain onto a polyomino
    Fold {
        /// ASCII grid ('#' filled)
        #[arg(long = "in", conflicts_with_all = ["cells", "sample"])]
        input: Option<PathBuf>,
        /// JSON {"cells": [[x, y], ...]}
        #[arg(long, conflicts_with = "sample")]
        cells: Option<PathBuf>,
        /// Shipped 64-cell glyph (I, L, O, T, 7)
        #[arg(long)]
        sample: Option<String>,
        /// HDJ output
        #[arg(long)]
        out: PathBuf,
    },
    /// Hinged dissection between two polyominoes of equal area
    Dissect {
        /// Grid or cells JSON
        #[arg(long)]
        a: PathBuf,
        /// Grid or cells JSON, same cell count as --a
        #[arg(long)]
        b: PathBuf,
        /// HDJ output
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify every configuration of an HDJ file against its target
    Verify {
        /// HDJ input
        file: PathBuf,
        /// Defaults to each configuration's own mode
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Tolerance for approximate checks
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Animate between the first two configurations of an HDJ file
    Animate {
        /// HDJ input with at least two configurations
        file: PathBuf,
        /// Frame count, at least 2
        #[arg(long, default_value_t = 60)]
        frames: usize,
        /// Hinge to cut (default: the last)
        #[arg(long)]
        cut: Option<usize>,
        /// Animated SVG output
        #[arg(long)]
        out: PathBuf,
        /// Write per-frame placements and overlaps as JSON
        #[arg(long = "report-overlaps")]
        report: Option<PathBuf>,
    },
    /// Render one configuration of an HDJ file as SVG
    Render {
        /// HDJ input
        file: PathBuf,
        /// Configuration index
        #[arg(long, default_value_t = 0)]
        config: usize,
        /// SVG output
        #[arg(long)]
        out: PathBuf,
        /// Pixels per unit
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        /// Mark hinge points
        #[arg(long)]
        hinges: bool,
        /// Number the pieces
        #[arg(long)]
        labels: bool,
    },
    /// Random polyomino as an ASCII grid
    Gen {
        /// Cell count, at least 1
        #[arg(long)]
        cells: i64,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unhinged mutual dissection of two equal-area polygons
    Bg {
        /// Polygon JSON: [[x, y], ...] or {"vertices": [...]}
        #[arg(long)]
        a: PathBuf,
        /// Polygon JSON with the same area as --a
        #[arg(long)]
        b: PathBuf,
        /// Common rectangle width, as p/q or decimal
        #[arg(long, default_value = "1")]
        width: String,
        /// Chart JSON output
        #[arg(long)]
        out: PathBuf,
        /// Also draw the chart as SVG
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Relative tolerance for the target-side checks
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
    info!("wrote {}", path.display());
    Ok(())
}

/// Reads a grid, or cells JSON when the text starts with `{`.
fn read_polyomino(path: &Path) -> Result<Polyomino, CliError> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        Ok(parse_cells(&text)?)
    } else {
        parse_grid(&text).map_err(invalid)
    }
}

fn verify_doc(doc: &HdjDocument, mode: Option<Mode>, tol: f64) -> Result<Vec<(String, VerifyReport)>, CliError> {
    let mut out = Vec::new();
    for (i, c) in doc.configurations.iter().enumerate() {
        let target = doc.target_for(i).ok_or_else(|| CliError::Invalid(format!("no target for configuration {:?}", c.name)))?;
        let config = match (mode, &c.config) {
            (Some(Mode::Exact), Configuration::Approx { .. }) => {
                return Err(CliError::Invalid(format!("configuration {:?} is approximate; use --mode approx", c.name)))
            }
            (Some(Mode::Approx), cfg) => cfg.to_approx(tol),
            (None, Configuration::Approx { placements, .. }) => Configuration::Approx { placements: placements.clone(), tolerance: tol },
            (_, cfg) => cfg.clone(),
        };
        let report = verify_configuration(&doc.figure, &config, target).map_err(invalid)?;
        out.push((c.name.clone(), report));
    }
    Ok(out)
}

fn all_accepted(reports: &[(String, VerifyReport)]) -> bool {
    reports.iter().all(|(_, r)| r.accepted)
}

fn self_check(doc: &HdjDocument) -> Result<(), CliError> {
    let reports = verify_doc(doc, None, DEFAULT_TOLERANCE)?;
    if all_accepted(&reports) {
        Ok(())
    } else {
        let detail: Vec<String> = reports.iter().map(|(n, r)| format!("{n}:\n{r}")).collect();
        Err(internal(format!("constructed configuration failed verification\n{}", detail.join("\n"))))
    }
}

fn cmd_fold(input: Option<PathBuf>, cells: Option<PathBuf>, sample: Option<String>, out: &Path) -> Result<(), CliError> {
    let p = match (input, cells, sample) {
        (Some(path), None, None) => parse_grid(&read(&path)?).map_err(invalid)?,
        (None, Some(path), None) => parse_cells(&read(&path)?)?,
        (None, None, Some(name)) => load_sample_shape(&name).map_err(invalid)?,
        _ => return Err(CliError::Invalid("give exactly one of --in, --cells, --sample".into())),
    };
    let f = fold_chain(&p);
    let doc = HdjDocument::from_fold(p, f);
    self_check(&doc)?;
    write(out, &doc.to_json())?;
    println!("folded {} pieces", doc.figure.piece_count());
    Ok(())
}

fn cmd_dissect(a: &Path, b: &Path, out: &Path) -> Result<(), CliError> {
    let (pa, pb) = (read_polyomino(a)?, read_polyomino(b)?);
    let d = dissect_pair(&pa, &pb).map_err(|e: ChainError| invalid(e))?;
    let doc = HdjDocument::from_dissection(d);
    self_check(&doc)?;
    write(out, &doc.to_json())?;
    println!("dissection with {} pieces", doc.figure.piece_count());
    Ok(())
}

fn cmd_verify(file: &Path, mode: Option<Mode>, tol: f64) -> Result<(), CliError> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(CliError::Invalid(format!("bad tolerance {tol}")));
    }
    let doc = HdjDocument::from_json(&read(file)?)?;
    println!("{} pieces, {} hinges ({})", doc.figure.piece_count(), doc.figure.hinges().len(), doc.figure.topology());
    let reports = verify_doc(&doc, mode, tol)?;
    if reports.is_empty() {
        return Err(CliError::Invalid("file has no configurations".into()));
    }
    for (name, r) in &reports {
        println!("configuration {name:?}:\n{r}");
    }
    if all_accepted(&reports) {
        Ok(())
    } else {
        let failed: Vec<String> = reports
            .iter()
            .filter(|(_, r)| !r.accepted)
            .map(|(n, r)| format!("{n} ({})", r.failures.iter().map(|f| f.check.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        Err(CliError::Rejected(format!("rejected: {}", failed.join("; "))))
    }
}

fn cmd_animate(file: &Path, frames: usize, cut: Option<usize>, out: &Path, report: Option<PathBuf>) -> Result<(), CliError> {
    if frames < 2 {
        return Err(CliError::Invalid(format!("--frames must be at least 2, got {frames}")));
    }
    let doc = HdjDocument::from_json(&read(file)?)?;
    if doc.configurations.len() < 2 {
        return Err(CliError::Invalid("animation needs two configurations".into()));
    }
    let cut = cut.unwrap_or_else(|| default_cut(&doc.figure));
    let reports = verify_doc(&doc, None, DEFAULT_TOLERANCE)?;
    if !all_accepted(&reports[..2]) {
        return Err(CliError::Rejected("input configurations do not verify".into()));
    }
    let (ca, cb) = (&doc.configurations[0].config, &doc.configurations[1].config);
    let samples = sample_motion(&doc.figure, ca, cb, frames, cut).map_err(invalid)?;
    let svg = render_animation(&doc.figure, &samples, &RenderStyle::default()).map_err(internal)?;
    write(out, &svg)?;
    let overlapping = samples.iter().filter(|s| !s.overlaps.is_empty()).count();
    if let Some(path) = report {
        let frames_json: Vec<_> = samples
            .iter()
            .map(|s| {
                json!({
                    "t": s.t,
                    "placements": s.placements.iter().map(|m| json!({"cos": m.cos, "sin": m.sin, "tx": m.tx, "ty": m.ty})).collect::<Vec<_>>(),
                    "overlaps": s.overlaps.iter().map(|&(i, j, a)| json!([i, j, a])).collect::<Vec<_>>(),
                })
            })
            .collect();
        let text = serde_json::to_string_pretty(&json!({ "cut": cut, "frames": frames_json })).map_err(internal)?;
        write(&path, &text)?;
    }
    println!("{frames} frames, {overlapping} with overlapping pieces");
    Ok(())
}

fn cmd_render(file: &Path, config: usize, out: &Path, style: RenderStyle) -> Result<(), CliError> {
    let doc = HdjDocument::from_json(&read(file)?)?;
    let c = doc
        .configurations
        .get(config)
        .ok_or_else(|| CliError::Invalid(format!("no configuration {config}")))?;
    let svg = render_config(&doc.figure, &c.config, &style).map_err(invalid)?;
    write(out, &svg)
}

fn cmd_gen(cells: i64, seed: u64, out: Option<PathBuf>) -> Result<(), CliError> {
    let p = random_polyomino(cells, seed).map_err(invalid)?;
    let text = p.to_grid();
    match out {
        Some(path) => write(&path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_bg(a: &Path, b: &Path, width: &str, out: &Path, svg: Option<PathBuf>, tol: f64) -> Result<(), CliError> {
    let w = parse_rational(width).map_err(invalid)?;
    let (pa, pb) = (parse_polygon(&read(a)?)?, parse_polygon(&read(b)?)?);
    let chart = mutual_chart(&pa, &pb, &w).map_err(|e| match e {
        BgError::AreaMismatch(..) | BgError::BadWidth(_) | BgError::Geom(_) => invalid(e),
        other => internal(other),
    })?;
    let report = verify_chart(&chart, tol);
    if !report.accepted {
        return Err(CliError::Rejected(format!("mutual chart failed verification\n{report}")));
    }
    write(out, &chart_to_json(&chart))?;
    if let Some(path) = svg {
        write(&path, &render_chart(&chart, &RenderStyle::default()).map_err(internal)?)?;
    }
    println!("{} pieces", chart.pieces.len());
    Ok(())
}

/// Runs one command line and returns its exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
    let result = match cli.command {
        Command::Fold { input, cells, sample, out } => cmd_fold(input, cells, sample, &out),
        Command::Dissect { a, b, out } => cmd_dissect(&a, &b, &out),
        Command::Verify { file, mode, tol } => cmd_verify(&file, mode, tol),
        Command::Animate { file, frames, cut, out, report } => cmd_animate(&file, frames, cut, &out, report),
        Command::Render { file, config, out, scale, hinges, labels } => {
            cmd_render(&file, config, &out, RenderStyle { scale, show_hinges: hinges, show_labels: labels, ..Default::default() })
        }
        Command::Gen { cells, seed, out } => cmd_gen(cells, seed, out),
        Command::Bg { a, b, width, out, svg, tol } => cmd_bg(&a, &b, &width, &out, svg, tol),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            if matches!(e, CliError::Internal(_)) {
                warn!("internal error");
            }
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_subcommands() {
        for args in [
            vec!["hingefold", "fold", "--in", "a.txt", "--out", "x.hdj"],
            vec!["hingefold", "dissect", "--a", "a", "--b", "b", "--out", "o"],
            vec!["hingefold", "verify", "f.hdj", "--mode", "approx", "--tol", "1e-6"],
            vec!["hingefold", "animate", "f.hdj", "--frames", "5", "--cut", "1", "--out", "a.svg", "--report-overlaps", "r.json"],
            vec!["hingefold", "render", "f.hdj", "--out", "r.svg", "--hinges"],
            vec!["hingefold", "gen", "--cells", "4", "--seed", "9"],
            vec!["hingefold", "bg", "--a", "a.json", "--b", "b.json", "--width", "2", "--out", "c.json"],
        ] {
            assert!(Cli::try_parse_from(args.clone()).is_ok(), "{args:?}");
        }
        assert!(Cli::try_parse_from(["hingefold", "fold", "--in", "a", "--cells", "b", "--out", "c"]).is_err());
    }

    #[test]
    fn bad_flags_exit_2() {
        assert_eq!(run(["hingefold", "nope"]), 2);
        assert_eq!(run(["hingefold", "gen", "--cells", "0"]), 2);
        assert_eq!(run(["hingefold", "verify", "/nonexistent/file.hdj"]), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Rejected(String::new()).exit_code(), 1);
        assert_eq!(CliError::Invalid(String::new()).exit_code(), 2);
        assert_eq!(CliError::Internal(String::new()).exit_code(), 3);
    }
}
