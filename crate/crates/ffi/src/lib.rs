//! C interface to `hingefold`.
//!
//! Objects are opaque handles created by `hf_*_new`/constructor calls and
//! released with the matching `hf_*_free`. Every fallible call returns an
//! `HfStatus`; on failure `hf_last_error` describes what went wrong. Strings
//! returned through out-parameters are owned by the caller and released with
//! `hf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hingefold::bg::{mutual_chart, verify_chart, BgError, DissectionChart};
use hingefold::chain::{dissect_pair, fold_chain};
use hingefold::figure::{verify_configuration, Configuration};
use hingefold::geom::parse_rational;
use hingefold::io::{chart_to_json, parse_polygon, HdjDocument};
use hingefold::polyomino::{parse_grid, random_polyomino, Polyomino};
use hingefold::svg::{render_config, RenderStyle};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    /// Verification ran and rejected the input.
    Rejected = 1,
    /// Malformed or out-of-range input.
    Invalid = 2,
    NullArgument = 3,
    /// A panic was caught at the boundary.
    Internal = 4,
}

/// Edge-connected set of grid cells.
pub struct HfPolyomino(Polyomino);

/// Hinged figure with its configurations and targets.
pub struct HfDocument(HdjDocument);

/// Unhinged mutual dissection of two polygons.
pub struct HfChart(DissectionChart);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(HfStatus, String);

fn invalid(e: impl std::fmt::Display) -> Fail {
    Fail(HfStatus::Invalid, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HfStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            HfStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HfStatus::NullArgument, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid("string is not UTF-8"))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(HfStatus::NullArgument, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(HfStatus::NullArgument, "null out pointer".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(HfStatus::NullArgument, "null out pointer".into()));
    }
    *out = CString::new(s).map_err(invalid)?.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next `hf_*` call on the same thread.
#[no_mangle]
pub extern "C" fn hf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn hf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a `#`/`.` grid, one row per line, top row first.
///
/// # Safety
/// `grid` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_polyomino_from_grid(grid: *const c_char, out: *mut *mut HfPolyomino) -> HfStatus {
    guard(|| {
        let p = parse_grid(text(grid)?).map_err(invalid)?;
        put(out, HfPolyomino(p))
    })
}

/// Seeded random polyomino with `cells` cells.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_polyomino_random(cells: i64, seed: u64, out: *mut *mut HfPolyomino) -> HfStatus {
    guard(|| put(out, HfPolyomino(random_polyomino(cells, seed).map_err(invalid)?)))
}

/// Cell count, 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live polyomino handle.
#[no_mangle]
pub unsafe extern "C" fn hf_polyomino_cell_count(p: *const HfPolyomino) -> usize {
    p.as_ref().map_or(0, |p| p.0.cell_count())
}

/// Grid text of the polyomino.
///
/// # Safety
/// `p` must be a live polyomino handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_polyomino_to_grid(p: *const HfPolyomino, out: *mut *mut c_char) -> HfStatus {
    guard(|| put_string(out, get(p)?.0.to_grid()))
}

/// # Safety
/// `p` must be null or a live polyomino handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hf_polyomino_free(p: *mut HfPolyomino) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Folds the universal triangle chain onto `p`.
///
/// # Safety
/// `p` must be a live polyomino handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_fold(p: *const HfPolyomino, out: *mut *mut HfDocument) -> HfStatus {
    guard(|| {
        let p = get(p)?.0.clone();
        let f = fold_chain(&p);
        put(out, HfDocument(HdjDocument::from_fold(p, f)))
    })
}

/// Hinged dissection between two polyominoes with the same cell count.
///
/// # Safety
/// `a` and `b` must be live polyomino handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_dissect(a: *const HfPolyomino, b: *const HfPolyomino, out: *mut *mut HfDocument) -> HfStatus {
    guard(|| {
        let d = dissect_pair(&get(a)?.0, &get(b)?.0).map_err(invalid)?;
        put(out, HfDocument(HdjDocument::from_dissection(d)))
    })
}

/// Reads an HDJ document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_document_from_json(json: *const c_char, out: *mut *mut HfDocument) -> HfStatus {
    guard(|| put(out, HfDocument(HdjDocument::from_json(text(json)?).map_err(invalid)?)))
}

/// Writes the document as HDJ.
///
/// # Safety
/// `d` must be a live document handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_document_to_json(d: *const HfDocument, out: *mut *mut c_char) -> HfStatus {
    guard(|| put_string(out, get(d)?.0.to_json()))
}

/// Piece count, 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live document handle.
#[no_mangle]
pub unsafe extern "C" fn hf_document_piece_count(d: *const HfDocument) -> usize {
    d.as_ref().map_or(0, |d| d.0.figure.piece_count())
}

/// Number of configurations, 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live document handle.
#[no_mangle]
pub unsafe extern "C" fn hf_document_configuration_count(d: *const HfDocument) -> usize {
    d.as_ref().map_or(0, |d| d.0.configurations.len())
}

/// Verifies every configuration against its target. With `tolerance > 0` all
/// configurations are checked numerically at that tolerance; otherwise exact
/// configurations are checked exactly and approximate ones at their own
/// tolerance. Returns `Rejected` when any configuration fails.
///
/// # Safety
/// `d` must be a live document handle.
#[no_mangle]
pub unsafe extern "C" fn hf_document_verify(d: *const HfDocument, tolerance: f64) -> HfStatus {
    guard(|| {
        let doc = &get(d)?.0;
        if doc.configurations.is_empty() {
            return Err(invalid("document has no configurations"));
        }
        let mut failed = Vec::new();
        for (i, c) in doc.configurations.iter().enumerate() {
            let target = doc.target_for(i).ok_or_else(|| invalid(format!("no target for configuration {:?}", c.name)))?;
            let config: Configuration = if tolerance > 0.0 { c.config.to_approx(tolerance) } else { c.config.clone() };
            let r = verify_configuration(&doc.figure, &config, target).map_err(invalid)?;
            if !r.accepted {
                failed.push(format!("{}: {}", c.name, r.failures.iter().map(|f| f.check.to_string()).collect::<Vec<_>>().join(", ")));
            }
        }
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Fail(HfStatus::Rejected, format!("rejected: {}", failed.join("; "))))
        }
    })
}

/// SVG drawing of configuration `index`.
///
/// # Safety
/// `d` must be a live document handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_document_render_svg(d: *const HfDocument, index: usize, out: *mut *mut c_char) -> HfStatus {
    guard(|| {
        let doc = &get(d)?.0;
        let c = doc.configurations.get(index).ok_or_else(|| invalid(format!("no configuration {index}")))?;
        put_string(out, render_config(&doc.figure, &c.config, &RenderStyle::default()).map_err(invalid)?)
    })
}

/// # Safety
/// `d` must be null or a live document handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hf_document_free(d: *mut HfDocument) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Mutual dissection of two equal-area polygons given as JSON vertex lists,
/// through stacked rectangles of width `width` (a rational such as `"3/2"`).
///
/// # Safety
/// All strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_chart_new(
    polygon_a: *const c_char,
    polygon_b: *const c_char,
    width: *const c_char,
    out: *mut *mut HfChart,
) -> HfStatus {
    guard(|| {
        let a = parse_polygon(text(polygon_a)?).map_err(invalid)?;
        let b = parse_polygon(text(polygon_b)?).map_err(invalid)?;
        let w = parse_rational(text(width)?).map_err(invalid)?;
        let chart = mutual_chart(&a, &b, &w).map_err(|e| match e {
            BgError::AreaMismatch(..) | BgError::BadWidth(_) | BgError::Geom(_) => invalid(e),
            e => Fail(HfStatus::Internal, e.to_string()),
        })?;
        put(out, HfChart(chart))
    })
}

/// Piece count, 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live chart handle.
#[no_mangle]
pub unsafe extern "C" fn hf_chart_piece_count(c: *const HfChart) -> usize {
    c.as_ref().map_or(0, |c| c.0.pieces.len())
}

/// Checks both assemblies; the target side at `tolerance` relative to its area.
///
/// # Safety
/// `c` must be a live chart handle.
#[no_mangle]
pub unsafe extern "C" fn hf_chart_verify(c: *const HfChart, tolerance: f64) -> HfStatus {
    guard(|| {
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(invalid(format!("bad tolerance {tolerance}")));
        }
        let r = verify_chart(&get(c)?.0, tolerance);
        if r.accepted {
            Ok(())
        } else {
            Err(Fail(HfStatus::Rejected, format!("rejected: {}", r.failures.iter().map(|f| f.detail.clone()).collect::<Vec<_>>().join("; "))))
        }
    })
}

/// Writes the chart as JSON.
///
/// # Safety
/// `c` must be a live chart handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_chart_to_json(c: *const HfChart, out: *mut *mut c_char) -> HfStatus {
    guard(|| put_string(out, chart_to_json(&get(c)?.0)))
}

/// # Safety
/// `c` must be null or a live chart handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hf_chart_free(c: *mut HfChart) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
