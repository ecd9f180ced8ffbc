//! Exact rational planar geometry.
//!
//! Everything here is computed over arbitrary-precision rationals; the
//! generic helpers also accept `f64` for the tolerance-based paths.

pub(crate) mod clip;
mod motion;
mod polygon;
mod triangulate;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use clip::{clip_area_f64, clip_convex_raw, convex_clip, interiors_overlap, polygon_contains};
pub use motion::{apply_motion, motion_between_segments, FloatMotion, RigidMotion};
pub use polygon::{overlapping_box_pairs, overlapping_box_pairs_between, polygon_area, signed_area, BBox, SimplePolygon};
pub use triangulate::triangulate_simple;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A double-precision point, used by the numeric paths.
pub type FPoint = Point2<f64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("polygon needs at least 3 non-collinear vertices")]
    TooFewVertices,
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("segments have different squared lengths")]
    LengthMismatch,
    #[error("rotation ({cos}, {sin}) is not on the unit circle")]
    NotUnitRotation { cos: String, sin: String },
    #[error("vertex list is not in normal form: {0}")]
    NotNormalized(&'static str),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
}

/// Scalar types the generic geometry routines run on.
pub trait Coord: Clone + PartialOrd + Num + Signed + fmt::Debug {}
impl<T: Clone + PartialOrd + Num + Signed + fmt::Debug> Coord for T {}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only gives up on huge magnitudes.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact conversion of a finite double (every finite double is a dyadic rational).
pub fn from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {0:?} as a rational number")]
pub struct ParseRationalError(pub String);

/// Parses `p/q`, an integer, or a plain decimal literal (`-1.25`, `3e-2`).
/// Decimals are converted exactly from their written digits.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str_radix(&all_digits, 10).map_err(|_| err())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -value } else { value })
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A point in the plane. Defaults to exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point2<T = Rational> {
    pub x: T,
    pub y: T,
}

impl<T> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }
}

impl Point2<Rational> {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(rat(x), rat(y))
    }

    pub fn to_f64(&self) -> FPoint {
        Point2::new(to_f64(&self.x), to_f64(&self.y))
    }
}

impl<T: Coord> Point2<T> {
    pub fn origin() -> Self {
        Point2::new(T::zero(), T::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Point2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Point2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn neg(&self) -> Self {
        Point2::new(-self.x.clone(), -self.y.clone())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Self {
        Point2::new(-self.y.clone(), self.x.clone())
    }

    pub fn midpoint(&self, o: &Self) -> Self {
        let two = T::one() + T::one();
        Point2::new(
            (self.x.clone() + o.x.clone()) / two.clone(),
            (self.y.clone() + o.y.clone()) / two,
        )
    }

    /// `self + t * (o - self)`.
    pub fn lerp(&self, o: &Self, t: &T) -> Self {
        self.add(&o.sub(self).scale(t))
    }
}

impl fmt::Display for Point2<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Twice the signed area of triangle `abc`; positive for a left turn.
pub fn orient<T: Coord>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> T {
    b.sub(a).cross(&c.sub(a))
}

/// Sign of `orient(a, b, c)`, given the points together with their double
/// approximations. The float result is trusted only when it clears a bound far
/// above its rounding error; otherwise the sign is computed exactly.
pub fn orient_sign_filtered(a: (&Point2, &FPoint), b: (&Point2, &FPoint), c: (&Point2, &FPoint)) -> Ordering {
    let (fa, fb, fc) = (a.1, b.1, c.1);
    let m = [fa.x, fa.y, fb.x, fb.y, fc.x, fc.y].iter().fold(0f64, |m, v| m.max(v.abs()));
    if m.is_finite() && m > 1e-100 && m < 1e100 {
        let det = (fb.x - fa.x) * (fc.y - fa.y) - (fb.y - fa.y) * (fc.x - fa.x);
        if det.abs() > 1e-12 * m * m {
            return det.total_cmp(&0.0);
        }
    }
    orient(a.0, b.0, c.0).cmp(&Rational::zero())
}

/// True when `p` lies on the closed segment `ab` (exact for rationals).
pub fn on_segment<T: Coord>(a: &Point2<T>, b: &Point2<T>, p: &Point2<T>) -> bool {
    if !orient(a, b, p).is_zero() {
        return false;
    }
    let min_x = if a.x <= b.x { &a.x } else { &b.x };
    let max_x = if a.x <= b.x { &b.x } else { &a.x };
    let min_y = if a.y <= b.y { &a.y } else { &b.y };
    let max_y = if a.y <= b.y { &b.y } else { &a.y };
    *min_x <= p.x && p.x <= *max_x && *min_y <= p.y && p.y <= *max_y
}

/// Closed segment intersection test.
pub fn segments_intersect<T: Coord>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>, d: &Point2<T>) -> bool {
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    let zero = T::zero();
    let opposite = |u: &T, v: &T| (*u > zero && *v < zero) || (*u < zero && *v > zero);
    if opposite(&d1, &d2) && opposite(&d3, &d4) {
        return true;
    }
    (d1.is_zero() && on_segment(a, b, c))
        || (d2.is_zero() && on_segment(a, b, d))
        || (d3.is_zero() && on_segment(c, d, a))
        || (d4.is_zero() && on_segment(c, d, b))
}
