use num_traits::{One, Zero};

use super::{format_rational, rat, to_f64, FPoint, GeomError, Point2, Rational};

/// A proper planar isometry `p -> R p + t` with an exact rational rotation.
///
/// [`RigidMotion::try_new`] rejects anything off the unit circle.
/// [`RigidMotion::new_unchecked`] keeps such values for the verifier to report.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RigidMotion {
    cos: Rational,
    sin: Rational,
    translate: Point2,
}

impl RigidMotion {
    pub fn identity() -> Self {
        RigidMotion { cos: rat(1), sin: rat(0), translate: Point2::origin() }
    }

    pub fn try_new(cos: Rational, sin: Rational, translate: Point2) -> Result<Self, GeomError> {
        let m = RigidMotion { cos, sin, translate };
        if m.is_proper() {
            Ok(m)
        } else {
            Err(GeomError::NotUnitRotation { cos: format_rational(&m.cos), sin: format_rational(&m.sin) })
        }
    }

    pub fn new_unchecked(cos: Rational, sin: Rational, translate: Point2) -> Self {
        RigidMotion { cos, sin, translate }
    }

    pub fn translation(t: Point2) -> Self {
        RigidMotion { translate: t, ..Self::identity() }
    }

    /// Rotation by `k` quarter turns about the origin.
    pub fn quarter_turns(k: i32) -> Self {
        let (c, s) = match k.rem_euclid(4) {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        RigidMotion { cos: rat(c), sin: rat(s), translate: Point2::origin() }
    }

    /// Half turn about `center`.
    pub fn half_turn_about(center: &Point2) -> Self {
        RigidMotion { cos: rat(-1), sin: rat(0), translate: center.add(center) }
    }

    pub fn cos(&self) -> &Rational {
        &self.cos
    }

    pub fn sin(&self) -> &Rational {
        &self.sin
    }

    pub fn translate(&self) -> &Point2 {
        &self.translate
    }

    pub fn is_proper(&self) -> bool {
        (&self.cos * &self.cos + &self.sin * &self.sin).is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.cos.is_one() && self.sin.is_zero() && self.translate.x.is_zero() && self.translate.y.is_zero()
    }

    pub fn rotate(&self, p: &Point2) -> Point2 {
        Point2::new(
            &self.cos * &p.x - &self.sin * &p.y,
            &self.sin * &p.x + &self.cos * &p.y,
        )
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        self.rotate(p).add(&self.translate)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &RigidMotion) -> RigidMotion {
        RigidMotion {
            cos: &self.cos * &inner.cos - &self.sin * &inner.sin,
            sin: &self.sin * &inner.cos + &self.cos * &inner.sin,
            translate: self.apply(&inner.translate),
        }
    }

    /// Inverse of a proper motion.
    pub fn inverse(&self) -> RigidMotion {
        debug_assert!(self.is_proper());
        let back = RigidMotion { cos: self.cos.clone(), sin: -self.sin.clone(), translate: Point2::origin() };
        let t = back.rotate(&self.translate).neg();
        RigidMotion { translate: t, ..back }
    }

    pub fn to_float(&self) -> FloatMotion {
        FloatMotion {
            cos: to_f64(&self.cos),
            sin: to_f64(&self.sin),
            tx: to_f64(&self.translate.x),
            ty: to_f64(&self.translate.y),
        }
    }
}

pub fn apply_motion(m: &RigidMotion, p: &Point2) -> Point2 {
    m.apply(p)
}

/// The unique proper motion taking `a1 -> b1` and `a2 -> b2`.
pub fn motion_between_segments(a1: &Point2, a2: &Point2, b1: &Point2, b2: &Point2) -> Result<RigidMotion, GeomError> {
    let da = a2.sub(a1);
    let db = b2.sub(b1);
    let len_sq = da.norm_sq();
    if len_sq.is_zero() {
        return Err(GeomError::DegenerateSegment);
    }
    if len_sq != db.norm_sq() {
        return Err(GeomError::LengthMismatch);
    }
    let cos = da.dot(&db) / &len_sq;
    let sin = da.cross(&db) / &len_sq;
    let rot = RigidMotion::new_unchecked(cos, sin, Point2::origin());
    let translate = b1.sub(&rot.rotate(a1));
    Ok(RigidMotion { translate, ..rot })
}

/// Double-precision motion, used by approximate configurations and kinematics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatMotion {
    pub cos: f64,
    pub sin: f64,
    pub tx: f64,
    pub ty: f64,
}

impl FloatMotion {
    pub fn identity() -> Self {
        FloatMotion { cos: 1.0, sin: 0.0, tx: 0.0, ty: 0.0 }
    }

    pub fn from_angle(angle: f64, tx: f64, ty: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        FloatMotion { cos, sin, tx, ty }
    }

    pub fn angle(&self) -> f64 {
        self.sin.atan2(self.cos)
    }

    pub fn unit_residual(&self) -> f64 {
        (self.cos * self.cos + self.sin * self.sin - 1.0).abs()
    }

    pub fn rotate(&self, p: &FPoint) -> FPoint {
        Point2::new(self.cos * p.x - self.sin * p.y, self.sin * p.x + self.cos * p.y)
    }

    pub fn apply(&self, p: &FPoint) -> FPoint {
        let r = self.rotate(p);
        Point2::new(r.x + self.tx, r.y + self.ty)
    }

    pub fn compose(&self, inner: &FloatMotion) -> FloatMotion {
        let t = self.apply(&Point2::new(inner.tx, inner.ty));
        FloatMotion {
            cos: self.cos * inner.cos - self.sin * inner.sin,
            sin: self.sin * inner.cos + self.cos * inner.sin,
            tx: t.x,
            ty: t.y,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ratio;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    #[test]
    fn apply_examples() {
        assert_eq!(RigidMotion::identity().apply(&p(5, 7)), p(5, 7));
        assert_eq!(RigidMotion::quarter_turns(1).apply(&p(1, 0)), p(0, 1));
        let m = RigidMotion::try_new(ratio(3, 5), ratio(4, 5), p(1, 0)).unwrap();
        // (3/5*5, 4/5*5) + (1, 0)
        assert_eq!(apply_motion(&m, &p(5, 0)), p(4, 4));
    }

    #[test]
    fn rejects_off_circle_rotation() {
        assert!(RigidMotion::try_new(rat(1), rat(1), p(0, 0)).is_err());
        assert!(!RigidMotion::new_unchecked(rat(2), rat(0), p(0, 0)).is_proper());
    }

    #[test]
    fn segment_motion_examples() {
        let m = motion_between_segments(&p(0, 0), &p(1, 0), &p(0, 0), &p(0, 1)).unwrap();
        assert_eq!((m.cos(), m.sin()), (&rat(0), &rat(1)));
        assert_eq!(m.translate(), &p(0, 0));

        let m = motion_between_segments(&p(0, 0), &p(1, 0), &p(2, 3), &p(3, 3)).unwrap();
        assert_eq!((m.cos(), m.sin()), (&rat(1), &rat(0)));
        assert_eq!(m.translate(), &p(2, 3));

        // dot = 15, cross = 20, |a|^2 = 25
        let m = motion_between_segments(&p(0, 0), &p(5, 0), &p(0, 0), &p(3, 4)).unwrap();
        assert_eq!((m.cos(), m.sin()), (&ratio(3, 5), &ratio(4, 5)));
    }

    #[test]
    fn segment_motion_errors() {
        assert_eq!(
            motion_between_segments(&p(1, 1), &p(1, 1), &p(0, 0), &p(0, 0)),
            Err(GeomError::DegenerateSegment)
        );
        assert_eq!(
            motion_between_segments(&p(0, 0), &p(1, 0), &p(0, 0), &p(2, 0)),
            Err(GeomError::LengthMismatch)
        );
    }

    #[test]
    fn inverse_and_compose() {
        let m = RigidMotion::try_new(ratio(-5, 13), ratio(12, 13), Point2::new(ratio(1, 3), rat(-2))).unwrap();
        assert!(m.compose(&m.inverse()).is_identity());
        assert!(m.inverse().compose(&m).is_identity());
        let q = Point2::new(ratio(7, 2), ratio(-1, 9));
        let h = RigidMotion::half_turn_about(&q);
        assert_eq!(h.apply(&q), q);
        assert!(h.compose(&h).is_identity());
    }

    fn pythagorean() -> impl Strategy<Value = (Rational, Rational)> {
        // (m^2 - n^2, 2mn) / (m^2 + n^2) parametrizes rational points on the circle.
        (-20i64..20, 1i64..20).prop_map(|(m, n)| {
            let d = m * m + n * n;
            (ratio(m * m - n * n, d), ratio(2 * m * n, d))
        })
    }

    fn point() -> impl Strategy<Value = Point2> {
        (-1000i64..1000, 1i64..50, -1000i64..1000, 1i64..50).prop_map(|(a, b, c, d)| Point2::new(ratio(a, b), ratio(c, d)))
    }

    proptest! {
        #[test]
        fn preserves_squared_distance((c, s) in pythagorean(), t in point(), a in point(), b in point()) {
            let m = RigidMotion::try_new(c, s, t).unwrap();
            prop_assert_eq!(m.apply(&a).sub(&m.apply(&b)).norm_sq(), a.sub(&b).norm_sq());
        }

        #[test]
        fn segment_motion_round_trips((c, s) in pythagorean(), t in point(), a1 in point(), a2 in point()) {
            prop_assume!(a1 != a2);
            let m = RigidMotion::try_new(c, s, t).unwrap();
            let (b1, b2) = (m.apply(&a1), m.apply(&a2));
            let found = motion_between_segments(&a1, &a2, &b1, &b2).unwrap();
            prop_assert!(found.is_proper());
            prop_assert_eq!(found.apply(&a1), b1);
            prop_assert_eq!(found.apply(&a2), b2);
            prop_assert_eq!(found, m);
        }
    }
}
