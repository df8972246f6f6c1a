//! Planar vector and angle primitives shared by the whole crate.
//!
//! Angles are radians internally; the canonical range is the half-open
//! interval (-pi, pi] with exactly-pi kept positive.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Relative slack allowed when a law-of-cosines argument leaves [-1, 1]
/// through rounding alone.
pub const DEFAULT_TRIANGLE_SLACK: f64 = 1e-9;

/// Norm below which a vector is considered directionless.
pub const DIRECTION_EPS: f64 = 1e-12;

/// A point or displacement in the manipulation plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product; positive for a
    /// counter-clockwise turn from `self` to `other`.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Unit vector at `angle` from the +x axis.
    #[inline]
    pub fn unit(angle: Angle) -> Self {
        let (s, c) = angle.radians().sin_cos();
        Vec2::new(c, s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, rhs: Vec2) {
        *self = *self + rhs;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl SubAssign for Vec2 {
    #[inline]
    fn sub_assign(&mut self, rhs: Vec2) {
        *self = *self - rhs;
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A planar angle in radians. Construction does not normalize; call
/// [`Angle::normalized`] to wrap into (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle {
    radians: f64,
}

impl Angle {
    pub const ZERO: Angle = Angle { radians: 0.0 };

    #[inline]
    pub fn from_radians(radians: f64) -> Self {
        debug_assert!(radians.is_finite(), "non-finite angle");
        Angle { radians }
    }

    #[inline]
    pub fn from_degrees(degrees: f64) -> Self {
        Angle::from_radians(degrees.to_radians())
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.radians
    }

    #[inline]
    pub fn degrees(self) -> f64 {
        self.radians.to_degrees()
    }

    /// Wrap into the canonical range (-pi, pi]. Values already in range are
    /// returned bit-identically, so normalization is idempotent.
    pub fn normalized(self) -> Angle {
        let r = self.radians;
        if r > -PI && r <= PI {
            return self;
        }
        let mut w = r.rem_euclid(TAU);
        if w > PI {
            w -= TAU;
        }
        // rem_euclid can round onto -pi for inputs a hair above odd
        // multiples of pi; keep the canonical positive end.
        if w <= -PI {
            w = PI;
        }
        Angle { radians: w }
    }

    #[inline]
    pub fn abs(self) -> Angle {
        Angle {
            radians: self.radians.abs(),
        }
    }
}

impl Add for Angle {
    type Output = Angle;
    #[inline]
    fn add(self, rhs: Angle) -> Angle {
        Angle::from_radians(self.radians + rhs.radians)
    }
}

impl Sub for Angle {
    type Output = Angle;
    #[inline]
    fn sub(self, rhs: Angle) -> Angle {
        Angle::from_radians(self.radians - rhs.radians)
    }
}

impl Neg for Angle {
    type Output = Angle;
    #[inline]
    fn neg(self) -> Angle {
        Angle::from_radians(-self.radians)
    }
}

/// Euclidean distance between two points.
#[inline]
pub fn distance(a: Vec2, b: Vec2) -> f64 {
    (a - b).norm()
}

/// Rotate `point` about `center` by `angle` (counter-clockwise positive).
pub fn rotate_about(point: Vec2, center: Vec2, angle: Angle) -> Vec2 {
    let (s, c) = angle.radians().sin_cos();
    let d = point - center;
    center + Vec2::new(c * d.x - s * d.y, s * d.x + c * d.y)
}

/// Central angle subtended by a chord of the given length on a circle of the
/// given radius: `arccos(1 - chord^2 / (2 radius^2))`, in [0, pi].
pub fn chord_angle(chord: f64, radius: f64) -> Result<Angle> {
    chord_angle_with_slack(chord, radius, DEFAULT_TRIANGLE_SLACK)
}

/// [`chord_angle`] with an explicit relative slack on the arccos argument.
pub fn chord_angle_with_slack(chord: f64, radius: f64, slack: f64) -> Result<Angle> {
    debug_assert!(radius > 0.0 && chord >= 0.0);
    let arg = 1.0 - chord * chord / (2.0 * radius * radius);
    let clamped = clamp_cosine(arg, slack).ok_or(Error::ChordTooLong { chord, radius })?;
    Ok(Angle::from_radians(clamped.acos()))
}

/// Interior angle opposite the side `opposite` in a triangle whose two other
/// sides are `d` and `l` (law of cosines), in [0, pi].
pub fn triangle_angle(d: f64, l: f64, opposite: f64) -> Result<Angle> {
    triangle_angle_with_slack(d, l, opposite, DEFAULT_TRIANGLE_SLACK)
}

/// [`triangle_angle`] with an explicit relative slack on the arccos argument.
pub fn triangle_angle_with_slack(d: f64, l: f64, opposite: f64, slack: f64) -> Result<Angle> {
    if d <= 0.0 || l <= 0.0 || opposite < 0.0 {
        return Err(Error::DegenerateTriangle {
            a: d,
            b: l,
            c: opposite,
        });
    }
    let arg = (d * d + l * l - opposite * opposite) / (2.0 * d * l);
    let clamped = clamp_cosine(arg, slack).ok_or(Error::DegenerateTriangle {
        a: d,
        b: l,
        c: opposite,
    })?;
    Ok(Angle::from_radians(clamped.acos()))
}

/// Signed angle turning `from` onto `to`, in (-pi, pi]; counter-clockwise
/// positive. Fails on (near-)zero input vectors.
pub fn signed_turn(from: Vec2, to: Vec2) -> Result<Angle> {
    if from.norm() < DIRECTION_EPS || to.norm() < DIRECTION_EPS {
        return Err(Error::ZeroVector);
    }
    let raw = from.cross(to).atan2(from.dot(to));
    Ok(Angle::from_radians(raw).normalized())
}

/// Clamp a would-be cosine to [-1, 1] when it overshoots by at most `slack`;
/// `None` when it overshoots further.
fn clamp_cosine(arg: f64, slack: f64) -> Option<f64> {
    if arg > 1.0 {
        (arg - 1.0 <= slack).then_some(1.0)
    } else if arg < -1.0 {
        (-1.0 - arg <= slack).then_some(-1.0)
    } else {
        Some(arg)
    }
}
