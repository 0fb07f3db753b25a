//! Planar primitives for circular-arc drawings.
//!
//! Everything here is an immutable value type. Arcs are stored as a pair of
//! endpoints plus a signed bulge so that nearly straight arcs never need a
//! far-away center.

mod arc;
mod intersect;
mod locus;
mod mobius;

pub use arc::{arc_from_tangent, endpoint_tangents, Arc};
pub use intersect::{
    arc_crossings, intersect_arcs, intersect_circles, intersect_generalized, Crossing,
    GeneralizedCircle,
};
pub use locus::{
    angle_to_circle, circle_through_chord_angle, meeting_locus, meeting_locus_general,
    LocusInputs, Orientation, Side,
};
pub use mobius::{cross_ratio, MobiusMap};

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

/// Numerical tolerances shared by the constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Two points closer than this are the same point.
    pub position: f64,
    /// Angular slack for tangency and orientation tests.
    pub angle: f64,
    /// Minimum distance between an arc and a vertex that is not one of its
    /// endpoints.
    pub clearance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            position: 1e-9,
            angle: 1e-10,
            clearance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("endpoints coincide")]
    CoincidentPoints,
    #[error("tangent points straight away from the other endpoint; no finite arc exists")]
    DegenerateArc,
    #[error("meeting locus degenerates to the line through both points")]
    DegenerateLocus,
    #[error("circles are identical")]
    IdenticalCircles,
    #[error("point is mapped to infinity")]
    InfiniteImage,
    #[error("Möbius coefficients are singular (ad - bc = 0)")]
    SingularMap,
    #[error("invalid value: {0}")]
    Invalid(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(radius * c, radius * s)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Angle of the vector in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotate by +90°.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// An angle normalized to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(f64);

impl Direction {
    pub fn new(angle: f64) -> Self {
        Direction(normalize_angle(angle))
    }

    pub fn of(v: Point) -> Self {
        Direction::new(v.angle())
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    pub fn unit(self) -> Point {
        Point::polar(1.0, self.0)
    }

    pub fn rotated(self, by: f64) -> Self {
        Direction::new(self.0 + by)
    }

    pub fn reversed(self) -> Self {
        self.rotated(PI)
    }

    /// Signed difference `self - other` wrapped into `(-π, π]`.
    pub fn diff(self, other: Direction) -> f64 {
        wrap_pi(self.0 - other.0)
    }
}

/// Normalize into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wrap into `(-π, π]`.
pub fn wrap_pi(a: f64) -> f64 {
    let r = normalize_angle(a);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeomError> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(GeomError::Invalid("circle radius must be positive and finite"));
        }
        Ok(Circle { center, radius })
    }

    pub fn unit() -> Self {
        Circle {
            center: Point::ORIGIN,
            radius: 1.0,
        }
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::polar(self.radius, angle)
    }

    /// Signed distance of `x` from the circle (positive outside).
    pub fn offset(&self, x: Point) -> f64 {
        x.dist(self.center) - self.radius
    }

    pub fn contains_point(&self, x: Point, tol: f64) -> bool {
        self.offset(x).abs() <= tol
    }

    /// Counter-clockwise tangent direction at the boundary point nearest `x`.
    pub fn ccw_tangent(&self, x: Point) -> Direction {
        Direction::new((x - self.center).angle() + PI / 2.0)
    }

    /// Circle through three points, `None` when they are collinear.
    pub fn through(a: Point, b: Point, c: Point) -> Option<Circle> {
        let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        let scale = (a.dist(b) + b.dist(c) + c.dist(a)).max(f64::MIN_POSITIVE);
        if d.abs() <= 1e-14 * scale * scale {
            return None;
        }
        let (a2, b2, c2) = (a.norm2(), b.norm2(), c.norm2());
        let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
        let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
        let center = Point::new(ux, uy);
        Some(Circle {
            center,
            radius: center.dist(a),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_normalizes() {
        assert_eq!(Direction::new(-PI / 2.0).angle(), 1.5 * PI);
        assert_eq!(Direction::new(TAU).angle(), 0.0);
        assert!((Direction::new(7.0 * PI).angle() - PI).abs() < 1e-12);
    }

    #[test]
    fn wrap_pi_range() {
        assert_eq!(wrap_pi(PI), PI);
        assert!((wrap_pi(-PI) - PI).abs() < 1e-15);
        assert!((wrap_pi(1.5 * PI) + 0.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn circle_rejects_bad_radius() {
        assert!(Circle::new(Point::ORIGIN, 0.0).is_err());
        assert!(Circle::new(Point::ORIGIN, f64::INFINITY).is_err());
    }

    #[test]
    fn circle_through_three_points() {
        let c = Circle::through(Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0))
            .unwrap();
        assert!(c.center.norm() < 1e-15);
        assert!((c.radius - 1.0).abs() < 1e-15);
        assert!(Circle::through(Point::ORIGIN, Point::new(1.0, 1.0), Point::new(2.0, 2.0)).is_none());
    }
}
