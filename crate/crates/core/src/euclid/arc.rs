use super::{wrap_pi, Circle, Direction, GeomError, Point};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Bulges below this magnitude are treated as straight segments when a
/// center is required.
const FLAT_BULGE: f64 = 1e-12;

/// A circular arc or straight segment from `p` to `q`.
///
/// `bulge` is `tan(φ/4)` where `φ` is the signed central angle swept while
/// travelling from `p` to `q`; positive means counter-clockwise, in which case
/// the arc lies to the right of the chord `p → q`. A bulge of zero is the
/// segment itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    p: Point,
    q: Point,
    bulge: f64,
}

impl Arc {
    pub fn new(p: Point, q: Point, bulge: f64) -> Result<Arc, GeomError> {
        if !p.is_finite() || !q.is_finite() {
            return Err(GeomError::Invalid("arc endpoints must be finite"));
        }
        if p.dist(q) <= 1e-12 * (1.0 + p.norm().max(q.norm())) {
            return Err(GeomError::CoincidentPoints);
        }
        if !bulge.is_finite() {
            return Err(GeomError::DegenerateArc);
        }
        Ok(Arc { p, q, bulge })
    }

    pub fn segment(p: Point, q: Point) -> Result<Arc, GeomError> {
        Arc::new(p, q, 0.0)
    }

    /// The arc from `p` through `m` to `q`.
    pub fn through(p: Point, m: Point, q: Point) -> Result<Arc, GeomError> {
        let (u, v) = (p - m, q - m);
        if u.norm() == 0.0 || v.norm() == 0.0 {
            return Err(GeomError::CoincidentPoints);
        }
        // Inscribed angle at m, taken in (-2π, 0].
        let mut w = u.cross(v).atan2(u.dot(v));
        if w > 0.0 {
            w -= TAU;
        }
        let sweep = 2.0 * w + TAU;
        if sweep >= TAU - 1e-15 {
            return Err(GeomError::DegenerateArc);
        }
        Arc::new(p, q, (sweep / 4.0).tan())
    }

    pub fn p(&self) -> Point {
        self.p
    }

    pub fn q(&self) -> Point {
        self.q
    }

    pub fn bulge(&self) -> f64 {
        self.bulge
    }

    pub fn is_segment(&self) -> bool {
        self.bulge == 0.0
    }

    /// Signed central angle in `(-2π, 2π)`.
    pub fn sweep(&self) -> f64 {
        4.0 * self.bulge.atan()
    }

    pub fn chord(&self) -> Point {
        self.q - self.p
    }

    pub fn chord_length(&self) -> f64 {
        self.chord().norm()
    }

    pub fn reversed(&self) -> Arc {
        Arc {
            p: self.q,
            q: self.p,
            bulge: -self.bulge,
        }
    }

    /// Directions pointing into the arc at `p` and at `q`.
    pub fn tangents(&self) -> (Direction, Direction) {
        let alpha = self.chord().angle();
        let half = self.sweep() / 2.0;
        (
            Direction::new(alpha - half),
            Direction::new(alpha + half + PI),
        )
    }

    /// Point at sweep fraction `s ∈ [0, 1]`.
    pub fn point_at(&self, s: f64) -> Point {
        let phi = self.sweep();
        let half = phi / 2.0;
        let ratio = if half.sin().abs() < 1e-300 {
            s
        } else {
            (s * half).sin() / half.sin()
        };
        let dir = self.chord().angle() - half + s * half;
        self.p + Point::polar(self.chord_length() * ratio, dir)
    }

    pub fn midpoint(&self) -> Point {
        self.point_at(0.5)
    }

    /// Supporting circle, `None` for (numerically) straight arcs.
    pub fn circle(&self) -> Option<Circle> {
        if self.bulge.abs() < FLAT_BULGE {
            return None;
        }
        let b = self.bulge;
        let l = self.chord_length();
        let m = self.p.lerp(self.q, 0.5);
        let left = self.chord().perp() * (1.0 / l);
        let h = l * (1.0 - b * b) / (4.0 * b);
        let radius = l * (1.0 + b * b) / (4.0 * b.abs());
        Some(Circle {
            center: m + left * h,
            radius,
        })
    }

    pub fn radius(&self) -> f64 {
        self.circle().map_or(f64::INFINITY, |c| c.radius)
    }

    pub fn length(&self) -> f64 {
        match self.circle() {
            Some(c) => c.radius * self.sweep().abs(),
            None => self.chord_length(),
        }
    }

    /// Whether `x`, assumed to lie on the supporting circle or line, falls
    /// within the arc's extent (endpoints inclusive up to `tol`).
    pub fn extent_contains(&self, x: Point, tol: f64) -> bool {
        if x.dist(self.p) <= tol || x.dist(self.q) <= tol {
            return true;
        }
        match self.circle() {
            None => {
                let d = self.chord();
                let t = (x - self.p).dot(d) / d.norm2();
                (0.0..=1.0).contains(&t)
            }
            Some(c) => {
                let a0 = (self.p - c.center).angle();
                let ax = (x - c.center).angle();
                let phi = self.sweep();
                if phi > 0.0 {
                    (ax - a0).rem_euclid(TAU) <= phi
                } else {
                    (a0 - ax).rem_euclid(TAU) <= -phi
                }
            }
        }
    }

    /// Minimum Euclidean distance from `x` to the arc's point set.
    pub fn clearance(&self, x: Point) -> f64 {
        let ends = x.dist(self.p).min(x.dist(self.q));
        match self.circle() {
            None => {
                let d = self.chord();
                let t = ((x - self.p).dot(d) / d.norm2()).clamp(0.0, 1.0);
                x.dist(self.p + d * t)
            }
            Some(c) => {
                let r = x.dist(c.center);
                if r > 0.0 && self.extent_contains(c.center + (x - c.center) * (c.radius / r), 0.0)
                {
                    (r - c.radius).abs()
                } else {
                    ends
                }
            }
        }
    }

    /// Bounding box as `(min, max)`.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = Point::new(self.p.x.min(self.q.x), self.p.y.min(self.q.y));
        let mut hi = Point::new(self.p.x.max(self.q.x), self.p.y.max(self.q.y));
        if let Some(c) = self.circle() {
            for k in 0..4 {
                let e = c.point_at(k as f64 * PI / 2.0);
                if self.extent_contains(e, 0.0) {
                    lo = Point::new(lo.x.min(e.x), lo.y.min(e.y));
                    hi = Point::new(hi.x.max(e.x), hi.y.max(e.y));
                }
            }
        }
        (lo, hi)
    }
}

/// The unique arc (or segment) leaving `p` in direction `dir_p` and ending
/// at `q`.
pub fn arc_from_tangent(p: Point, dir_p: Direction, q: Point) -> Result<Arc, GeomError> {
    if p.dist(q) <= 1e-12 * (1.0 + p.norm().max(q.norm())) {
        return Err(GeomError::CoincidentPoints);
    }
    let alpha = (q - p).angle();
    let deviation = wrap_pi(dir_p.angle() - alpha);
    if PI - deviation.abs() < 1e-12 {
        return Err(GeomError::DegenerateArc);
    }
    let bulge = if deviation == 0.0 {
        0.0
    } else {
        (-deviation / 2.0).tan()
    };
    Arc::new(p, q, bulge)
}

/// Directions pointing into the arc at each endpoint.
pub fn endpoint_tangents(a: &Arc) -> (Direction, Direction) {
    a.tangents()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn tangent_along_chord_gives_segment() {
        let a = arc_from_tangent(pt(0.0, 0.0), Direction::new(0.0), pt(2.0, 0.0)).unwrap();
        assert_eq!(a.bulge(), 0.0);
        assert!(a.circle().is_none());
    }

    #[test]
    fn upward_tangent_gives_upper_semicircle() {
        let a = arc_from_tangent(pt(0.0, 0.0), Direction::new(FRAC_PI_2), pt(2.0, 0.0)).unwrap();
        let c = a.circle().unwrap();
        assert!(c.center.dist(pt(1.0, 0.0)) < 1e-12);
        assert!((c.radius - 1.0).abs() < 1e-12);
        assert!(a.midpoint().dist(pt(1.0, 1.0)) < 1e-12);
        assert!(a.clearance(pt(1.0, 1.0)) < 1e-12);
        let (tp, _) = a.tangents();
        assert!(tp.diff(Direction::new(FRAC_PI_2)).abs() < 1e-12);
    }

    #[test]
    fn downward_tangent_mirrors() {
        let a = arc_from_tangent(pt(0.0, 0.0), Direction::new(-FRAC_PI_2), pt(2.0, 0.0)).unwrap();
        assert!(a.midpoint().dist(pt(1.0, -1.0)) < 1e-12);
    }

    #[test]
    fn collinear_rays_rejected() {
        let e = arc_from_tangent(pt(0.0, 0.0), Direction::new(PI), pt(2.0, 0.0));
        assert_eq!(e, Err(GeomError::DegenerateArc));
        let e = arc_from_tangent(pt(1.0, 1.0), Direction::new(0.0), pt(1.0, 1.0));
        assert_eq!(e, Err(GeomError::CoincidentPoints));
    }

    #[test]
    fn segment_tangents_are_opposite_chord_directions() {
        let a = Arc::segment(pt(0.0, 0.0), pt(1.0, 0.0)).unwrap();
        let (tp, tq) = endpoint_tangents(&a);
        assert_eq!(tp.angle(), 0.0);
        assert!((tq.angle() - PI).abs() < 1e-15);
    }

    #[test]
    fn semicircle_tangents_both_point_up() {
        // Differentiate the parametrization numerically at both ends.
        let a = arc_from_tangent(pt(0.0, 0.0), Direction::new(FRAC_PI_2), pt(2.0, 0.0)).unwrap();
        let h = 1e-6;
        let d0 = (a.point_at(h) - a.point_at(0.0)).angle();
        let d1 = (a.point_at(1.0 - h) - a.point_at(1.0)).angle();
        let (tp, tq) = a.tangents();
        assert!(wrap_pi(tp.angle() - d0).abs() < 1e-5);
        assert!(wrap_pi(tq.angle() - d1).abs() < 1e-5);
        assert!(tq.diff(Direction::new(FRAC_PI_2)).abs() < 1e-12);
    }

    #[test]
    fn tangents_continuous_through_flat_limit() {
        let p = pt(0.3, -0.2);
        let q = pt(1.7, 0.4);
        let flat = Arc::segment(p, q).unwrap().tangents();
        for b in [1e-3, 1e-6, 1e-9, -1e-9, -1e-6] {
            let t = Arc::new(p, q, b).unwrap().tangents();
            assert!(t.0.diff(flat.0).abs() <= 4.0 * b.abs() + 1e-15);
            assert!(t.1.diff(flat.1).abs() <= 4.0 * b.abs() + 1e-15);
        }
    }

    #[test]
    fn through_recovers_bulge() {
        let a = Arc::new(pt(0.0, 0.0), pt(3.0, 1.0), 0.7).unwrap();
        let b = Arc::through(a.p(), a.point_at(0.3), a.q()).unwrap();
        assert!((a.bulge() - b.bulge()).abs() < 1e-12);
        let major = Arc::new(pt(0.0, 0.0), pt(3.0, 1.0), -2.5).unwrap();
        let b = Arc::through(major.p(), major.point_at(0.8), major.q()).unwrap();
        assert!((major.bulge() - b.bulge()).abs() < 1e-10);
    }

    #[test]
    fn clearance_examples() {
        let s = Arc::segment(pt(0.0, 0.0), pt(2.0, 0.0)).unwrap();
        assert!((s.clearance(pt(1.0, 1.0)) - 1.0).abs() < 1e-15);
        assert_eq!(s.clearance(pt(0.0, 0.0)), 0.0);
        let a = arc_from_tangent(pt(0.0, 0.0), Direction::new(FRAC_PI_2), pt(2.0, 0.0)).unwrap();
        // Lower half of the circle is outside the extent: nearest is an endpoint.
        assert!((a.clearance(pt(1.0, -1.0)) - 2f64.sqrt()).abs() < 1e-12);
        assert!((a.clearance(pt(1.0, 0.0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn length_of_semicircle() {
        let a = arc_from_tangent(pt(0.0, 0.0), Direction::new(FRAC_PI_2), pt(2.0, 0.0)).unwrap();
        assert!((a.length() - PI).abs() < 1e-12);
    }
}
