use super::{
    arc_from_tangent, normalize_angle, wrap_pi, Arc, Circle, Direction, GeneralizedCircle,
    GeomError, Point,
};
use std::f64::consts::PI;

/// Which side of a host circle an arc should bend into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inside,
    Outside,
}

/// Orientation in which a meeting angle is measured at the meeting point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Counter-clockwise from the arc arriving from `p` to the arc arriving
    /// from `q`.
    #[default]
    Ccw,
    Cw,
}

/// Inputs to the meeting-locus construction.
///
/// Arcs leave `p` in direction `dir_p` and `q` in direction `dir_q`; at the
/// meeting point `r` the tangent of the `q`-arc (pointing back towards `q`)
/// lies at angle `theta_pq` from the tangent of the `p`-arc (pointing back
/// towards `p`), measured in `orientation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusInputs {
    pub p: Point,
    pub q: Point,
    pub dir_p: Direction,
    pub dir_q: Direction,
    pub theta_pq: f64,
    pub orientation: Orientation,
}

impl LocusInputs {
    pub fn new(p: Point, dir_p: Direction, q: Point, dir_q: Direction, theta_pq: f64) -> Self {
        LocusInputs {
            p,
            q,
            dir_p,
            dir_q,
            theta_pq,
            orientation: Orientation::Ccw,
        }
    }

    pub fn with_orientation(mut self, o: Orientation) -> Self {
        self.orientation = o;
        self
    }

    /// Counter-clockwise meeting angle in `[0, 2π)`.
    pub fn ccw_theta(&self) -> f64 {
        match self.orientation {
            Orientation::Ccw => normalize_angle(self.theta_pq),
            Orientation::Cw => normalize_angle(-self.theta_pq),
        }
    }

    /// Signed angle of the outgoing tangent at `p` from the chord `p → q`.
    pub fn theta_ph(&self) -> f64 {
        wrap_pi(self.dir_p.angle() - (self.q - self.p).angle())
    }

    /// Signed angle of the outgoing tangent at `q` from the chord `q → p`.
    pub fn theta_qh(&self) -> f64 {
        wrap_pi(self.dir_q.angle() - (self.p - self.q).angle())
    }

    /// Inscribed angle, modulo π, under which every meeting point sees the
    /// chord: the directed angle from `p - r` to `q - r`.
    pub fn inscribed_angle(&self) -> f64 {
        let psi = (self.ccw_theta() + self.dir_q.angle() - self.dir_p.angle()) / 2.0;
        psi.rem_euclid(PI)
    }

    /// Central angle subtended by the chord `pq` on the locus circle, in
    /// `[0, 2π)`. Zero means the locus is the line through `p` and `q`.
    pub fn central_angle(&self) -> f64 {
        2.0 * self.inscribed_angle()
    }
}

/// The locus of meeting points as a circle or, when the central angle
/// vanishes, the line through `p` and `q`.
pub fn meeting_locus_general(inputs: &LocusInputs) -> Result<GeneralizedCircle, GeomError> {
    let chord = inputs.q - inputs.p;
    let l = chord.norm();
    if l <= 1e-12 * (1.0 + inputs.p.norm().max(inputs.q.norm())) {
        return Err(GeomError::CoincidentPoints);
    }
    if !inputs.theta_pq.is_finite() || normalize_angle(inputs.theta_pq) == 0.0 {
        return Err(GeomError::Invalid("meeting angle must be finite and nonzero"));
    }
    let psi = inputs.inscribed_angle();
    let s = psi.sin();
    if s.abs() < 1e-12 {
        return Ok(GeneralizedCircle::line_through(inputs.p, inputs.q));
    }
    let mid = inputs.p.lerp(inputs.q, 0.5);
    let left = chord.perp() * (1.0 / l);
    let center = mid + left * (l / 2.0 * psi.cos() / s);
    Ok(GeneralizedCircle::Circle(Circle {
        center,
        radius: l / (2.0 * s),
    }))
}

/// Circle of all points where arcs leaving `p` and `q` with the given
/// tangents meet at the given angle.
pub fn meeting_locus(inputs: &LocusInputs) -> Result<Circle, GeomError> {
    match meeting_locus_general(inputs)? {
        GeneralizedCircle::Circle(c) => Ok(c),
        GeneralizedCircle::Line { .. } => Err(GeomError::DegenerateLocus),
    }
}

/// Arc joining `p` and `q` (both on `o`) that meets `o` at angle `theta`
/// at both ends, bending to the requested side.
///
/// `theta` is measured from the counter-clockwise tangent of `o` at `p`:
/// `0` follows `o` counter-clockwise, `π` follows it clockwise.
pub fn circle_through_chord_angle(
    o: &Circle,
    p: Point,
    q: Point,
    theta: f64,
    side: Side,
) -> Result<Arc, GeomError> {
    if !(0.0..=PI).contains(&theta) {
        return Err(GeomError::Invalid("angle must lie in [0, π]"));
    }
    let tol = 1e-9 * o.radius.max(1.0);
    if !o.contains_point(p, tol) || !o.contains_point(q, tol) {
        return Err(GeomError::Invalid("endpoints must lie on the circle"));
    }
    let t = o.ccw_tangent(p);
    let dir = match side {
        Side::Inside => t.rotated(theta),
        Side::Outside => t.rotated(-theta),
    };
    arc_from_tangent(p, dir, q)
}

/// Unsigned angles in `[0, π]` the arc makes with `o` at its endpoints:
/// at `p` against the counter-clockwise tangent, at `q` against the
/// clockwise tangent. For an arc whose endpoints lie on `o` the two agree.
pub fn angle_to_circle(a: &Arc, o: &Circle) -> (f64, f64) {
    let (tp, tq) = a.tangents();
    let at_p = tp.diff(o.ccw_tangent(a.p())).abs();
    let at_q = tq.diff(o.ccw_tangent(a.q()).reversed()).abs();
    (at_p, at_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_angle_arc_lies_on_circle() {
        let o = Circle::unit();
        let p = Point::polar(1.0, 0.3);
        let q = Point::polar(1.0, 2.1);
        let a = circle_through_chord_angle(&o, p, q, 0.0, Side::Inside).unwrap();
        let c = a.circle().unwrap();
        assert!(c.center.norm() < 1e-12);
        assert!((c.radius - 1.0).abs() < 1e-12);
        assert!(a.midpoint().norm() - 1.0 < 1e-12);
        assert!(a.midpoint().angle() > 0.3 && a.midpoint().angle() < 2.1);
    }

    #[test]
    fn right_angle_inside_is_orthogonal_circle() {
        let o = Circle::unit();
        let a = circle_through_chord_angle(
            &o,
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            FRAC_PI_2,
            Side::Inside,
        )
        .unwrap();
        let c = a.circle().unwrap();
        assert!(c.center.dist(Point::new(1.0, 1.0)) < 1e-12);
        assert!((c.radius - 1.0).abs() < 1e-12);
        // Orthogonality: |c1 - c2|² = r1² + r2².
        assert!((c.center.norm2() - (1.0 + c.radius * c.radius)).abs() < 1e-12);
    }

    #[test]
    fn diametral_right_angle_outside_is_degenerate() {
        let o = Circle::unit();
        let e = circle_through_chord_angle(
            &o,
            Point::new(1.0, 0.0),
            Point::new(-1.0, 0.0),
            FRAC_PI_2,
            Side::Outside,
        );
        assert_eq!(e, Err(GeomError::DegenerateArc));
    }

    #[test]
    fn endpoint_angles_agree() {
        let o = Circle::new(Point::new(0.4, -0.3), 2.0).unwrap();
        for (i, theta) in [0.1, 0.7, 1.4, 2.2, 3.0].into_iter().enumerate() {
            let p = o.point_at(0.2 + i as f64);
            let q = o.point_at(2.9 - 0.4 * i as f64);
            for side in [Side::Inside, Side::Outside] {
                let a = circle_through_chord_angle(&o, p, q, theta, side).unwrap();
                let (ap, aq) = angle_to_circle(&a, &o);
                assert!((ap - theta).abs() < 1e-10, "{ap} vs {theta}");
                assert!((aq - theta).abs() < 1e-10, "{aq} vs {theta}");
            }
        }
    }

    #[test]
    fn symmetric_inputs_center_on_axis() {
        let p = Point::new(-1.0, 0.0);
        let q = Point::new(1.0, 0.0);
        let inputs = LocusInputs::new(p, Direction::new(1.0), q, Direction::new(PI - 1.0), 2.0);
        let c = meeting_locus(&inputs).unwrap();
        assert!(c.center.x.abs() < 1e-12);
    }

    #[test]
    fn quarter_turn_example() {
        let p = Point::new(-1.0, 0.0);
        let q = Point::new(1.0, 0.0);
        let up = Direction::new(FRAC_PI_2);
        let inputs = LocusInputs::new(p, up, q, up, FRAC_PI_2);
        assert!((inputs.central_angle() - FRAC_PI_2).abs() < 1e-12);
        assert!((inputs.theta_ph() - FRAC_PI_2).abs() < 1e-12);
        let c = meeting_locus(&inputs).unwrap();
        assert!((c.radius - 2f64.sqrt()).abs() < 1e-12);
        assert!(c.center.x.abs() < 1e-12);
        assert!((c.center.y.abs() - 1.0).abs() < 1e-12);
        let mirrored = meeting_locus(&inputs.with_orientation(Orientation::Cw)).unwrap();
        assert!((mirrored.center.y + c.center.y).abs() < 1e-12);
    }

    #[test]
    fn line_locus_is_reported() {
        let p = Point::new(0.0, 0.0);
        let q = Point::new(1.0, 0.0);
        // Up at p, down at q, meeting angle π: the inscribed angle vanishes.
        let up = Direction::new(FRAC_PI_2);
        let inputs = LocusInputs::new(p, up, q, up.reversed(), PI);
        assert!(matches!(
            meeting_locus_general(&inputs).unwrap(),
            GeneralizedCircle::Line { .. }
        ));
        assert_eq!(meeting_locus(&inputs), Err(GeomError::DegenerateLocus));
    }
}
