use super::{Arc, Circle, GeomError, Point};

/// A circle or a straight line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneralizedCircle {
    Circle(Circle),
    /// Line through `point` with unit direction `dir`.
    Line { point: Point, dir: Point },
}

impl GeneralizedCircle {
    pub fn line_through(a: Point, b: Point) -> Self {
        let d = b - a;
        GeneralizedCircle::Line {
            point: a,
            dir: d * (1.0 / d.norm()),
        }
    }

    pub fn of_arc(a: &Arc) -> Self {
        match a.circle() {
            Some(c) => GeneralizedCircle::Circle(c),
            None => GeneralizedCircle::line_through(a.p(), a.q()),
        }
    }

    pub fn distance(&self, x: Point) -> f64 {
        match *self {
            GeneralizedCircle::Circle(c) => c.offset(x).abs(),
            GeneralizedCircle::Line { point, dir } => (x - point).cross(dir).abs(),
        }
    }
}

/// A crossing between two arcs. `grazing` marks near-tangential contacts
/// whose existence is numerically fragile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub point: Point,
    pub grazing: bool,
}

/// Intersections of two circles: zero, one (tangency) or two points.
pub fn intersect_circles(a: &Circle, b: &Circle) -> Result<Vec<Point>, GeomError> {
    Ok(circle_circle(a, b)?.into_iter().map(|(p, _)| p).collect())
}

const GRAZE: f64 = 1e-9;
/// Two intersection points closer than this (relative) mark a grazing contact.
const GRAZE_SPLIT: f64 = 1e-6;

fn circle_circle(a: &Circle, b: &Circle) -> Result<Vec<(Point, bool)>, GeomError> {
    let scale = a.radius.max(b.radius);
    let delta = b.center - a.center;
    let d = delta.norm();
    if d <= 1e-12 * scale && (a.radius - b.radius).abs() <= 1e-12 * scale {
        return Err(GeomError::IdenticalCircles);
    }
    if d == 0.0 {
        return Ok(vec![]);
    }
    let tol = GRAZE * scale;
    if d > a.radius + b.radius + tol || d < (a.radius - b.radius).abs() - tol {
        return Ok(vec![]);
    }
    let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h2 = a.radius * a.radius - along * along;
    let u = delta * (1.0 / d);
    let foot = a.center + u * along;
    if h2 <= (1e-12 * scale).powi(2) {
        return Ok(vec![(foot, true)]);
    }
    let h = h2.sqrt();
    let grazing = h <= GRAZE_SPLIT * scale;
    Ok(vec![
        (foot + u.perp() * h, grazing),
        (foot - u.perp() * h, grazing),
    ])
}

fn line_circle(point: Point, dir: Point, c: &Circle) -> Vec<(Point, bool)> {
    let t0 = (c.center - point).dot(dir);
    let foot = point + dir * t0;
    let d = foot.dist(c.center);
    let tol = GRAZE * c.radius;
    if d > c.radius + tol {
        return vec![];
    }
    let h2 = c.radius * c.radius - d * d;
    if h2 <= (1e-12 * c.radius).powi(2) {
        return vec![(foot, true)];
    }
    let h = h2.sqrt();
    let grazing = h <= GRAZE_SPLIT * c.radius;
    vec![(foot + dir * h, grazing), (foot - dir * h, grazing)]
}

fn line_line(p1: Point, d1: Point, p2: Point, d2: Point) -> Vec<(Point, bool)> {
    let den = d1.cross(d2);
    if den.abs() < 1e-15 {
        return vec![];
    }
    let t = (p2 - p1).cross(d2) / den;
    vec![(p1 + d1 * t, den.abs() < 1e-9)]
}

/// Intersections of two generalized circles. Coincident inputs return an
/// empty list.
pub fn intersect_generalized(a: &GeneralizedCircle, b: &GeneralizedCircle) -> Vec<Point> {
    generalized(a, b).into_iter().map(|(p, _)| p).collect()
}

fn generalized(a: &GeneralizedCircle, b: &GeneralizedCircle) -> Vec<(Point, bool)> {
    use GeneralizedCircle::*;
    match (a, b) {
        (Circle(x), Circle(y)) => circle_circle(x, y).unwrap_or_default(),
        (Line { point, dir }, Circle(c)) | (Circle(c), Line { point, dir }) => {
            line_circle(*point, *dir, c)
        }
        (
            Line {
                point: p1,
                dir: d1,
            },
            Line {
                point: p2,
                dir: d2,
            },
        ) => line_line(*p1, *d1, *p2, *d2),
    }
}

/// Crossing points of two arcs, excluding endpoints the arcs share.
pub fn intersect_arcs(a1: &Arc, a2: &Arc) -> Vec<Point> {
    arc_crossings(a1, a2, 1e-9).into_iter().map(|c| c.point).collect()
}

/// Like [`intersect_arcs`] but with a grazing flag and explicit endpoint
/// tolerance.
pub fn arc_crossings(a1: &Arc, a2: &Arc, tol: f64) -> Vec<Crossing> {
    let s1 = GeneralizedCircle::of_arc(a1);
    let s2 = GeneralizedCircle::of_arc(a2);
    let shared: Vec<Point> = [a1.p(), a1.q()]
        .into_iter()
        .filter(|e| e.dist(a2.p()) <= tol || e.dist(a2.q()) <= tol)
        .collect();
    let mut out: Vec<Crossing> = Vec::new();
    for (x, grazing) in generalized(&s1, &s2) {
        if shared.iter().any(|s| s.dist(x) <= tol) {
            continue;
        }
        if !a1.extent_contains(x, tol) || !a2.extent_contains(x, tol) {
            continue;
        }
        if out.iter().any(|c| c.point.dist(x) <= tol) {
            continue;
        }
        out.push(Crossing { point: x, grazing });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::{arc_from_tangent, Direction};
    use std::f64::consts::FRAC_PI_2;

    fn unit_at(x: f64, y: f64) -> Circle {
        Circle::new(Point::new(x, y), 1.0).unwrap()
    }

    #[test]
    fn tangent_circles_touch_once() {
        let pts = intersect_circles(&unit_at(0.0, 0.0), &unit_at(2.0, 0.0)).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].dist(Point::new(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn symmetric_lens() {
        let pts = intersect_circles(&unit_at(0.0, 0.0), &unit_at(1.0, 0.0)).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!((p.x - 0.5).abs() < 1e-12);
            assert!((p.y.abs() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn disjoint_and_identical() {
        assert!(intersect_circles(&unit_at(0.0, 0.0), &unit_at(5.0, 0.0))
            .unwrap()
            .is_empty());
        assert_eq!(
            intersect_circles(&unit_at(0.0, 0.0), &unit_at(0.0, 0.0)),
            Err(GeomError::IdenticalCircles)
        );
    }

    #[test]
    fn results_lie_on_both_circles() {
        let a = Circle::new(Point::new(0.3, -1.2), 2.5).unwrap();
        let b = Circle::new(Point::new(1.9, 0.4), 1.1).unwrap();
        for p in intersect_circles(&a, &b).unwrap() {
            assert!(a.offset(p).abs() < 1e-12 * 2.5);
            assert!(b.offset(p).abs() < 1e-12 * 2.5);
        }
    }

    #[test]
    fn lens_arcs_cross_according_to_extent() {
        // Upper semicircle of the circle at (0,0) from (1,0) to (-1,0) and
        // the full-height arc of the circle at (1,0) from (0,0) to (2,0).
        let a = arc_from_tangent(Point::new(1.0, 0.0), Direction::new(FRAC_PI_2), Point::new(-1.0, 0.0))
            .unwrap();
        let b = arc_from_tangent(Point::new(0.0, 0.0), Direction::new(FRAC_PI_2), Point::new(2.0, 0.0))
            .unwrap();
        let hits = intersect_arcs(&a, &b);
        assert_eq!(hits.len(), 1);
        assert!(hits[0].y > 0.0);
        let b_low = arc_from_tangent(Point::new(0.0, 0.0), Direction::new(-FRAC_PI_2), Point::new(2.0, 0.0))
            .unwrap();
        assert!(intersect_arcs(&a, &b_low).is_empty());
    }

    #[test]
    fn shared_endpoint_is_not_a_crossing() {
        let a = Arc::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let b = Arc::segment(Point::new(0.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        assert!(intersect_arcs(&a, &b).is_empty());
        assert_eq!(a.clearance(Point::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn crossing_segments() {
        let a = Arc::segment(Point::new(-1.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let b = Arc::segment(Point::new(0.0, -1.0), Point::new(0.0, 1.0)).unwrap();
        let hits = intersect_arcs(&a, &b);
        assert_eq!(hits.len(), 1);
        assert!(hits[0].norm() < 1e-15);
    }
}
