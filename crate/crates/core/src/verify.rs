//! Independent check of the Lombardi conditions. Everything here is
//! recomputed from positions and arcs; frames are never consulted.

use crate::drawing::Drawing;
use crate::euclid::{arc_crossings, Circle, GeneralizedCircle, Point};
use serde::Serialize;
use std::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncidenceViolation {
    pub edge: usize,
    pub vertex: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingRecord {
    pub edges: (usize, usize),
    pub point: Point,
    pub grazing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    /// Max |gap - 2π/deg| per vertex.
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub worst_vertex: Option<usize>,
    /// Edges whose arc does not start and end at its endpoints' positions.
    pub detached_edges: Vec<usize>,
    pub incidence_violations: Vec<IncidenceViolation>,
    /// Transversal crossings, excluding grazing contacts.
    pub crossing_count: usize,
    pub grazing_count: usize,
    /// Pairs of arcs sharing a carrier circle with overlapping extents.
    pub overlaps: Vec<(usize, usize)>,
    pub crossings: Vec<CrossingRecord>,
    /// Max distance of a vertex from the single guide circle, if there is
    /// exactly one.
    pub cocircularity: Option<f64>,
    pub planar: bool,
}

impl VerificationReport {
    /// Perfect resolution within `tol` and no incidence or attachment faults.
    pub fn is_lombardi(&self, tol: f64) -> bool {
        self.max_deviation < tol
            && self.detached_edges.is_empty()
            && self.incidence_violations.is_empty()
    }
}

/// Per-vertex deviation from perfect angular resolution.
pub fn angular_deviations(d: &Drawing) -> Vec<f64> {
    let mut tangents: Vec<Vec<f64>> = vec![vec![]; d.n()];
    for (i, e) in d.edges.iter().enumerate() {
        tangents[e.u].push(d.tangent_at(i, e.u).angle());
        tangents[e.v].push(d.tangent_at(i, e.v).angle());
    }
    tangents
        .into_iter()
        .map(|mut t| {
            let k = t.len();
            if k < 2 {
                return 0.0;
            }
            t.sort_by(f64::total_cmp);
            let ideal = TAU / k as f64;
            (0..k)
                .map(|i| {
                    let gap = if i + 1 < k { t[i + 1] - t[i] } else { t[0] + TAU - t[k - 1] };
                    (gap - ideal).abs()
                })
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Arcs passing within `eps` (scale-relative) of a vertex that is not an
/// endpoint, and arcs detached from their endpoints.
pub fn incidence(d: &Drawing, eps: f64) -> (Vec<IncidenceViolation>, Vec<usize>) {
    let scale = d.scale();
    let mut violations = vec![];
    let mut detached = vec![];
    for (i, e) in d.edges.iter().enumerate() {
        let attach = 1e-9 * scale;
        if e.arc.p().dist(d.positions[e.u]) > attach || e.arc.q().dist(d.positions[e.v]) > attach {
            detached.push(i);
        }
        for (v, &p) in d.positions.iter().enumerate() {
            if v == e.u || v == e.v {
                continue;
            }
            let dist = e.arc.clearance(p);
            if dist < eps * scale {
                violations.push(IncidenceViolation {
                    edge: i,
                    vertex: v,
                    distance: dist,
                });
            }
        }
    }
    (violations, detached)
}

/// Pairwise crossings between arcs, plus overlapping co-circular pairs.
pub fn crossings(d: &Drawing) -> (Vec<CrossingRecord>, Vec<(usize, usize)>) {
    let tol = 1e-9 * d.scale();
    let mut out = vec![];
    let mut overlaps = vec![];
    for i in 0..d.edges.len() {
        for j in i + 1..d.edges.len() {
            let (a, b) = (&d.edges[i].arc, &d.edges[j].arc);
            if same_carrier(a, b, tol) {
                if extents_overlap(a, b, tol) {
                    overlaps.push((i, j));
                }
                continue;
            }
            for c in arc_crossings(a, b, tol) {
                out.push(CrossingRecord {
                    edges: (i, j),
                    point: c.point,
                    grazing: c.grazing,
                });
            }
        }
    }
    (out, overlaps)
}

fn same_carrier(a: &crate::euclid::Arc, b: &crate::euclid::Arc, tol: f64) -> bool {
    let ga = GeneralizedCircle::of_arc(a);
    [b.p(), b.midpoint(), b.q()]
        .iter()
        .all(|&x| ga.distance(x) <= tol)
}

fn extents_overlap(a: &crate::euclid::Arc, b: &crate::euclid::Arc, tol: f64) -> bool {
    let interior = |arc: &crate::euclid::Arc, x: Point| {
        arc.extent_contains(x, tol) && x.dist(arc.p()) > tol && x.dist(arc.q()) > tol
    };
    interior(a, b.midpoint())
        || interior(b, a.midpoint())
        || interior(a, b.p())
        || interior(a, b.q())
        || interior(b, a.p())
        || interior(b, a.q())
}

pub fn cocircularity(d: &Drawing, c: &Circle) -> f64 {
    d.positions
        .iter()
        .map(|&p| c.offset(p).abs())
        .fold(0.0, f64::max)
}

/// Full report with the default clearance `1e-6`.
pub fn resolution_report(d: &Drawing) -> VerificationReport {
    report_with(d, 1e-6)
}

pub fn report_with(d: &Drawing, clearance: f64) -> VerificationReport {
    let deviations = angular_deviations(d);
    let (max_deviation, worst_vertex) = deviations
        .iter()
        .enumerate()
        .fold((0.0, None), |(m, w), (v, &x)| if x > m { (x, Some(v)) } else { (m, w) });
    let (incidence_violations, detached_edges) = incidence(d, clearance);
    let (crossings, overlaps) = crossings(d);
    let crossing_count = crossings.iter().filter(|c| !c.grazing).count();
    let grazing_count = crossings.len() - crossing_count;
    let cocircularity = match d.circles.as_slice() {
        [c] => Some(cocircularity(d, c)),
        _ => None,
    };
    VerificationReport {
        deviations,
        max_deviation,
        worst_vertex,
        detached_edges,
        incidence_violations,
        crossing_count,
        grazing_count,
        planar: crossing_count == 0 && overlaps.is_empty(),
        overlaps,
        crossings,
        cocircularity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::DrawnEdge;
    use crate::euclid::{Arc, Direction};

    fn drawing(positions: Vec<Point>, edges: Vec<(usize, usize, Arc)>) -> Drawing {
        Drawing {
            names: (0..positions.len()).map(|i| i.to_string()).collect(),
            frames: vec![None; positions.len()],
            positions,
            edges: edges
                .into_iter()
                .map(|(u, v, arc)| DrawnEdge { u, v, arc, group: None })
                .collect(),
            circles: vec![],
        }
    }

    fn star(perturb: f64) -> Drawing {
        let c = Point::ORIGIN;
        let mut pos = vec![c];
        let mut edges = vec![];
        for k in 0..4 {
            let dir = Direction::new(TAU * k as f64 / 4.0 + if k == 1 { perturb } else { 0.0 });
            let q = Point::polar(1.0, TAU * k as f64 / 4.0 + 0.3);
            pos.push(q);
            edges.push((0, k + 1, crate::euclid::arc_from_tangent(c, dir, q).unwrap()));
        }
        drawing(pos, edges)
    }

    #[test]
    fn single_edge_is_perfect() {
        let d = drawing(
            vec![Point::ORIGIN, Point::new(1.0, 0.0)],
            vec![(0, 1, Arc::segment(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap())],
        );
        let r = resolution_report(&d);
        assert_eq!(r.max_deviation, 0.0);
        assert!(r.is_lombardi(1e-12) && r.planar);
    }

    #[test]
    fn injected_tangent_fault() {
        assert!(resolution_report(&star(0.0)).max_deviation < 1e-12);
        let r = resolution_report(&star(1e-3));
        assert!((r.max_deviation - 1e-3).abs() < 1e-12);
        assert_eq!(r.worst_vertex, Some(0));
    }

    #[test]
    fn vertex_on_arc() {
        let p = Point::new(-1.0, 0.0);
        let q = Point::new(1.0, 0.0);
        let d = drawing(
            vec![p, q, Point::ORIGIN],
            vec![(0, 1, Arc::segment(p, q).unwrap())],
        );
        let r = resolution_report(&d);
        assert_eq!(r.incidence_violations.len(), 1);
        assert_eq!(r.incidence_violations[0].vertex, 2);
    }

    #[test]
    fn crossing_counted_and_overlap_found() {
        let pts = vec![
            Point::new(-1.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, -1.0),
            Point::new(0.0, 1.0),
        ];
        let d = drawing(
            pts.clone(),
            vec![
                (0, 1, Arc::segment(pts[0], pts[1]).unwrap()),
                (2, 3, Arc::segment(pts[2], pts[3]).unwrap()),
            ],
        );
        let r = resolution_report(&d);
        assert_eq!(r.crossing_count, 1);
        assert!(!r.planar);
        // Two arcs of the unit circle sharing a stretch.
        let a = Arc::through(pts[1], Point::polar(1.0, 1.0), pts[0]).unwrap();
        let b = Arc::through(pts[3], Point::polar(1.0, 2.0), pts[0]).unwrap();
        let d = drawing(pts, vec![(1, 0, a), (3, 0, b)]);
        let r = resolution_report(&d);
        assert_eq!(r.overlaps, vec![(0, 1)]);
    }

    #[test]
    fn frames_are_ignored() {
        let mut d = star(0.0);
        d.frames[0] = Some(crate::drawing::Frame {
            base: Direction::new(1.234),
            degree: 4,
        });
        assert!(resolution_report(&d).max_deviation < 1e-12);
    }
}
