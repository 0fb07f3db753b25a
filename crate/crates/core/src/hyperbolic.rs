//! Poincaré-disk primitives.
//!
//! Angles are read off Euclidean tangents, which is valid because the model
//! is conformal. Most constructions move a point to the origin with the disk
//! automorphism `z ↦ (z - x) / (1 - x̄ z)`, whose derivative at `x` is a
//! positive real, so it preserves directions there.

use crate::euclid::{Arc, Direction, GeomError, Point};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("point is not inside the wedge")]
    PointOutsideWedge,
    #[error("point is not in the closed unit disk: |z| = {0}")]
    OutsideDisk(f64),
    #[error("expected an ideal point")]
    NotIdeal,
    #[error("expected an interior point")]
    NotInterior,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

const IDEAL_EPS: f64 = 1e-9;

/// A point of the closed disk: interior, or ideal on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    location: Point,
    ideal: bool,
}

impl HPoint {
    pub const ORIGIN: HPoint = HPoint {
        location: Point::ORIGIN,
        ideal: false,
    };

    pub fn interior(p: Point) -> Result<Self, HypError> {
        let r = p.norm();
        if !(r < 1.0) {
            return Err(HypError::OutsideDisk(r));
        }
        Ok(HPoint {
            location: p,
            ideal: false,
        })
    }

    /// Ideal point near `p`, renormalized onto the unit circle.
    pub fn ideal(p: Point) -> Result<Self, HypError> {
        let r = p.norm();
        if (r - 1.0).abs() > IDEAL_EPS {
            return Err(HypError::OutsideDisk(r));
        }
        Ok(HPoint {
            location: p * (1.0 / r),
            ideal: true,
        })
    }

    pub fn ideal_at(angle: f64) -> Self {
        HPoint {
            location: Point::polar(1.0, angle),
            ideal: true,
        }
    }

    pub fn location(&self) -> Point {
        self.location
    }

    pub fn is_ideal(&self) -> bool {
        self.ideal
    }
}

fn cz(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

/// The automorphism sending `x` to the origin.
fn to_origin(x: Point, z: Point) -> Complex64 {
    let (x, z) = (cz(x), cz(z));
    (z - x) / (Complex64::new(1.0, 0.0) - x.conj() * z)
}

/// Direction at interior `x` of the geodesic towards `target`.
pub fn direction_to(x: HPoint, target: HPoint) -> Result<Direction, HypError> {
    if x.ideal {
        return Err(HypError::NotInterior);
    }
    let w = to_origin(x.location, target.location);
    if w.norm() < 1e-15 {
        return Err(HypError::CoincidentPoints);
    }
    Ok(Direction::new(w.arg()))
}

/// Ideal endpoint of the geodesic ray leaving interior `x` in direction `dir`.
pub fn ray_endpoint(x: HPoint, dir: Direction) -> Result<HPoint, HypError> {
    if x.ideal {
        return Err(HypError::NotInterior);
    }
    let e = Complex64::from_polar(1.0, dir.angle());
    let xc = cz(x.location);
    let w = (e + xc) / (Complex64::new(1.0, 0.0) + xc.conj() * e);
    Ok(HPoint::ideal_at(w.arg()))
}

/// A hyperbolic line segment, stored as its Euclidean carrier arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geodesic {
    arc: Arc,
}

impl Geodesic {
    pub fn arc(&self) -> &Arc {
        &self.arc
    }

    pub fn is_diameter(&self) -> bool {
        self.arc.is_segment()
    }
}

pub fn geodesic_through(a: HPoint, b: HPoint) -> Result<Geodesic, HypError> {
    let (pa, pb) = (a.location, b.location);
    if pa.dist(pb) < 1e-14 {
        return Err(HypError::CoincidentPoints);
    }
    // Center c of the orthogonal circle solves 2 c·a = |a|² + 1 and the same
    // for b; a singular system means the points are collinear with the origin.
    let det = 2.0 * (pa.x * pb.y - pa.y * pb.x);
    let scale = pa.norm().max(pb.norm()).max(1e-300) * pa.dist(pb);
    if det.abs() <= 1e-12 * scale.max(1e-12) {
        return Ok(Geodesic {
            arc: Arc::segment(pa, pb)?,
        });
    }
    let (ra, rb) = (pa.norm2() + 1.0, pb.norm2() + 1.0);
    let c = Point::new((ra * pb.y - rb * pa.y) / det, (pa.x * rb - pb.x * ra) / det);
    let radius = 0.5 * (c.dist(pa) + c.dist(pb));
    // The geodesic is the arc of that circle bending towards the origin.
    let towards = pa.lerp(pb, 0.5) - c;
    let m = c + towards * (radius / towards.norm());
    Ok(Geodesic {
        arc: Arc::through(pa, m, pb)?,
    })
}

/// Point at Euclidean parameter `t` on the geodesic from `base` (at 0) to
/// the ideal point `ideal_end` (at 1).
pub fn point_on_ray(base: HPoint, ideal_end: HPoint, t: f64) -> Result<HPoint, HypError> {
    if base.ideal {
        return Err(HypError::NotInterior);
    }
    if !ideal_end.ideal {
        return Err(HypError::NotIdeal);
    }
    if t >= 1.0 {
        return Ok(ideal_end);
    }
    let g = geodesic_through(base, ideal_end)?;
    let p = g.arc.point_at(t.max(0.0));
    if p.norm() >= 1.0 {
        // Rounding right at the boundary: pull back inside.
        return HPoint::interior(p * ((1.0 - 1e-16) / p.norm()));
    }
    HPoint::interior(p)
}

/// Region bounded by two geodesic rays from `apex`, swept counter-clockwise
/// from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wedge {
    pub apex: HPoint,
    pub from: Direction,
    pub to: Direction,
}

impl Wedge {
    pub fn new(apex: HPoint, from: Direction, to: Direction) -> Result<Self, HypError> {
        if apex.ideal {
            return Err(HypError::NotInterior);
        }
        if to.diff(from) == 0.0 {
            return Err(GeomError::Invalid("wedge opening must be positive").into());
        }
        Ok(Wedge { apex, from, to })
    }

    /// Wedge of the given opening centered on `axis`.
    pub fn around(apex: HPoint, axis: Direction, opening: f64) -> Result<Self, HypError> {
        Wedge::new(apex, axis.rotated(-opening / 2.0), axis.rotated(opening / 2.0))
    }

    pub fn opening(&self) -> f64 {
        let o = (self.to.angle() - self.from.angle()).rem_euclid(TAU);
        if o == 0.0 {
            TAU
        } else {
            o
        }
    }

    pub fn bisector(&self) -> Direction {
        self.from.rotated(self.opening() / 2.0)
    }

    pub fn boundary_ends(&self) -> Result<[HPoint; 2], HypError> {
        Ok([
            ray_endpoint(self.apex, self.from)?,
            ray_endpoint(self.apex, self.to)?,
        ])
    }

    /// Whether `x` is in the closed wedge, up to `tol` radians at the apex.
    pub fn contains(&self, x: HPoint, tol: f64) -> bool {
        let Ok(d) = direction_to(self.apex, x) else {
            return true;
        };
        let off = (d.angle() - self.from.angle()).rem_euclid(TAU);
        off <= self.opening() + tol || off >= TAU - tol
    }
}

/// Largest angle to the forward bisector ray at `x` of a geodesic ray from
/// `x` that stays inside `w`.
pub fn wedge_opening(x: HPoint, w: &Wedge) -> Result<f64, HypError> {
    if x.ideal {
        return Ok(std::f64::consts::PI);
    }
    if !w.contains(x, 1e-9) {
        return Err(HypError::PointOutsideWedge);
    }
    let axis_end = ray_endpoint(w.apex, w.bisector())?;
    let forward = direction_to(x, axis_end)?;
    let mut best = f64::INFINITY;
    for end in w.boundary_ends()? {
        let d = direction_to(x, end)?;
        best = best.min(d.diff(forward).abs());
    }
    Ok(best)
}

/// Ideal endpoints of the `d - 1` rays that, together with the edge arriving
/// at `x` with travel direction `incoming`, split the full turn at `x`
/// evenly. Rays are listed counter-clockwise starting after the edge.
pub fn equally_spaced_ideal_rays(
    x: HPoint,
    incoming: Direction,
    d: usize,
) -> Result<Vec<HPoint>, HypError> {
    if d < 2 {
        return Err(GeomError::Invalid("need at least two rays").into());
    }
    let back = incoming.reversed();
    (1..d)
        .map(|k| ray_endpoint(x, back.rotated(TAU * k as f64 / d as f64)))
        .collect()
}

/// Directions at `x` of the rays produced by [`equally_spaced_ideal_rays`].
pub fn equally_spaced_directions(incoming: Direction, d: usize) -> Vec<Direction> {
    let back = incoming.reversed();
    (1..d)
        .map(|k| back.rotated(TAU * k as f64 / d as f64))
        .collect()
}

/// Hyperbolic distance between interior points.
pub fn distance(a: HPoint, b: HPoint) -> f64 {
    if a.ideal || b.ideal {
        return f64::INFINITY;
    }
    let r = to_origin(a.location, b.location).norm();
    2.0 * r.atanh()
}
