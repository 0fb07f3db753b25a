use super::{Arc, Circle, GeneralizedCircle, GeomError, Point};
use num_complex::Complex64;

/// `z ↦ (a z + b) / (c z + d)` on the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

fn z(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

fn pt(w: Complex64) -> Point {
    Point::new(w.re, w.im)
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, GeomError> {
        let det = a * d - b * c;
        let scale = a.norm() * d.norm() + b.norm() * c.norm();
        if det.norm() <= 1e-14 * scale || scale == 0.0 {
            return Err(GeomError::SingularMap);
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        MobiusMap {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The map sending `z1, z2, z3` to `0, 1, ∞`.
    pub fn to_standard(z1: Point, z2: Point, z3: Point) -> Result<Self, GeomError> {
        let (z1, z2, z3) = (z(z1), z(z2), z(z3));
        MobiusMap::new(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))
    }

    /// The unique map sending each `from[i]` to `to[i]`.
    pub fn three_point(from: [Point; 3], to: [Point; 3]) -> Result<Self, GeomError> {
        let f = MobiusMap::to_standard(from[0], from[1], from[2])?;
        let g = MobiusMap::to_standard(to[0], to[1], to[2])?;
        Ok(g.inverse().compose(&f))
    }

    /// Apply `other` first, then `self`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// The point sent to infinity, if any.
    pub fn pole(&self) -> Option<Point> {
        if self.c.norm() <= 1e-300 {
            None
        } else {
            Some(pt(-self.d / self.c))
        }
    }

    pub fn apply_point(&self, p: Point) -> Result<Point, GeomError> {
        let w = z(p);
        let den = self.c * w + self.d;
        let num = self.a * w + self.b;
        if den.norm() <= 1e-14 * num.norm().max(1e-300) {
            return Err(GeomError::InfiniteImage);
        }
        let out = pt(num / den);
        if !out.is_finite() {
            return Err(GeomError::InfiniteImage);
        }
        Ok(out)
    }

    pub fn apply_generalized(&self, g: &GeneralizedCircle) -> Result<GeneralizedCircle, GeomError> {
        let samples: Vec<Point> = match *g {
            GeneralizedCircle::Circle(c) => (0..5).map(|k| c.point_at(0.37 + k as f64 * 1.2)).collect(),
            GeneralizedCircle::Line { point, dir } => {
                (0..5).map(|k| point + dir * (k as f64 * 1.7 - 3.1)).collect()
            }
        };
        let images: Vec<Point> = samples
            .into_iter()
            .filter_map(|s| self.apply_point(s).ok())
            .collect();
        if images.len() < 3 {
            return Err(GeomError::InfiniteImage);
        }
        Ok(match Circle::through(images[0], images[1], images[2]) {
            Some(c) => GeneralizedCircle::Circle(c),
            None => GeneralizedCircle::line_through(images[0], images[1]),
        })
    }

    /// Image of a circle, which is a line when the circle passes through the
    /// pole.
    pub fn apply_circle(&self, c: &Circle) -> Result<GeneralizedCircle, GeomError> {
        self.apply_generalized(&GeneralizedCircle::Circle(*c))
    }

    /// Image of an arc. Fails when the arc passes through the pole.
    pub fn apply_arc(&self, a: &Arc) -> Result<Arc, GeomError> {
        if let Some(pole) = self.pole() {
            if a.clearance(pole) <= 1e-12 * (1.0 + a.chord_length()) {
                return Err(GeomError::InfiniteImage);
            }
        }
        let p = self.apply_point(a.p())?;
        let m = self.apply_point(a.midpoint())?;
        let q = self.apply_point(a.q())?;
        Arc::through(p, m, q)
    }
}

/// Cross-ratio `(z1, z2; z3, z4)`.
pub fn cross_ratio(z1: Point, z2: Point, z3: Point, z4: Point) -> Complex64 {
    let (z1, z2, z3, z4) = (z(z1), z(z2), z(z3), z(z4));
    ((z1 - z3) * (z2 - z4)) / ((z2 - z3) * (z1 - z4))
}
