//! The output of every layout engine.

use crate::euclid::{Arc, Circle, Direction, Point};
use crate::graph::RotationGraph;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Evenly spaced slot directions at a vertex: slot `k` is
/// `base + 2πk/degree`, in rotation order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub base: Direction,
    pub degree: usize,
}

impl Frame {
    pub fn slot(&self, k: usize) -> Direction {
        self.base.rotated(TAU * k as f64 / self.degree as f64)
    }
}

/// One edge drawn as an arc from `positions[u]` to `positions[v]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrawnEdge {
    pub u: usize,
    pub v: usize,
    pub arc: Arc,
    /// Factor, orbit or other grouping used for coloring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Drawing {
    pub names: Vec<String>,
    pub positions: Vec<Point>,
    pub edges: Vec<DrawnEdge>,
    #[serde(default)]
    pub frames: Vec<Option<Frame>>,
    /// Guide circles: the host circle of a circular drawing, the concentric
    /// circles of a spirograph, the boundary of the Poincaré disk.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub circles: Vec<Circle>,
}

impl Drawing {
    pub fn empty() -> Self {
        Drawing {
            names: vec![],
            positions: vec![],
            edges: vec![],
            frames: vec![],
            circles: vec![],
        }
    }

    /// Drawing skeleton for `g` with every vertex at the origin.
    pub fn for_graph(g: &RotationGraph) -> Self {
        Drawing {
            names: g.names().to_vec(),
            positions: vec![Point::ORIGIN; g.n()],
            edges: vec![],
            frames: vec![None; g.n()],
            circles: vec![],
        }
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    /// Incident edges of `v` as (edge index, other endpoint).
    pub fn incident(&self, v: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                if e.u == v {
                    Some((i, e.v))
                } else if e.v == v {
                    Some((i, e.u))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    /// Direction in which edge `i` leaves vertex `v`, read from the arc.
    pub fn tangent_at(&self, i: usize, v: usize) -> Direction {
        let e = &self.edges[i];
        let (tp, tq) = e.arc.tangents();
        if e.u == v {
            tp
        } else {
            tq
        }
    }

    /// Rough size of the drawing, for scale-relative tolerances.
    pub fn scale(&self) -> f64 {
        if self.positions.is_empty() {
            return 1.0;
        }
        let (mut lo, mut hi) = (self.positions[0], self.positions[0]);
        for p in &self.positions {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        lo.dist(hi).max(1.0)
    }

    /// Apply a similarity `z ↦ s z + t` to positions, arcs and circles.
    pub fn transformed(&self, scale: f64, shift: Point) -> Drawing {
        let map = |p: Point| p * scale + shift;
        let mut out = self.clone();
        for p in &mut out.positions {
            *p = map(*p);
        }
        for e in &mut out.edges {
            let a = e.arc;
            e.arc = Arc::new(map(a.p()), map(a.q()), a.bulge()).expect("similar arc");
        }
        for c in &mut out.circles {
            c.center = map(c.center);
            c.radius *= scale;
        }
        out
    }
}
