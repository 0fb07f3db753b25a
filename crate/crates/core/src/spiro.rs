//! k-circular Lombardi drawings of graphs with cyclic symmetry.
//!
//! Vertices come in orbits of size `n`, one orbit per concentric circle.
//! Vertex `(c, k)` sits at angle `2πk/n + phase_c` on radius `r_c` and its
//! frame is rotated by `twist_c` from the radial direction, so the whole
//! drawing is invariant under rotation by `2π/n`. Circles are solved from
//! the inside out.

use crate::drawing::{Drawing, DrawnEdge, Frame};
use crate::euclid::{arc_from_tangent, wrap_pi, Arc, Circle, Direction, GeomError, Point};
use crate::graph::{GraphError, RotationGraph};
use crate::verify;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpiroError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid spec: {0}")]
    Invalid(String),
    #[error("expansion creates a repeated edge or loop: {0}")]
    MultiEdgeOnExpansion(String),
    #[error("vertices of circle {circle} have {count} neighbors on smaller circles")]
    TooManyInwardNeighbors { circle: usize, count: usize },
    #[error("no radius for circle {circle} in ({low}, {high}) solves its angle constraints")]
    RootFindingFailed { circle: usize, low: f64, high: f64 },
    #[error("circle {circle}: remaining constraint off by {residual:e}")]
    InconsistentThirdConstraint { circle: usize, residual: f64 },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// One orbit of vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpiroCircle {
    /// Angular offset in units of the symmetry step `2π/n`; 0 or 0.5.
    #[serde(default)]
    pub phase: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

/// Edge orbit: `(from.0, k) ~ (to.0, k + to.1 - from.1)` for every `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOrbit {
    pub from: [usize; 2],
    pub to: [usize; 2],
}

/// Which end of an edge orbit a vertex sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    From,
    To,
    /// Both ends land on the same vertex pair (a diameter orbit).
    Both,
}

/// Entry of a circle's rotation: orbit index and end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitRef {
    pub orbit: usize,
    pub end: Option<End>,
}

impl fmt::Display for OrbitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.end {
            Some(End::From) => write!(f, "{}+", self.orbit),
            Some(End::To) => write!(f, "{}-", self.orbit),
            _ => write!(f, "{}", self.orbit),
        }
    }
}

impl std::str::FromStr for OrbitRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (num, end) = match s.strip_suffix('+') {
            Some(rest) => (rest, Some(End::From)),
            None => match s.strip_suffix('-') {
                Some(rest) => (rest, Some(End::To)),
                None => (s, None),
            },
        };
        let orbit = num.trim().parse().map_err(|_| format!("bad orbit reference {s:?}"))?;
        Ok(OrbitRef { orbit, end })
    }
}

/// On-disk spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpiroDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub symmetry: usize,
    pub circles: Vec<SpiroCircle>,
    pub orbits: Vec<EdgeOrbit>,
    /// Counter-clockwise orbit references per circle, keyed by circle index.
    pub order: BTreeMap<String, Vec<String>>,
}

/// Validated spec.
#[derive(Debug, Clone, PartialEq)]
pub struct SpiroSpec {
    pub name: Option<String>,
    pub symmetry: usize,
    pub circles: Vec<SpiroCircle>,
    pub orbits: Vec<EdgeOrbit>,
    /// Rotation per circle with every end resolved.
    pub order: Vec<Vec<OrbitRef>>,
}

impl SpiroDocument {
    pub fn parse(text: &str) -> Result<Self, SpiroError> {
        serde_json::from_str(text).map_err(|e| SpiroError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

pub fn parse_spiro_spec(text: &str) -> Result<SpiroSpec, SpiroError> {
    SpiroSpec::from_document(&SpiroDocument::parse(text)?)
}

impl SpiroSpec {
    pub fn from_document(doc: &SpiroDocument) -> Result<Self, SpiroError> {
        let n = doc.symmetry;
        let bad = |m: String| Err(SpiroError::Invalid(m));
        if n == 0 {
            return bad("symmetry must be positive".into());
        }
        if doc.circles.is_empty() {
            return bad("no circles".into());
        }
        for (c, circ) in doc.circles.iter().enumerate() {
            if circ.phase != 0.0 && circ.phase != 0.5 {
                return bad(format!("circle {c}: phase must be 0 or 0.5"));
            }
            if circ.radius.is_some_and(|r| !(r > 0.0 && r.is_finite())) {
                return bad(format!("circle {c}: radius must be positive"));
            }
        }
        let k = doc.circles.len();
        for (i, o) in doc.orbits.iter().enumerate() {
            if o.from[0] >= k || o.to[0] >= k {
                return bad(format!("orbit {i} names a missing circle"));
            }
        }
        let mut order = vec![vec![]; k];
        for (key, refs) in &doc.order {
            let c: usize = key
                .parse()
                .ok()
                .filter(|&c| c < k)
                .ok_or_else(|| SpiroError::Invalid(format!("order key {key:?} is not a circle")))?;
            for s in refs {
                let r: OrbitRef = s.parse().map_err(SpiroError::Invalid)?;
                if r.orbit >= doc.orbits.len() {
                    return bad(format!("circle {c}: no orbit {}", r.orbit));
                }
                order[c].push(r);
            }
        }
        let spec = SpiroSpec {
            name: doc.name.clone(),
            symmetry: n,
            circles: doc.circles.clone(),
            orbits: doc.orbits.clone(),
            order,
        };
        let order = spec.resolve_order()?;
        let spec = SpiroSpec { order, ..spec };
        spec.expand()?;
        for c in 0..k {
            let count = spec.inward(c).len();
            if count > 3 {
                return Err(SpiroError::TooManyInwardNeighbors { circle: c, count });
            }
        }
        Ok(spec)
    }

    pub fn to_document(&self) -> SpiroDocument {
        SpiroDocument {
            name: self.name.clone(),
            symmetry: self.symmetry,
            circles: self.circles.clone(),
            orbits: self.orbits.clone(),
            order: self
                .order
                .iter()
                .enumerate()
                .map(|(c, refs)| (c.to_string(), refs.iter().map(|r| r.to_string()).collect()))
                .collect(),
        }
    }

    fn step(&self, o: &EdgeOrbit) -> usize {
        let n = self.symmetry as i64;
        (o.to[1] as i64 - o.from[1] as i64).rem_euclid(n) as usize
    }

    fn is_diameter(&self, o: &EdgeOrbit) -> bool {
        o.from[0] == o.to[0] && (2 * self.step(o)) % self.symmetry == 0
    }

    /// Ends of every orbit at circle `c`.
    fn ends_at(&self, c: usize) -> Vec<OrbitRef> {
        let mut out = vec![];
        for (i, o) in self.orbits.iter().enumerate() {
            if o.from[0] == c && o.to[0] == c {
                if self.is_diameter(o) {
                    out.push(OrbitRef { orbit: i, end: Some(End::Both) });
                } else {
                    out.push(OrbitRef { orbit: i, end: Some(End::From) });
                    out.push(OrbitRef { orbit: i, end: Some(End::To) });
                }
            } else if o.from[0] == c {
                out.push(OrbitRef { orbit: i, end: Some(End::From) });
            } else if o.to[0] == c {
                out.push(OrbitRef { orbit: i, end: Some(End::To) });
            }
        }
        out
    }

    fn resolve_order(&self) -> Result<Vec<Vec<OrbitRef>>, SpiroError> {
        let mut out = vec![];
        for c in 0..self.circles.len() {
            let ends = self.ends_at(c);
            let mut resolved = vec![];
            for r in &self.order[c] {
                let matches: Vec<OrbitRef> = ends
                    .iter()
                    .copied()
                    .filter(|e| {
                        e.orbit == r.orbit
                            && match (r.end, e.end) {
                                (None, _) => true,
                                (Some(a), Some(End::Both)) => a != End::Both,
                                (a, b) => a == b,
                            }
                    })
                    .collect();
                match matches.as_slice() {
                    [one] => resolved.push(*one),
                    [] => {
                        return Err(SpiroError::Invalid(format!(
                            "circle {c}: orbit reference {r} does not touch this circle"
                        )))
                    }
                    _ => {
                        return Err(SpiroError::Invalid(format!(
                            "circle {c}: orbit reference {r} is ambiguous; add + or -"
                        )))
                    }
                }
            }
            let mut sorted = resolved.clone();
            sorted.sort();
            let mut want = ends.clone();
            want.sort();
            if sorted != want {
                return Err(SpiroError::Invalid(format!(
                    "circle {c}: order must list each incident orbit end exactly once"
                )));
            }
            out.push(resolved);
        }
        Ok(out)
    }

    pub fn vertex(&self, c: usize, k: i64) -> usize {
        c * self.symmetry + k.rem_euclid(self.symmetry as i64) as usize
    }

    /// Neighbor of `(c, k)` along an orbit end.
    fn neighbor(&self, k: i64, r: OrbitRef) -> usize {
        let o = &self.orbits[r.orbit];
        let d = o.to[1] as i64 - o.from[1] as i64;
        match r.end.expect("resolved") {
            End::From | End::Both => self.vertex(o.to[0], k + d),
            End::To => self.vertex(o.from[0], k - d),
        }
    }

    pub fn degree(&self, c: usize) -> usize {
        self.order[c].len()
    }

    /// Orbit ends at circle `c` whose other end lies on a smaller circle.
    pub fn inward(&self, c: usize) -> Vec<OrbitRef> {
        self.order[c]
            .iter()
            .copied()
            .filter(|r| self.other_circle(r) < c)
            .collect()
    }

    fn other_circle(&self, r: &OrbitRef) -> usize {
        let o = &self.orbits[r.orbit];
        match r.end.expect("resolved") {
            End::From | End::Both => o.to[0],
            End::To => o.from[0],
        }
    }

    /// Slot index of an orbit end in its circle's rotation.
    fn slot(&self, c: usize, r: OrbitRef) -> usize {
        self.order[c].iter().position(|&x| x == r).expect("orbit end in rotation")
    }

    /// Orbit end at the far vertex of `r`.
    fn opposite(&self, r: OrbitRef) -> OrbitRef {
        let end = match r.end.expect("resolved") {
            End::From => End::To,
            End::To => End::From,
            End::Both => End::Both,
        };
        OrbitRef { orbit: r.orbit, end: Some(end) }
    }

    /// Edges of the expanded graph as (u, v, orbit), `u` on the `from` end.
    fn edge_list(&self) -> Vec<(usize, usize, usize)> {
        let n = self.symmetry as i64;
        let mut out = vec![];
        for (i, o) in self.orbits.iter().enumerate() {
            let count = if self.is_diameter(o) { n / 2 } else { n };
            let d = o.to[1] as i64 - o.from[1] as i64;
            for k in 0..count {
                out.push((self.vertex(o.from[0], k), self.vertex(o.to[0], k + d), i));
            }
        }
        out
    }

    pub fn vertex_names(&self) -> Vec<String> {
        (0..self.circles.len())
            .flat_map(|c| (0..self.symmetry).map(move |k| format!("{c}.{k}")))
            .collect()
    }

    /// The expanded graph with its rotation.
    pub fn expand(&self) -> Result<RotationGraph, SpiroError> {
        let n = self.symmetry as i64;
        let edges: Vec<(usize, usize)> = self.edge_list().into_iter().map(|(u, v, _)| (u, v)).collect();
        let rot: Vec<Vec<usize>> = (0..self.circles.len())
            .flat_map(|c| (0..n).map(move |k| (c, k)))
            .map(|(c, k)| self.order[c].iter().map(|&r| self.neighbor(k, r)).collect())
            .collect();
        RotationGraph::with_names(self.vertex_names(), &edges, Some(rot)).map_err(|e| match e {
            GraphError::MultiEdge(..) | GraphError::SelfLoop(..) => {
                SpiroError::MultiEdgeOnExpansion(e.to_string())
            }
            other => SpiroError::Invalid(other.to_string()),
        })
    }
}

/// Placement of one circle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleSolution {
    pub radius: f64,
    /// Frame base of vertex `(c, 0)` minus its polar angle.
    pub twist: f64,
    /// Angle residuals of every constraint at the solution.
    pub residuals: Vec<f64>,
    /// The radius was chosen heuristically rather than solved.
    pub heuristic: bool,
    /// Sign changes of the solved residual over the scanned bracket.
    pub sign_changes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpiroOptions {
    /// Ratio between consecutive radii when the radius is free.
    pub ratio: f64,
    /// Scan resolution of the radius bracket.
    pub samples: usize,
    /// Upper end of the bracket as a multiple of the previous radius.
    pub reach: f64,
    /// Keep radii increasing. When off, a circle may also be placed inside
    /// the previous one, down to `1/reach` of its radius.
    pub increasing: bool,
}

impl Default for SpiroOptions {
    fn default() -> Self {
        SpiroOptions {
            ratio: 2.0,
            samples: 512,
            reach: 64.0,
            increasing: true,
        }
    }
}

/// Solved circles plus the geometry they induce.
#[derive(Debug, Clone)]
struct Layout<'s> {
    spec: &'s SpiroSpec,
    solved: Vec<CircleSolution>,
}

impl<'s> Layout<'s> {
    fn polar_angle(&self, c: usize, k: i64) -> f64 {
        let n = self.spec.symmetry as f64;
        TAU * (k as f64 + self.spec.circles[c].phase) / n
    }

    fn position_with(&self, c: usize, k: i64, radius: f64) -> Point {
        Point::polar(radius, self.polar_angle(c, k))
    }

    fn slot_dir(&self, c: usize, k: i64, twist: f64, r: OrbitRef) -> Direction {
        let d = self.spec.degree(c) as f64;
        Direction::new(self.polar_angle(c, k) + twist + TAU * self.spec.slot(c, r) as f64 / d)
    }

    /// Index `k` of the far endpoint of `r` seen from `(c, k0)`.
    fn far_index(&self, r: OrbitRef, k0: i64) -> i64 {
        let o = &self.spec.orbits[r.orbit];
        let d = o.to[1] as i64 - o.from[1] as i64;
        match r.end.expect("resolved") {
            End::From | End::Both => k0 + d,
            End::To => k0 - d,
        }
    }

    /// Arc arriving at `(c, 0)` on radius `radius` along inward end `r`.
    fn inward_arc(&self, c: usize, radius: f64, r: OrbitRef) -> Option<Arc> {
        let j = self.spec.other_circle(&r);
        let m = self.far_index(r, 0);
        let sol = &self.solved[j];
        let p = self.position_with(j, m, sol.radius);
        let dir = self.slot_dir(j, m, sol.twist, self.spec.opposite(r));
        let a = arc_from_tangent(p, dir, self.position_with(c, 0, radius)).ok()?;
        (a.bulge().abs() < 1e6).then_some(a)
    }

    /// Twist implied at `(c, 0)` by inward end `r`, as an angle mod 2π.
    fn implied_twist(&self, c: usize, radius: f64, r: OrbitRef) -> Option<f64> {
        let a = self.inward_arc(c, radius, r)?;
        let d = self.spec.degree(c) as f64;
        Some(a.tangents().1.angle() - self.polar_angle(c, 0) - TAU * self.spec.slot(c, r) as f64 / d)
    }

    /// Twist mod π demanded by same-circle orbits, if any, and whether they agree.
    fn same_circle_twist(&self, c: usize) -> Result<Option<f64>, SpiroError> {
        let d = self.spec.degree(c) as f64;
        let mut found: Option<f64> = None;
        for (i, o) in self.spec.orbits.iter().enumerate() {
            if o.from[0] != c || o.to[0] != c {
                continue;
            }
            let (a, b) = if self.spec.is_diameter(o) {
                let s = self.spec.slot(c, OrbitRef { orbit: i, end: Some(End::Both) });
                (s, s)
            } else {
                (
                    self.spec.slot(c, OrbitRef { orbit: i, end: Some(End::From) }),
                    self.spec.slot(c, OrbitRef { orbit: i, end: Some(End::To) }),
                )
            };
            let t = (-PI * (a + b) as f64 / d).rem_euclid(PI);
            match found {
                None => found = Some(t),
                Some(f) if wrap_half(f - t).abs() < 1e-12 => {}
                Some(f) => {
                    return Err(SpiroError::InconsistentThirdConstraint {
                        circle: c,
                        residual: wrap_half(f - t).abs(),
                    })
                }
            }
        }
        Ok(found)
    }

    /// Residuals at radius `radius` with twist taken from the first inward end.
    fn residuals(&self, c: usize, radius: f64, same: Option<f64>) -> Option<(f64, Vec<f64>)> {
        let inward = self.spec.inward(c);
        let twist = self.implied_twist(c, radius, inward[0])?;
        let mut out = vec![];
        for &r in &inward[1..] {
            out.push(wrap_pi(self.implied_twist(c, radius, r)? - twist));
        }
        if let Some(s) = same {
            out.push(wrap_half(twist - s));
        }
        Some((twist, out))
    }

    /// Arcs of all edges among circles `0..=c`, with `(c, ·)` described by `cand`.
    fn partial_drawing(&self, c: usize, cand: &CircleSolution) -> Drawing {
        let mut solved = self.solved.clone();
        solved.truncate(c);
        solved.push(cand.clone());
        let l = Layout {
            spec: self.spec,
            solved,
        };
        l.drawing(c + 1)
    }

    /// Drawing of the first `upto` circles.
    fn drawing(&self, upto: usize) -> Drawing {
        let spec = self.spec;
        let n = spec.symmetry as i64;
        let names = spec.vertex_names();
        let total = spec.circles.len();
        let mut positions = vec![Point::ORIGIN; total * spec.symmetry];
        let mut frames = vec![None; total * spec.symmetry];
        for c in 0..upto {
            let sol = &self.solved[c];
            for k in 0..n {
                let v = spec.vertex(c, k);
                positions[v] = self.position_with(c, k, sol.radius);
                frames[v] = Some(Frame {
                    base: Direction::new(self.polar_angle(c, k) + sol.twist),
                    degree: spec.degree(c),
                });
            }
        }
        let mut edges = vec![];
        for (u, v, i) in spec.edge_list() {
            let o = &spec.orbits[i];
            if o.from[0] >= upto || o.to[0] >= upto {
                continue;
            }
            // Leave from the endpoint on the smaller circle, or from the
            // `from` end on a shared circle.
            let (start, end_ref, finish) = if o.to[0] < o.from[0] {
                (v, OrbitRef { orbit: i, end: Some(End::To) }, u)
            } else {
                let e = if spec.is_diameter(o) { End::Both } else { End::From };
                (u, OrbitRef { orbit: i, end: Some(e) }, v)
            };
            let c0 = start / spec.symmetry;
            let k0 = (start % spec.symmetry) as i64;
            let dir = self.slot_dir(c0, k0, self.solved[c0].twist, end_ref);
            let arc = arc_from_tangent(positions[start], dir, positions[finish])
                .unwrap_or_else(|_| Arc::segment(positions[start], positions[finish]).expect("distinct"));
            let arc = if start == u { arc } else { arc.reversed() };
            edges.push(DrawnEdge {
                u,
                v,
                arc,
                group: Some(i),
            });
        }
        Drawing {
            names,
            positions,
            edges,
            frames,
            circles: self.solved[..upto]
                .iter()
                .map(|s| Circle {
                    center: Point::ORIGIN,
                    radius: s.radius,
                })
                .collect(),
        }
    }

    /// Faults of a candidate: incidence violations, then crossings, then
    /// total sweep of the arcs.
    fn quality(&self, c: usize, cand: &CircleSolution) -> (usize, usize, f64) {
        let d = self.partial_drawing(c, cand);
        let live = (c + 1) * self.spec.symmetry;
        let mut d2 = d.clone();
        d2.positions.truncate(live);
        d2.names.truncate(live);
        d2.frames.truncate(live);
        let r = verify::resolution_report(&d2);
        let sweep: f64 = d2.edges.iter().map(|e| e.arc.sweep().abs()).sum();
        (
            r.incidence_violations.len() + r.detached_edges.len() + r.overlaps.len(),
            r.crossing_count,
            sweep,
        )
    }

    fn best_of(&self, c: usize, cands: Vec<CircleSolution>) -> Option<CircleSolution> {
        let mut scored: Vec<((usize, usize, f64), CircleSolution)> =
            cands.into_iter().map(|s| (self.quality(c, &s), s)).collect();
        scored.sort_by(|a, b| {
            (a.0 .0, a.0 .1)
                .cmp(&(b.0 .0, b.0 .1))
                .then(a.0 .2.total_cmp(&b.0 .2))
                .then(a.1.radius.total_cmp(&b.1.radius))
        });
        scored.into_iter().next().map(|(_, s)| s)
    }

    fn free_radii(&self, c: usize, opts: &SpiroOptions) -> Vec<f64> {
        if let Some(r) = self.spec.circles[c].radius {
            return vec![r];
        }
        if c == 0 {
            return vec![1.0];
        }
        let prev = self.solved[c - 1].radius;
        let base = opts.ratio * prev;
        let mut out = vec![base];
        let mut r = base;
        while r * 0.75 > prev * 1.05 {
            r *= 0.75;
            out.push(r);
        }
        out
    }

    fn solve(&mut self, c: usize, opts: &SpiroOptions) -> Result<CircleSolution, SpiroError> {
        let same = self.same_circle_twist(c)?;
        let inward = self.spec.inward(c);
        if inward.is_empty() {
            let twists = match same {
                Some(s) => vec![s, s + PI],
                None => vec![0.0],
            };
            let mut cands = vec![];
            for r in self.free_radii(c, opts) {
                for &t in &twists {
                    cands.push(CircleSolution {
                        radius: r,
                        twist: t,
                        residuals: vec![],
                        heuristic: self.spec.circles[c].radius.is_none(),
                        sign_changes: None,
                    });
                }
            }
            return Ok(self.best_of(c, cands).expect("at least one candidate"));
        }
        let prev = if c == 0 { 0.0 } else { self.solved[c - 1].radius };
        let (lo, hi) = bracket(prev, opts);
        let bracket_err = SpiroError::RootFindingFailed { circle: c, low: lo, high: hi };
        let eval = |r: f64| self.residuals(c, r, same);

        if let Some(r) = self.spec.circles[c].radius {
            let (t, res) = eval(r).ok_or(bracket_err.clone())?;
            if let Some(worst) = res.iter().map(|x| x.abs()).max_by(f64::total_cmp).filter(|w| *w > 1e-8) {
                return Err(SpiroError::InconsistentThirdConstraint { circle: c, residual: worst });
            }
            return Ok(CircleSolution { radius: r, twist: t, residuals: res, heuristic: false, sign_changes: None });
        }

        let samples: Vec<(f64, Option<(f64, Vec<f64>)>)> =
            scan(lo, hi, opts.samples).map(|r| (r, eval(r))).collect();
        let constraints = samples.iter().find_map(|(_, s)| s.as_ref().map(|s| s.1.len())).unwrap_or(0);
        // Which residual, if any, actually varies with the radius.
        let driver = (0..constraints).find(|&i| {
            samples
                .iter()
                .filter_map(|(_, s)| s.as_ref())
                .any(|s| s.1[i].abs() > 1e-9)
        });
        let Some(i) = driver else {
            let mut cands = vec![];
            for r in self.free_radii(c, opts) {
                if let Some((t, res)) = eval(r) {
                    cands.push(CircleSolution { radius: r, twist: t, residuals: res, heuristic: true, sign_changes: None });
                }
            }
            return self.best_of(c, cands).ok_or(bracket_err);
        };
        let roots = sign_change_roots(&samples, i, |r| eval(r).map(|s| s.1[i]));
        let sign_changes = roots.len();
        let mut cands = vec![];
        let mut worst_other: f64 = 0.0;
        for r in roots {
            let Some((t, res)) = eval(r) else { continue };
            let worst = res.iter().map(|x| x.abs()).fold(0.0, f64::max);
            if worst < 1e-8 {
                cands.push(CircleSolution { radius: r, twist: t, residuals: res, heuristic: false, sign_changes: Some(sign_changes) });
            } else {
                worst_other = worst_other.max(worst);
            }
        }
        if cands.is_empty() {
            return Err(if sign_changes > 0 {
                SpiroError::InconsistentThirdConstraint { circle: c, residual: worst_other }
            } else {
                bracket_err
            });
        }
        Ok(self.best_of(c, cands).expect("nonempty"))
    }
}

fn bracket(prev: f64, opts: &SpiroOptions) -> (f64, f64) {
    if opts.increasing {
        (prev, prev * opts.reach)
    } else {
        (prev / opts.reach, prev * opts.reach)
    }
}

/// Geometric scan strictly inside `(lo, hi)`.
fn scan(lo: f64, hi: f64, samples: usize) -> impl Iterator<Item = f64> {
    (1..=samples).map(move |i| lo * (hi / lo).powf(i as f64 / (samples + 1) as f64))
}

/// Wrap into `(-π/2, π/2]`.
fn wrap_half(a: f64) -> f64 {
    let r = a.rem_euclid(PI);
    if r > PI / 2.0 {
        r - PI
    } else {
        r
    }
}

/// Roots of residual `i` found by bisection between scan samples where it
/// changes sign without wrapping around.
fn sign_change_roots(
    samples: &[(f64, Option<(f64, Vec<f64>)>)],
    i: usize,
    f: impl Fn(f64) -> Option<f64>,
) -> Vec<f64> {
    let mut roots = vec![];
    for w in samples.windows(2) {
        let (Some(a), Some(b)) = (&w[0].1, &w[1].1) else { continue };
        let (fa, fb) = (a.1[i], b.1[i]);
        if fa == 0.0 {
            roots.push(w[0].0);
            continue;
        }
        if fa.signum() == fb.signum() || (fa - fb).abs() > 1.0 {
            continue;
        }
        let (mut lo, mut hi, mut flo) = (w[0].0, w[1].0, fa);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let Some(fm) = f(mid) else { break };
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

/// Solve every circle from the inside out.
pub fn solve_circles(spec: &SpiroSpec, opts: &SpiroOptions) -> Result<Vec<CircleSolution>, SpiroError> {
    let mut l = Layout { spec, solved: vec![] };
    for c in 0..spec.circles.len() {
        let s = l.solve(c, opts)?;
        l.solved.push(s);
    }
    Ok(l.solved)
}

/// Solve circle `c` given solutions for the circles inside it.
pub fn solve_circle(spec: &SpiroSpec, c: usize, inner: &[CircleSolution], opts: &SpiroOptions) -> Result<CircleSolution, SpiroError> {
    assert_eq!(inner.len(), c, "solve inner circles first");
    let mut l = Layout { spec, solved: inner.to_vec() };
    l.solve(c, opts)
}

pub fn draw_spirograph(spec: &SpiroSpec, opts: &SpiroOptions) -> Result<Drawing, SpiroError> {
    let solved = solve_circles(spec, opts)?;
    let l = Layout { spec, solved };
    Ok(l.drawing(spec.circles.len()))
}

/// Number of sign changes of the driving residual of circle `c` over the
/// radius bracket, or `None` if the circle has no radius-dependent constraint.
pub fn uniqueness_probe(spec: &SpiroSpec, c: usize, inner: &[CircleSolution], opts: &SpiroOptions) -> Option<usize> {
    let l = Layout { spec, solved: inner.to_vec() };
    if c == 0 || spec.inward(c).is_empty() {
        return None;
    }
    let same = l.same_circle_twist(c).ok()?;
    let (lo, hi) = bracket(inner[c - 1].radius, opts);
    let samples: Vec<(f64, Option<(f64, Vec<f64>)>)> =
        scan(lo, hi, opts.samples).map(|r| (r, l.residuals(c, r, same))).collect();
    let constraints = samples.iter().find_map(|(_, s)| s.as_ref().map(|s| s.1.len()))?;
    let i = (0..constraints).find(|&i| samples.iter().filter_map(|(_, s)| s.as_ref()).any(|s| s.1[i].abs() > 1e-9))?;
    Some(sign_change_roots(&samples, i, |r| l.residuals(c, r, same).map(|s| s.1[i])).len())
}

/// Spec of the `k`-nested triangle graph with its planar rotation.
/// Circles alternate phase so that each vertex sits midway between its two
/// neighbors on the adjacent circles.
pub fn nested_triangles_spec(k: usize) -> SpiroSpec {
    assert!(k >= 1);
    let phase = |c: usize| if c % 2 == 1 { 0.5 } else { 0.0 };
    let mut orbits: Vec<EdgeOrbit> = (0..k).map(|c| EdgeOrbit { from: [c, 0], to: [c, 1] }).collect();
    // Per gap between circles c and c + 1: (orbit to the left of the inner
    // vertex, orbit to its right), seen from the inner circle.
    let mut gaps = vec![];
    for c in 0..k.saturating_sub(1) {
        let a = orbits.len();
        if phase(c + 1) == 0.5 {
            orbits.push(EdgeOrbit { from: [c, 0], to: [c + 1, 0] });
            orbits.push(EdgeOrbit { from: [c, 1], to: [c + 1, 0] });
            // Inner (c, j): `a` reaches left, `a + 1` right. Outer: `a` right.
            gaps.push(((a, a + 1), (a + 1, a)));
        } else {
            orbits.push(EdgeOrbit { from: [c, 0], to: [c + 1, 0] });
            orbits.push(EdgeOrbit { from: [c, 0], to: [c + 1, 1] });
            gaps.push(((a + 1, a), (a, a + 1)));
        }
    }
    let r = |orbit: usize, end: End| OrbitRef { orbit, end: Some(end) };
    let mut order = vec![];
    for c in 0..k {
        let mut o = vec![r(c, End::From)];
        if c > 0 {
            // Seen from the outer circle: (left, right).
            let (left, right) = gaps[c - 1].1;
            o.push(r(left, End::To));
            o.push(r(right, End::To));
        }
        o.push(r(c, End::To));
        if c + 1 < k {
            let (left, right) = gaps[c].0;
            o.push(r(right, End::From));
            o.push(r(left, End::From));
        }
        order.push(o);
    }
    SpiroSpec {
        name: Some(format!("nested-triangles-{k}")),
        symmetry: 3,
        circles: (0..k).map(|c| SpiroCircle { phase: phase(c), radius: None }).collect(),
        orbits,
        order,
    }
}
