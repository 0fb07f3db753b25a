//! Incremental Lombardi drawings of 2- and 3-degenerate graphs.
//!
//! Vertices are inserted in reverse elimination order. A vertex joins the
//! drawing with at most two (or three) placed neighbors whose frames are
//! already fixed, so the arcs toward it leave along known slots. Two such
//! arcs meet at the right angle exactly on a locus circle; three meet on
//! the common point of the three pairwise loci.

use crate::drawing::{Drawing, DrawnEdge, Frame};
use crate::euclid::{
    arc_from_tangent, intersect_generalized, meeting_locus_general, Arc, Direction,
    GeneralizedCircle, GeomError, LocusInputs, Point,
};
use crate::graph::{bridges, degeneracy_order, RotationGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

/// Stretches of a locus that each offer one alternative position.
const ALTERNATIVES: usize = 8;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DegenerateError {
    #[error("graph is {0}-degenerate, not 2-degenerate")]
    NotTwoDegenerate(usize),
    #[error("graph is {0}-degenerate, not 3-degenerate")]
    NotThreeDegenerate(usize),
    #[error("no clear point for vertex {vertex}")]
    NoClearPoint { vertex: String },
    #[error("vertex {} can only go where it collides with the drawing", .0.vertex)]
    CoincidentPlacement(CoincidentPlacement),
    #[error("{} and {} have routes {:?} forced onto one circle that two of them already cover", .0.ends[0], .0.ends[1], .0.routes)]
    CoveredCircle(CoveredCircle),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A rotation system with no Lombardi drawing. Adjacent `ends` have common
/// neighbors that every drawing puts on one circle through both ends, and
/// that circle is already filled by two routes from one end to the other:
/// the edge itself, or a path through a vertex whose two edges on it are
/// opposite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveredCircle {
    pub ends: [String; 2],
    /// Middle vertex of each route, or `None` for the edge.
    pub routes: Vec<Option<String>>,
}

/// Details of a failed three-neighbor insertion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoincidentPlacement {
    pub vertex: String,
    pub neighbors: Vec<String>,
    /// Every candidate position and why it was rejected.
    pub rejected: Vec<(Point, String)>,
}

impl From<CoincidentPlacement> for DegenerateError {
    fn from(c: CoincidentPlacement) -> Self {
        DegenerateError::CoincidentPlacement(c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateOptions {
    pub seed: u64,
    /// Scale-relative minimum distance between an arc and a foreign vertex.
    pub clearance: f64,
    /// Length of the segment to a vertex with a single placed neighbor.
    pub leaf_length: f64,
    pub samples: usize,
    /// How many alternative positions may be tried after a dead end.
    pub backtrack: usize,
}

impl Default for DegenerateOptions {
    fn default() -> Self {
        DegenerateOptions {
            seed: 0,
            clearance: 1e-6,
            leaf_length: 1.0,
            samples: 256,
            backtrack: 200,
        }
    }
}

/// A partial drawing grown one vertex at a time.
#[derive(Debug, Clone)]
pub struct PartialState<'g> {
    g: &'g RotationGraph,
    opts: DegenerateOptions,
    positions: Vec<Option<Point>>,
    frames: Vec<Option<Frame>>,
    edges: Vec<DrawnEdge>,
    /// Vertices in insertion order.
    order: Vec<usize>,
    phase: f64,
    /// Edges lying on some cycle.
    cyclic: Vec<bool>,
    component: Vec<usize>,
    support: Vec<BTreeSet<usize>>,
}

/// A candidate position with the arcs that would reach it.
#[derive(Debug, Clone)]
pub struct Choice {
    pub point: Point,
    pub arcs: Vec<(usize, Arc)>,
}

/// Evidence for a chosen position: the locus it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub point: Point,
    pub locus: GeneralizedCircle,
}

impl<'g> PartialState<'g> {
    pub fn new(g: &'g RotationGraph, opts: DegenerateOptions) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let phase = rng.gen_range(0.0..1.0);
        PartialState {
            g,
            opts,
            positions: vec![None; g.n()],
            frames: vec![None; g.n()],
            edges: vec![],
            order: vec![],
            phase,
            cyclic: {
                let cut = bridges(g);
                g.edges().iter().map(|e| !cut.contains(e)).collect()
            },
            support: vec![BTreeSet::new(); g.n()],
            component: {
                let mut id = vec![0; g.n()];
                for (i, c) in g.components().iter().enumerate() {
                    for &v in c {
                        id[v] = i;
                    }
                }
                id
            },
        }
    }

    pub fn position(&self, v: usize) -> Option<Point> {
        self.positions[v]
    }

    pub fn frame(&self, v: usize) -> Option<Frame> {
        self.frames[v]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    fn placed(&self) -> impl Iterator<Item = (usize, Point)> + '_ {
        self.positions
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
    }

    /// Size of the placed part of the component of `v`.
    fn scale(&self, v: usize) -> f64 {
        let pts: Vec<Point> = self
            .placed()
            .filter(|&(w, _)| self.component[w] == self.component[v])
            .map(|(_, p)| p)
            .collect();
        if pts.len() < 2 {
            return 1.0;
        }
        let mut lo = pts[0];
        let mut hi = pts[0];
        for p in &pts {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        lo.dist(hi).max(1.0)
    }

    fn eps(&self, v: usize) -> f64 {
        self.opts.clearance * self.scale(v)
    }

    /// Direction in which the edge `v`-`w` must leave the placed vertex `v`.
    fn slot_toward(&self, v: usize, w: usize) -> Direction {
        let f = self.frames[v].expect("placed vertices have frames");
        f.slot(self.g.rotation_index(v, w).expect("neighbor"))
    }

    /// Frame of `v` given the direction in which its edge to `w` leaves it.
    fn frame_from(&self, v: usize, w: usize, dir: Direction) -> Frame {
        let deg = self.g.degree(v);
        let k = self.g.rotation_index(v, w).expect("neighbor");
        Frame {
            base: dir.rotated(-TAU * k as f64 / deg as f64),
            degree: deg,
        }
    }

    /// Smallest distance from the candidate `r` and its new arcs to the
    /// existing drawing.
    fn clearance(&self, r: Point, arcs: &[(usize, Arc)]) -> f64 {
        let mut best = f64::INFINITY;
        for (_, p) in self.placed() {
            best = best.min(p.dist(r));
        }
        for e in &self.edges {
            best = best.min(e.arc.clearance(r));
        }
        for (from, a) in arcs {
            for (w, p) in self.placed() {
                if w != *from {
                    best = best.min(a.clearance(p));
                }
            }
        }
        best
    }

    fn commit(&mut self, v: usize, at: Point, arcs: Vec<(usize, Arc)>) {
        let mut support = BTreeSet::new();
        for (w, _) in &arcs {
            support.extend(self.support[*w].iter().copied());
        }
        self.support[v] = support;
        self.positions[v] = Some(at);
        self.order.push(v);
        match arcs.first() {
            Some((w, a)) => {
                let back = a.tangents().1;
                self.frames[v] = Some(self.frame_from(v, *w, back));
            }
            None => {
                self.frames[v] = Some(Frame {
                    base: Direction::new(0.0),
                    degree: self.g.degree(v).max(1),
                })
            }
        }
        for (w, a) in arcs {
            self.edges.push(DrawnEdge {
                u: w,
                v,
                arc: a,
                group: None,
            });
        }
    }

    /// Start a new piece of the drawing to the right of everything so far.
    pub fn place_seed(&mut self, v: usize) -> Point {
        let at = match self.placed().map(|(_, p)| p.x).fold(None, |m: Option<f64>, x| {
            Some(m.map_or(x, |m| m.max(x)))
        }) {
            None => Point::ORIGIN,
            Some(xmax) => {
                let reach = self
                    .edges
                    .iter()
                    .map(|e| e.arc.bounds().1.x)
                    .fold(xmax, f64::max);
                Point::new((reach + 2.0).ceil(), 0.0)
            }
        };
        self.commit(v, at, vec![]);
        at
    }

    /// Place `v` at the end of a segment leaving `p` along its slot.
    pub fn place_degree1(&mut self, v: usize, p: usize) -> Result<Point, DegenerateError> {
        let pp = self.positions[p].expect("placed");
        let dir = self.slot_toward(p, v);
        // Edges on a cycle are bent: a straight one can force a later
        // vertex of that cycle off to infinity.
        let bend = if self.cyclic[self.g.edge_id(p, v).expect("edge")] {
            0.25 + 0.25 * (self.phase + 0.618_034 * v as f64).fract()
        } else {
            0.0
        };
        let mut len = self.opts.leaf_length;
        for _ in 0..40 {
            let r = pp + dir.rotated(bend).unit() * len;
            let Ok(arc) = arc_from_tangent(pp, dir, r) else { break };
            if self.clearance(r, &[(p, arc)]) >= self.eps(v) {
                self.commit(v, r, vec![(p, arc)]);
                return Ok(r);
            }
            len *= 0.5;
        }
        Err(DegenerateError::NoClearPoint {
            vertex: self.g.name(v).to_string(),
        })
    }

    fn locus_inputs(&self, v: usize, p: usize, q: usize) -> LocusInputs {
        let deg = self.g.degree(v) as f64;
        let ip = self.g.rotation_index(v, p).expect("neighbor") as f64;
        let iq = self.g.rotation_index(v, q).expect("neighbor") as f64;
        LocusInputs::new(
            self.positions[p].expect("placed"),
            self.slot_toward(p, v),
            self.positions[q].expect("placed"),
            self.slot_toward(q, v),
            (TAU * (iq - ip) / deg).rem_euclid(TAU),
        )
    }

    /// Arcs from each placed neighbor to `r` along their slots.
    fn arcs_to(&self, v: usize, from: &[usize], r: Point) -> Option<Vec<(usize, Arc)>> {
        from.iter()
            .map(|&w| {
                let a = arc_from_tangent(self.positions[w]?, self.slot_toward(w, v), r).ok()?;
                (a.bulge().abs() < 1e6).then_some((w, a))
            })
            .collect()
    }

    /// Candidate points spread over a locus.
    fn sample_locus(&self, locus: &GeneralizedCircle, p: Point, q: Point, count: usize, offset: f64) -> Vec<Point> {
        (0..count)
            .map(|i| {
                let s = (i as f64 + offset) / count as f64;
                match *locus {
                    GeneralizedCircle::Circle(c) => c.point_at((p - c.center).angle() + TAU * s),
                    GeneralizedCircle::Line { .. } => {
                        // Along the line through p and q, beyond both ends
                        // and between them.
                        p + (q - p) * (-3.0 + 7.0 * s)
                    }
                }
            })
            .collect()
    }

    /// Candidates on a circular locus close to `p` and `q`, where a short
    /// free stretch between existing arcs is easy to miss.
    fn sample_near_ends(locus: &GeneralizedCircle, p: Point, q: Point) -> Vec<Point> {
        let GeneralizedCircle::Circle(c) = *locus else { return vec![] };
        let chord = p.dist(q);
        let mut out = Vec::new();
        for end in [p, q] {
            let at = (end - c.center).angle();
            for k in -3..=8 {
                let step = (chord * 0.5f64.powi(k) / c.radius).min(PI);
                for dir in [-1.0, 1.0] {
                    out.push(c.point_at(at + dir * step));
                }
            }
        }
        out
    }

    /// Clear positions for `v` on the meeting locus of `p` and `q`, best
    /// first. The first is the point with the most room; the rest are the
    /// best of other stretches of the locus.
    pub fn degree2_options(&self, v: usize, p: usize, q: usize) -> Result<(GeneralizedCircle, Vec<Choice>), DegenerateError> {
        let inputs = self.locus_inputs(v, p, q);
        let locus = meeting_locus_general(&inputs)?;
        let (pp, pq) = (inputs.p, inputs.q);
        let cap = 0.5 * pp.dist(pq);
        let mid = pp.lerp(pq, 0.5);
        let eps = self.eps(v);
        let n = self.opts.samples;
        let rate = |r: Point| -> Option<(f64, f64, Choice)> {
            if !r.is_finite() {
                return None;
            }
            let arcs = self.arcs_to(v, &[p, q], r)?;
            let score = self.clearance(r, &arcs).min(cap);
            Some((score, r.dist(mid), Choice { point: r, arcs }))
        };
        let mut rated: Vec<_> = self
            .sample_locus(&locus, pp, pq, n, self.phase)
            .into_iter()
            .map(rate)
            .collect();
        if rated.iter().flatten().all(|c| c.0 < eps) {
            // Refine with four times as many samples, plus points close to
            // the ends.
            rated = self
                .sample_locus(&locus, pp, pq, 4 * n, self.phase * 0.5)
                .into_iter()
                .chain(Self::sample_near_ends(&locus, pp, pq))
                .map(rate)
                .collect();
        }
        let stretch = rated.len().div_ceil(ALTERNATIVES);
        let mut best: Vec<(f64, f64, Choice)> = rated
            .chunks(stretch)
            .filter_map(|chunk| {
                chunk
                    .iter()
                    .flatten()
                    .filter(|c| c.0 >= eps)
                    .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)))
                    .cloned()
            })
            .collect();
        best.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.total_cmp(&b.1)));
        Ok((locus, best.into_iter().map(|c| c.2).collect()))
    }

    /// Two-neighbor placements that left `v` no clear point between `p` and
    /// `q`: those behind `p`, `q` and everything near the locus.
    pub fn conflict(&self, v: usize, p: usize, q: usize) -> BTreeSet<usize> {
        let mut owners = BTreeSet::from([p, q]);
        let inputs = self.locus_inputs(v, p, q);
        if let Ok(locus) = meeting_locus_general(&inputs) {
            let eps = self.eps(v);
            let samples = self
                .sample_locus(&locus, inputs.p, inputs.q, 4 * self.opts.samples, self.phase * 0.5)
                .into_iter()
                .chain(Self::sample_near_ends(&locus, inputs.p, inputs.q));
            for r in samples {
                if let Some(arcs) = self.arcs_to(v, &[p, q], r) {
                    self.blockers(r, &arcs, eps, &mut owners);
                }
            }
        }
        owners.iter().flat_map(|&w| self.support[w].iter().copied()).collect()
    }

    /// Place `v`, adjacent to placed `p` and `q`, on their meeting locus at
    /// the point with the most room.
    pub fn place_degree2(&mut self, v: usize, p: usize, q: usize) -> Result<Placement, DegenerateError> {
        let (locus, choices) = self.degree2_options(v, p, q)?;
        match choices.into_iter().next() {
            Some(c) => {
                let point = c.point;
                self.take(v, c);
                Ok(Placement { point, locus })
            }
            None => Err(DegenerateError::NoClearPoint {
                vertex: self.g.name(v).to_string(),
            }),
        }
    }

    pub fn take(&mut self, v: usize, c: Choice) {
        self.commit(v, c.point, c.arcs);
        self.support[v].insert(v);
    }

    /// Two-neighbor placements that the position and arcs of `v` depend on.
    pub fn support(&self, v: usize) -> &BTreeSet<usize> {
        &self.support[v]
    }

    /// Vertices whose placement put a feature within `eps` of the candidate.
    fn blockers(&self, r: Point, arcs: &[(usize, Arc)], eps: f64, out: &mut BTreeSet<usize>) {
        for (w, p) in self.placed() {
            if p.dist(r) < eps {
                out.insert(w);
            }
        }
        for e in &self.edges {
            if e.arc.clearance(r) < eps {
                out.insert(e.v);
            }
        }
        for (from, a) in arcs {
            for (w, p) in self.placed() {
                if w != *from && a.clearance(p) < eps {
                    out.insert(w);
                }
            }
        }
    }

    /// Placed neighbors of `v`, in index order.
    pub fn placed_neighbors(&self, v: usize) -> Vec<usize> {
        let mut nb: Vec<usize> = self
            .g
            .rotation(v)
            .iter()
            .copied()
            .filter(|&w| self.positions[w].is_some())
            .collect();
        nb.sort_unstable();
        nb
    }

    /// Place `v`, adjacent to placed `p`, `q` and `r`, at the common point
    /// of the three pairwise loci.
    pub fn place_degree3(&mut self, v: usize, nb: [usize; 3]) -> Result<Point, DegenerateError> {
        let [p, q, r] = nb;
        let pos = |w: usize| self.positions[w].expect("placed");
        let loci = [
            meeting_locus_general(&self.locus_inputs(v, p, q))?,
            meeting_locus_general(&self.locus_inputs(v, p, r))?,
            meeting_locus_general(&self.locus_inputs(v, q, r))?,
        ];
        let scale = self.scale(v);
        let on_all = |x: Point| loci.iter().all(|l| l.distance(x) <= 1e-8 * scale.max(x.norm()));
        let mut candidates: Vec<Point> = vec![];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for x in intersect_generalized(&loci[i], &loci[j]) {
                if [p, q, r].iter().any(|&w| pos(w).dist(x) <= 1e-9 * scale) {
                    continue;
                }
                if on_all(x) && !candidates.iter().any(|c| c.dist(x) <= 1e-7 * scale) {
                    candidates.push(x);
                }
            }
        }
        if candidates.is_empty() && same_locus(&loci[0], &loci[1], 1e-9 * scale) {
            // Coincident loci: any point on them works.
            candidates = self.sample_locus(&loci[0], pos(p), pos(q), self.opts.samples, self.phase);
        }
        let eps = self.eps(v);
        let mut rejected = vec![];
        let mut best: Option<(f64, Choice)> = None;
        for x in candidates {
            let Some(arcs) = self.arcs_to(v, &nb, x) else {
                rejected.push((x, "arcs degenerate".to_string()));
                continue;
            };
            // Orientation filter: arrivals must follow the rotation at v.
            let frame = self.frame_from(v, p, arcs[0].1.tangents().1);
            let misfit = arcs
                .iter()
                .map(|(w, a)| {
                    let k = self.g.rotation_index(v, *w).expect("neighbor");
                    a.tangents().1.diff(frame.slot(k)).abs()
                })
                .fold(0.0, f64::max);
            if misfit > 1e-7 {
                rejected.push((x, format!("rotation mismatch {misfit:.3e}")));
                continue;
            }
            let c = self.clearance(x, &arcs);
            if c < eps {
                rejected.push((x, format!("clearance {c:.3e}")));
                continue;
            }
            if best.as_ref().is_none_or(|b| c > b.0) {
                best = Some((c, Choice { point: x, arcs }));
            }
        }
        match best {
            Some((_, c)) => {
                let x = c.point;
                self.commit(v, x, c.arcs);
                Ok(x)
            }
            None => Err(CoincidentPlacement {
                vertex: self.g.name(v).to_string(),
                neighbors: nb.iter().map(|&w| self.g.name(w).to_string()).collect(),
                rejected,
            }
            .into()),
        }
    }

    /// Insert `v` using whichever rule its number of placed neighbors calls for.
    pub fn insert(&mut self, v: usize) -> Result<(), DegenerateError> {
        match self.placed_neighbors(v).as_slice() {
            [] => {
                self.place_seed(v);
            }
            [p] => {
                self.place_degree1(v, *p)?;
            }
            [p, q] => {
                self.place_degree2(v, *p, *q)?;
            }
            [p, q, r] => {
                self.place_degree3(v, [*p, *q, *r])?;
            }
            more => {
                return Err(DegenerateError::NotThreeDegenerate(more.len()));
            }
        }
        Ok(())
    }

    pub fn into_drawing(self) -> Drawing {
        let mut d = Drawing::for_graph(self.g);
        d.positions = self.positions.iter().map(|p| p.unwrap_or(Point::ORIGIN)).collect();
        d.frames = self.frames.clone();
        let mut edges = self.edges;
        edges.sort_by_key(|e| self.g.edge_id(e.u, e.v));
        d.edges = edges;
        d
    }
}

fn same_locus(a: &GeneralizedCircle, b: &GeneralizedCircle, tol: f64) -> bool {
    match (a, b) {
        (GeneralizedCircle::Circle(x), GeneralizedCircle::Circle(y)) => {
            x.center.dist(y.center) <= tol && (x.radius - y.radius).abs() <= tol
        }
        (GeneralizedCircle::Line { point, dir }, other @ GeneralizedCircle::Line { .. }) => {
            other.distance(*point) <= tol && other.distance(*point + *dir) <= tol
        }
        _ => false,
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Look for a covered circle. Angles are kept exact as multiples of a full
/// turn divided by `unit`.
pub fn covered_circle(g: &RotationGraph) -> Option<CoveredCircle> {
    for e in g.edges() {
        let (u, v) = (e.u, e.v);
        let common: Vec<usize> = g
            .neighbors_sorted(u)
            .into_iter()
            .filter(|&y| y != v && g.has_edge(y, v))
            .collect();
        if common.len() < 2 {
            continue;
        }
        let unit = common.iter().fold(lcm(lcm(g.degree(u), g.degree(v)), 2), |l, &y| lcm(l, g.degree(y)));
        let turn = |at: usize, w: usize| g.rotation_index(at, w).expect("neighbor") * (unit / g.degree(at));
        let (eu, ev) = (turn(u, v), turn(v, u));
        let half = unit / 2;
        // Every drawing puts a common neighbor on a circle through `u` and
        // `v`; neighbors with equal `key` share it. The edge and the routes
        // with `straight` set lie along that circle.
        let mut routes: Vec<(Option<usize>, usize, bool)> = vec![(None, (2 * eu) % unit, true)];
        for &y in &common {
            let (a, b) = (turn(u, y), turn(v, y));
            let bend = (turn(y, v) + unit - turn(y, u)) % unit;
            let key = (a + eu + ev + 4 * unit - b - half - bend) % unit;
            let straight = bend == half && (a + b + 2 * unit - eu - ev) % unit == 0;
            routes.push((Some(y), key, straight));
        }
        for r in &routes {
            let same: Vec<_> = routes.iter().filter(|x| x.1 == r.1).collect();
            if same.len() >= 3 && same.iter().filter(|x| x.2).count() >= 2 {
                return Some(CoveredCircle {
                    ends: [g.name(u).to_string(), g.name(v).to_string()],
                    routes: same.iter().map(|x| x.0.map(|y| g.name(y).to_string())).collect(),
                });
            }
        }
    }
    None
}

fn draw_with(g: &RotationGraph, opts: &DegenerateOptions) -> Result<Drawing, DegenerateError> {
    if let Some(c) = covered_circle(g) {
        return Err(DegenerateError::CoveredCircle(c));
    }
    search(g, opts)
}

/// Insert vertices in degeneracy order. When a vertex has nowhere to go,
/// jump back to the latest two-neighbor placement it depends on and try
/// that placement's next alternative.
fn search(g: &RotationGraph, opts: &DegenerateOptions) -> Result<Drawing, DegenerateError> {
    let (mut order, _) = degeneracy_order(g);
    order.reverse();
    let mut st = PartialState::new(g, opts.clone());
    // Each two-neighbor placement leaves its unused alternatives here, with
    // the state from before it and the placements its failures blamed.
    type Fork<'g> = (usize, PartialState<'g>, std::vec::IntoIter<Choice>, Option<BTreeSet<usize>>);
    let mut trail: Vec<Fork<'_>> = Vec::new();
    let mut budget = opts.backtrack;
    let mut first_error = None;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let step = match st.placed_neighbors(v)[..] {
            [p, q] => match st.degree2_options(v, p, q) {
                Err(e) => Err((e, None)),
                Ok((_, choices)) => {
                    let mut rest = choices.into_iter();
                    match rest.next() {
                        Some(c) => {
                            trail.push((i, st.clone(), rest, Some(BTreeSet::new())));
                            st.take(v, c);
                            Ok(())
                        }
                        None => Err((
                            DegenerateError::NoClearPoint { vertex: g.name(v).to_string() },
                            Some(st.conflict(v, p, q)),
                        )),
                    }
                }
            },
            _ => st.insert(v).map_err(|e| (e, None)),
        };
        match step {
            Ok(()) => i += 1,
            Err((e @ (DegenerateError::NoClearPoint { .. } | DegenerateError::CoincidentPlacement(_)), blamed)) => {
                let first = first_error.get_or_insert(e).clone();
                let mut blamed = blamed;
                loop {
                    let Some((j, saved, mut rest, mut acc)) = trail.pop() else {
                        return Err(first);
                    };
                    let at = order[j];
                    if blamed.as_ref().is_some_and(|b| !b.contains(&at)) {
                        continue;
                    }
                    match (&mut acc, &blamed) {
                        (Some(a), Some(b)) => a.extend(b.iter().copied().filter(|&w| w != at)),
                        _ => acc = None,
                    }
                    if budget == 0 {
                        return Err(first);
                    }
                    if let Some(c) = rest.next() {
                        budget -= 1;
                        st = saved.clone();
                        st.take(at, c);
                        trail.push((j, saved, rest, acc));
                        i = j + 1;
                        break;
                    }
                    blamed = acc;
                }
            }
            Err((e, _)) => return Err(e),
        }
    }
    Ok(st.into_drawing())
}

pub fn draw_2degenerate(g: &RotationGraph, opts: &DegenerateOptions) -> Result<Drawing, DegenerateError> {
    let (_, d) = degeneracy_order(g);
    if d > 2 {
        return Err(DegenerateError::NotTwoDegenerate(d));
    }
    draw_with(g, opts)
}

pub fn draw_3degenerate(g: &RotationGraph, opts: &DegenerateOptions) -> Result<Drawing, DegenerateError> {
    let (_, d) = degeneracy_order(g);
    if d > 3 {
        return Err(DegenerateError::NotThreeDegenerate(d));
    }
    draw_with(g, opts)
}
