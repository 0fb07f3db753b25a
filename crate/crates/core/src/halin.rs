//! Planar Lombardi drawings of Halin graphs.
//!
//! The tree is drawn with geodesics in the Poincaré disk so that every
//! internal node has evenly spaced rays and every leaf is an ideal point.
//! Consecutive leaves are then joined outside the disk by arcs meeting the
//! boundary at 30°, which leaves 120° between the three edges at a leaf.

use crate::drawing::{Drawing, DrawnEdge};
use crate::euclid::{circle_through_chord_angle, Circle, GeomError, Side};
use crate::graph::{GraphError, RotationGraph};
use crate::hyperbolic::{
    direction_to, equally_spaced_directions, geodesic_through, point_on_ray, ray_endpoint,
    wedge_opening, Geodesic, HPoint, HypError, Wedge,
};
use rand::Rng;
use serde::Serialize;
use std::collections::VecDeque;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use thiserror::Error;

/// Outer arcs meet the boundary circle at this angle.
pub const OUTER_ANGLE: f64 = PI / 6.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HalinError {
    #[error("tree edges do not form a spanning tree: {0}")]
    NotATree(String),
    #[error("root {0} is a leaf")]
    LeafRoot(String),
    #[error("a Halin graph needs at least three leaves, found {0}")]
    TooFewLeaves(usize),
    #[error("non-tree edges are not the leaf cycle: {0}")]
    NotHalin(String),
    #[error("rotation at leaf {0} disagrees with the leaf cycle")]
    RotationMismatch(String),
    #[error("no bracketing interval for node {vertex}: opening {low} at the parent, target {target}")]
    BisectionFailed { vertex: String, low: f64, target: f64 },
    #[error(transparent)]
    Hyperbolic(#[from] HypError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A plane tree hanging from `root`; children are listed counter-clockwise
/// starting just after the edge to the parent.
#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree {
    names: Vec<String>,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Tree formed by `tree_edges` of `g`, using the rotation of `g`
    /// restricted to tree edges. Without a root the centroid is used.
    pub fn from_graph(
        g: &RotationGraph,
        tree_edges: &[usize],
        root: Option<usize>,
    ) -> Result<Self, HalinError> {
        let n = g.n();
        if tree_edges.len() + 1 != n {
            return Err(HalinError::NotATree(format!(
                "{} edges on {} vertices",
                tree_edges.len(),
                n
            )));
        }
        let mut in_tree = vec![false; g.m()];
        for &e in tree_edges {
            if e >= g.m() {
                return Err(HalinError::NotATree(format!("no edge {e}")));
            }
            in_tree[e] = true;
        }
        let tree_nb = |v: usize| -> Vec<usize> {
            g.rotation(v)
                .iter()
                .copied()
                .filter(|&w| g.edge_id(v, w).is_some_and(|e| in_tree[e]))
                .collect()
        };
        let root = match root {
            Some(r) => r,
            None => centroid(n, &tree_nb),
        };
        if tree_nb(root).len() < 2 {
            return Err(HalinError::LeafRoot(g.name(root).to_string()));
        }
        let mut parent = vec![None; n];
        let mut children = vec![vec![]; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let nb = tree_nb(v);
            let start = match parent[v] {
                Some(p) => nb.iter().position(|&w| w == p).expect("parent") + 1,
                None => 0,
            };
            for k in 0..nb.len() {
                let w = nb[(start + k) % nb.len()];
                if Some(w) == parent[v] {
                    continue;
                }
                if seen[w] {
                    return Err(HalinError::NotATree("cycle among tree edges".into()));
                }
                seen[w] = true;
                parent[w] = Some(v);
                children[v].push(w);
                queue.push_back(w);
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(HalinError::NotATree(format!("{} unreachable", g.name(v))));
        }
        let t = RootedTree {
            names: g.names().to_vec(),
            root,
            parent,
            children,
        };
        let leaves = t.leaves();
        if leaves.len() < 3 {
            return Err(HalinError::TooFewLeaves(leaves.len()));
        }
        if tree_edges.len() < g.m() {
            t.check_cycle(g, &in_tree)?;
        }
        Ok(t)
    }

    /// Tree given by all edges of `g`.
    pub fn from_tree(g: &RotationGraph, root: Option<usize>) -> Result<Self, HalinError> {
        let all: Vec<usize> = (0..g.m()).collect();
        RootedTree::from_graph(g, &all, root)
    }

    fn check_cycle(&self, g: &RotationGraph, in_tree: &[bool]) -> Result<(), HalinError> {
        let leaves = self.leaves();
        let k = leaves.len();
        let extra = in_tree.iter().filter(|t| !**t).count();
        if extra != k {
            return Err(HalinError::NotHalin(format!("{extra} non-tree edges for {k} leaves")));
        }
        for i in 0..k {
            let (a, b) = (leaves[i], leaves[(i + 1) % k]);
            if !g.edge_id(a, b).is_some_and(|e| !in_tree[e]) {
                return Err(HalinError::NotHalin(format!(
                    "leaves {} and {} are consecutive but not joined",
                    g.name(a),
                    g.name(b)
                )));
            }
        }
        if g.rotation_specified() {
            for i in 0..k {
                let v = leaves[i];
                let want = [
                    self.parent[v].expect("leaf has a parent"),
                    leaves[(i + k - 1) % k],
                    leaves[(i + 1) % k],
                ];
                if !same_cyclic(g.rotation(v), &want) {
                    return Err(HalinError::RotationMismatch(g.name(v).to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v != self.root && self.children[v].is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    pub fn depth(&self, mut v: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        while let Some(p) = self.parent[v] {
            if p == a {
                return true;
            }
            v = p;
        }
        false
    }

    /// Leaves in the order a walk around the plane tree meets them.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = vec![];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if self.is_leaf(v) {
                out.push(v);
            }
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Tree edges as (parent, child), in breadth-first order.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.bfs()
            .into_iter()
            .flat_map(|v| self.children[v].iter().map(move |&c| (v, c)))
            .collect()
    }

    /// Leaf cycle edges (leaf, next leaf).
    pub fn cycle_edges(&self) -> Vec<(usize, usize)> {
        let l = self.leaves();
        (0..l.len()).map(|i| (l[i], l[(i + 1) % l.len()])).collect()
    }

    fn bfs(&self) -> Vec<usize> {
        let mut out = vec![self.root];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children[out[i]].iter().copied());
            i += 1;
        }
        out
    }

    /// The Halin graph: tree edges then cycle edges, with the planar rotation.
    pub fn halin_graph(&self) -> Result<RotationGraph, HalinError> {
        let leaves = self.leaves();
        let k = leaves.len();
        let mut rot: Vec<Vec<usize>> = (0..self.n())
            .map(|v| self.parent[v].into_iter().chain(self.children[v].iter().copied()).collect())
            .collect();
        for i in 0..k {
            rot[leaves[i]].push(leaves[(i + k - 1) % k]);
            rot[leaves[i]].push(leaves[(i + 1) % k]);
        }
        let edges: Vec<(usize, usize)> = self.tree_edges().into_iter().chain(self.cycle_edges()).collect();
        Ok(RotationGraph::with_names(self.names.clone(), &edges, Some(rot))?)
    }
}

fn same_cyclic(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

/// Internal vertex whose removal leaves the smallest largest piece.
fn centroid(n: usize, nb: &dyn Fn(usize) -> Vec<usize>) -> usize {
    let mut best = (usize::MAX, 0);
    for v in 0..n {
        let around = nb(v);
        if around.len() < 2 {
            continue;
        }
        let mut worst = 0;
        for &w in &around {
            let mut seen = vec![false; n];
            seen[v] = true;
            seen[w] = true;
            let mut stack = vec![w];
            let mut size = 1;
            while let Some(x) = stack.pop() {
                for y in nb(x) {
                    if !seen[y] {
                        seen[y] = true;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            worst = worst.max(size);
        }
        if worst < best.0 {
            best = (worst, v);
        }
    }
    best.1
}

/// Placement of an internal non-root node on its ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BisectionRecord {
    pub vertex: usize,
    /// Opening the node needed, π(1 − 1/degree) unless raised.
    pub target: f64,
    /// Opening actually reached at the chosen point.
    pub achieved: f64,
    pub iterations: usize,
    /// The target was raised because the parent already met it.
    pub raised: bool,
}

impl BisectionRecord {
    pub fn residual(&self) -> f64 {
        (self.achieved - self.target).abs()
    }
}

/// Good hyperbolic drawing of a rooted tree.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicTreeDrawing {
    pub positions: Vec<HPoint>,
    /// Geodesic per tree edge, as (parent, child, geodesic).
    pub edges: Vec<(usize, usize, Geodesic)>,
    /// Dominance region of every non-root node.
    pub regions: Vec<Option<Wedge>>,
    pub bisections: Vec<BisectionRecord>,
}

const MAX_ITERATIONS: usize = 200;

pub fn good_hyperbolic_tree(t: &RootedTree) -> Result<HyperbolicTreeDrawing, HalinError> {
    let n = t.n();
    let mut positions = vec![HPoint::ORIGIN; n];
    let mut regions: Vec<Option<Wedge>> = vec![None; n];
    let mut bisections = vec![];
    let spread = |x: HPoint, dirs: &[crate::euclid::Direction], kids: &[usize], opening: f64, positions: &mut [HPoint], regions: &mut [Option<Wedge>]| -> Result<(), HalinError> {
        for (&c, &dir) in kids.iter().zip(dirs) {
            positions[c] = ray_endpoint(x, dir)?;
            regions[c] = Some(Wedge::around(x, dir, opening)?);
        }
        Ok(())
    };
    let root = t.root;
    let k = t.children[root].len();
    let dirs: Vec<_> = (0..k)
        .map(|j| crate::euclid::Direction::new(FRAC_PI_2 + TAU * j as f64 / k as f64))
        .collect();
    spread(HPoint::ORIGIN, &dirs, &t.children[root], TAU / k as f64, &mut positions, &mut regions)?;

    for v in t.bfs().into_iter().skip(1) {
        if t.children[v].is_empty() {
            continue;
        }
        let p = t.parent[v].expect("non-root");
        let region = regions[v].expect("region assigned with position");
        let end = positions[v];
        let base = positions[p];
        let deg = t.degree(v);
        let opening_at = |s: f64| -> Result<f64, HalinError> {
            Ok(wedge_opening(point_on_ray(base, end, s)?, &region)?)
        };
        let mut target = PI * (1.0 - 1.0 / deg as f64);
        let low = opening_at(0.0)?;
        let mut raised = false;
        if low >= target - 1e-12 {
            if low < PI - 1e-9 && deg == 2 {
                // A chain of degree-2 nodes: the parent already suffices, so
                // step halfway towards the boundary instead of stopping on it.
                target = 0.5 * (low + PI);
                raised = true;
            } else {
                return Err(HalinError::BisectionFailed {
                    vertex: t.names[v].clone(),
                    low,
                    target,
                });
            }
        }
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        let mut iterations = 0;
        let mut mid = 0.5;
        let mut achieved = low;
        while iterations < MAX_ITERATIONS {
            iterations += 1;
            mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            achieved = opening_at(mid)?;
            if (achieved - target).abs() < 1e-13 {
                break;
            }
            if achieved < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x = point_on_ray(base, end, mid)?;
        bisections.push(BisectionRecord {
            vertex: v,
            target,
            achieved,
            iterations,
            raised,
        });
        positions[v] = x;
        let forward = direction_to(x, end)?;
        let dirs = equally_spaced_directions(forward, deg);
        spread(x, &dirs, &t.children[v], TAU / deg as f64, &mut positions, &mut regions)?;
    }

    let edges = t
        .tree_edges()
        .into_iter()
        .map(|(p, c)| Ok((p, c, geodesic_through(positions[p], positions[c])?)))
        .collect::<Result<Vec<_>, HalinError>>()?;
    Ok(HyperbolicTreeDrawing {
        positions,
        edges,
        regions,
        bisections,
    })
}

/// Outcome of the sampled dominance-region audit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceAudit {
    pub pairs_checked: usize,
    /// Pairs (a, b) where a sample of b's boundary breaks the required
    /// nesting or disjointness.
    pub violations: Vec<(usize, usize)>,
}

/// Boundary samples of a dominance region: points along both rays and
/// ideal points between their ends.
fn region_samples(w: &Wedge, per_region: usize) -> Result<Vec<HPoint>, HalinError> {
    let ends = w.boundary_ends()?;
    let along = per_region / 3;
    let mut out = vec![];
    for end in ends {
        for i in 1..=along {
            out.push(point_on_ray(w.apex, end, i as f64 / (along + 1) as f64)?);
        }
    }
    let (a, b) = (ends[0].location().angle(), ends[1].location().angle());
    let sweep = (b - a).rem_euclid(TAU);
    let rest = per_region - 2 * along;
    for i in 1..=rest {
        out.push(HPoint::ideal_at(a + sweep * i as f64 / (rest + 1) as f64));
    }
    Ok(out)
}

/// Angle of `x` past the start of `w`, or `None` at the apex.
fn offset_in(w: &Wedge, x: HPoint) -> Option<f64> {
    let d = direction_to(w.apex, x).ok()?;
    Some((d.angle() - w.from.angle()).rem_euclid(TAU))
}

/// Check that regions of ancestor pairs nest and all others are disjoint.
pub fn dominance_audit(t: &RootedTree, h: &HyperbolicTreeDrawing, per_region: usize) -> Result<DominanceAudit, HalinError> {
    let tol = 1e-7;
    let mut samples = vec![vec![]; t.n()];
    for v in 0..t.n() {
        if let Some(w) = &h.regions[v] {
            samples[v] = region_samples(w, per_region)?;
        }
    }
    let mut audit = DominanceAudit {
        pairs_checked: 0,
        violations: vec![],
    };
    for a in 0..t.n() {
        let Some(wa) = &h.regions[a] else { continue };
        let open = wa.opening();
        for b in 0..t.n() {
            if a == b || h.regions[b].is_none() || t.is_ancestor(b, a) {
                continue;
            }
            audit.pairs_checked += 1;
            let nested = t.is_ancestor(a, b);
            let bad = samples[b].iter().any(|&x| match offset_in(wa, x) {
                None => false,
                Some(off) => {
                    let inside = off <= open + tol || off >= TAU - tol;
                    let strictly = off > tol && off < open - tol;
                    if nested {
                        !inside
                    } else {
                        strictly
                    }
                }
            });
            if bad {
                audit.violations.push((a, b));
            }
        }
    }
    Ok(audit)
}

/// Lombardi drawing of the Halin graph of `t`, with edges in the order of
/// [`RootedTree::halin_graph`].
pub fn draw_halin(t: &RootedTree) -> Result<Drawing, HalinError> {
    let h = good_hyperbolic_tree(t)?;
    let unit = Circle::unit();
    let mut d = Drawing {
        names: t.names.clone(),
        positions: h.positions.iter().map(|p| p.location()).collect(),
        edges: vec![],
        frames: vec![None; t.n()],
        circles: vec![unit],
    };
    for (p, c, geo) in &h.edges {
        d.edges.push(DrawnEdge {
            u: *p,
            v: *c,
            arc: *geo.arc(),
            group: Some(0),
        });
    }
    for (a, b) in t.cycle_edges() {
        let arc = circle_through_chord_angle(&unit, d.positions[a], d.positions[b], OUTER_ANGLE, Side::Outside)?;
        d.edges.push(DrawnEdge {
            u: a,
            v: b,
            arc,
            group: Some(1),
        });
    }
    Ok(d)
}

/// Draw a Halin graph given its tree edges, with edges in the order of `g`.
pub fn draw_halin_graph(g: &RotationGraph, tree_edges: &[usize], root: Option<usize>) -> Result<Drawing, HalinError> {
    let t = RootedTree::from_graph(g, tree_edges, root)?;
    let mut d = draw_halin(&t)?;
    d.names = g.names().to_vec();
    d.edges.sort_by_key(|e| g.edge_id(e.u, e.v));
    Ok(d)
}

/// Random plane tree with `n` or slightly more nodes and no node of degree
/// two, as a tree graph with its rotation.
pub fn random_halin_tree<R: Rng>(n: usize, rng: &mut R) -> RotationGraph {
    let mut children: Vec<Vec<usize>> = vec![vec![1, 2, 3], vec![], vec![], vec![]];
    let mut parent = vec![None, Some(0), Some(0), Some(0)];
    while children.len() + 2 <= n.max(6) {
        let leaves: Vec<usize> = (1..children.len()).filter(|&v| children[v].is_empty()).collect();
        let v = leaves[rng.gen_range(0..leaves.len())];
        let k = rng.gen_range(2..=3).min(n.max(6) - children.len()).max(2);
        for _ in 0..k {
            let c = children.len();
            children.push(vec![]);
            parent.push(Some(v));
            children[v].push(c);
        }
    }
    let n = children.len();
    let rot: Vec<Vec<usize>> = (0..n)
        .map(|v| parent[v].into_iter().chain(children[v].iter().copied()).collect())
        .collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (parent[v].expect("non-root"), v)).collect();
    RotationGraph::with_names((0..n).map(|v| v.to_string()).collect(), &edges, Some(rot))
        .expect("valid tree")
}

/// The seven-node tree: a root with three children, one of which has three
/// leaf children of its own.
pub fn seven_node_tree() -> RotationGraph {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)];
    RotationGraph::from_edges(7, &edges).expect("valid tree")
}
