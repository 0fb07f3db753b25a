//! Invariants quantified over random inputs, and structural facts rechecked
//! by brute force.

mod common;

use common::*;
use lombardi::degenerate::{draw_2degenerate, DegenerateError, DegenerateOptions};
use lombardi::drawing::{Drawing, DrawnEdge};
use lombardi::euclid::{Arc, Direction, Point};
use lombardi::graph::families::random_two_degenerate;
use lombardi::graph::{classify, RotationGraph};
use lombardi::halin::{draw_halin, random_halin_tree, RootedTree};
use lombardi::hyperbolic::*;
use lombardi::io::{drawing_to_json, parse_drawing};
use lombardi::verify;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Distance between two angles measured in turns.
fn turn_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// For the edge `u`-`v` and each common neighbor: which circle through `u`
/// and `v` it must lie on (as a turn), and whether the route through it is a
/// single circle.
fn circle_keys(g: &RotationGraph, u: usize, v: usize) -> Vec<(Option<usize>, f64, bool)> {
    let turn = |at: usize, w: usize| g.rotation_index(at, w).unwrap() as f64 / g.degree(at) as f64;
    let (eu, ev) = (turn(u, v), turn(v, u));
    let mut out = vec![(None, (2.0 * eu).rem_euclid(1.0), true)];
    for y in 0..g.n() {
        if y == u || y == v || !g.has_edge(y, u) || !g.has_edge(y, v) {
            continue;
        }
        let (a, b) = (turn(u, y), turn(v, y));
        let bend = turn(y, v) - turn(y, u);
        let key = (a - b + eu + ev - 0.5 - bend).rem_euclid(1.0);
        let straight = turn_gap(bend, 0.5) < 1e-12 && turn_gap(a + b, eu + ev) < 1e-12;
        out.push((Some(y), key, straight));
    }
    out
}

/// Sine of the argument of the cross ratio: zero when the four points lie
/// on one circle or line.
fn off_circle(z: [Point; 4]) -> f64 {
    let mul = |a: Point, b: Point| Point::new(a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x);
    let conj = |a: Point| Point::new(a.x, -a.y);
    let num = mul(z[0] - z[2], z[1] - z[3]);
    let den = mul(z[0] - z[3], z[1] - z[2]);
    let ratio = mul(num, conj(den));
    ratio.y.abs() / ratio.norm2().sqrt()
}

/// Common neighbors of an edge's ends with equal keys share a circle with
/// the ends, and the edge is on it when its key matches; a single-circle
/// route has both arcs on one circle.
fn shared_circles_hold(g: &RotationGraph, d: &Drawing) {
    let arc = |a: usize, b: usize| {
        d.edges.iter().find(|e| (e.u, e.v) == (a, b) || (e.u, e.v) == (b, a)).unwrap().arc
    };
    for e in g.edges() {
        let (u, v) = (e.u, e.v);
        let (pu, pv) = (d.positions[u], d.positions[v]);
        let keys = circle_keys(g, u, v);
        let witness = |r: &(Option<usize>, f64, bool)| match r.0 {
            Some(y) => d.positions[y],
            None => arc(u, v).midpoint(),
        };
        for (i, r) in keys.iter().enumerate() {
            for s in &keys[i + 1..] {
                if turn_gap(r.1, s.1) < 1e-9 {
                    let off = off_circle([pu, pv, witness(r), witness(s)]);
                    assert!(off < 1e-6, "{:?} and {:?} between {u} and {v} are {off} off one circle", r.0, s.0);
                }
            }
            if let (Some(y), true) = (r.0, r.2) {
                for m in [arc(u, y).midpoint(), arc(y, v).midpoint()] {
                    let off = off_circle([pu, pv, d.positions[y], m]);
                    assert!(off < 1e-6, "route through {y} bends by {off}");
                }
            }
        }
    }
}

fn disk_point() -> impl Strategy<Value = Point> {
    (0.0..0.95f64, 0.0..TAU).prop_map(|(r, a)| Point::polar(r, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn geodesics_are_orthogonal_to_the_boundary(a in disk_point(), b in disk_point()) {
        prop_assume!(a.dist(b) > 1e-3);
        let g = geodesic_through(HPoint::interior(a).unwrap(), HPoint::interior(b).unwrap()).unwrap();
        if let Some(c) = g.arc().circle() {
            let err = (c.center.norm2() - 1.0 - c.radius * c.radius).abs() / c.center.norm2();
            prop_assert!(err < 1e-9, "relative error {}", err);
        } else {
            // A diameter: the chord passes through the origin.
            prop_assert!(a.cross(b).abs() < 1e-9);
        }
    }

    #[test]
    fn wedge_opening_grows_along_rays(apex in disk_point(), from in 0.0..TAU, width in 0.2..3.0f64) {
        let apex = HPoint::interior(apex).unwrap();
        let w = Wedge::new(apex, Direction::new(from), Direction::new(from + width)).unwrap();
        let end = ray_endpoint(apex, w.bisector()).unwrap();
        let mut prev = 0.0;
        for i in 1..100 {
            let x = point_on_ray(apex, end, i as f64 / 100.0).unwrap();
            let o = wedge_opening(x, &w).unwrap();
            prop_assert!(o >= prev - 1e-12, "opening fell from {} to {} at step {}", prev, o, i);
            prev = o;
        }
    }

    #[test]
    fn two_degenerate_drawings_are_clean_and_repeatable(graph_seed in 0u64..10_000, seed in 0u64..100, n in 3usize..31) {
        let g = random_two_degenerate(n, &mut ChaCha8Rng::seed_from_u64(graph_seed));
        let opts = DegenerateOptions { seed, ..Default::default() };
        match draw_2degenerate(&g, &opts) {
            Ok(d) => {
                prop_assert!(verify::resolution_report(&d).is_lombardi(1e-9));
                prop_assert_eq!(drawing_to_json(&d), drawing_to_json(&draw_2degenerate(&g, &opts).unwrap()));
                shared_circles_hold(&g, &d);
            }
            Err(DegenerateError::CoveredCircle(c)) => {
                let u = g.names().iter().position(|x| *x == c.ends[0]).unwrap();
                let v = g.names().iter().position(|x| *x == c.ends[1]).unwrap();
                let keys = circle_keys(&g, u, v);
                let named = |r: &(Option<usize>, f64, bool)| r.0.map(|y| g.name(y).to_string());
                let group: Vec<_> = keys.iter().filter(|r| c.routes.contains(&named(r))).collect();
                prop_assert_eq!(group.len(), c.routes.len());
                prop_assert!(group.len() >= 3);
                prop_assert!(group.iter().all(|r| turn_gap(r.1, group[0].1) < 1e-9));
                prop_assert!(group.iter().filter(|r| r.2).count() >= 2);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn halin_drawings_are_planar(seed in 0u64..10_000, n in 4usize..30) {
        let tree = random_halin_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let d = draw_halin(&RootedTree::from_tree(&tree, None).unwrap()).unwrap();
        let r = verify::resolution_report(&d);
        prop_assert_eq!(r.crossing_count, 0);
        prop_assert!(r.is_lombardi(1e-9));
    }

    #[test]
    fn drawing_json_is_bit_exact(
        coords in prop::collection::vec((-1e6..1e6f64, -1e6..1e6f64), 2..8),
        bulge in -3.0..3.0f64,
    ) {
        let mut d = Drawing::empty();
        d.positions = coords.iter().map(|&(x, y)| Point::new(x, y)).collect();
        d.names = (0..d.positions.len()).map(|i| format!("v{i}")).collect();
        d.frames = vec![None; d.positions.len()];
        for i in 1..d.positions.len() {
            if let Ok(arc) = Arc::new(d.positions[0], d.positions[i], bulge / i as f64) {
                d.edges.push(DrawnEdge { u: 0, v: i, arc, group: Some(i) });
            }
        }
        let back = parse_drawing(&drawing_to_json(&d)).unwrap();
        prop_assert_eq!(back, d);
    }
}

/// Bipartite iff no odd closed walk, read off powers of the adjacency matrix.
fn bipartite_by_walks(g: &RotationGraph) -> bool {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        adj[e.u][e.v] = true;
        adj[e.v][e.u] = true;
    }
    // reach[i][j]: a walk of the current length joins i and j.
    let mut reach = adj.clone();
    for len in 1..=n {
        if len % 2 == 1 && (0..n).any(|i| reach[i][i]) {
            return false;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        next[i][j] |= adj[k][j];
                    }
                }
            }
        }
        reach = next;
    }
    true
}

fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = find(p, p[x]);
        }
        p[x]
    }
    let mut count = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

#[test]
fn classify_agrees_with_brute_force() {
    for (name, _, g) in corpus_graphs() {
        let p = classify(&g);
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(p.bipartite(), bipartite_by_walks(&g), "{name}");
        if let Some(col) = &p.bipartition {
            assert!(edges.iter().all(|&(a, b)| col[a] != col[b]), "{name}");
        }
        assert_eq!(p.components.len(), component_count(g.n(), &edges), "{name}");
        let base = component_count(g.n(), &edges);
        let bridgeless = (0..edges.len()).all(|i| {
            let rest: Vec<_> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
            component_count(g.n(), &rest) == base
        });
        assert_eq!(p.bridgeless, bridgeless, "{name}");
        let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        let regular = degrees.iter().all(|&d| d == degrees[0]).then(|| degrees[0]);
        assert_eq!(p.regular_degree, regular, "{name}");
        if g.n() <= 16 {
            assert_eq!(p.degeneracy, degeneracy_exhaustive(&g), "{name}");
        }
    }
}
