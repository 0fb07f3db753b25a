//! Oracles and corpus access shared by the integration tests.

#![allow(dead_code)]

use lombardi::euclid::{wrap_pi, Direction, LocusInputs, Point};
use lombardi::graph::{GraphDocument, RotationGraph};
use lombardi::spiro::{parse_spiro_spec, SpiroSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::path::PathBuf;

/// Direction of travel at `r` along the circle through `from` that is
/// tangent to `dir` there, oriented by leaving `from` along `dir`.
/// Returns `None` for the straight case.
pub fn travel_at(from: Point, dir: Point, r: Point) -> Option<Point> {
    let n = dir.perp();
    let rel = r - from;
    let den = 2.0 * n.dot(rel);
    if den.abs() < 1e-14 {
        return None;
    }
    let t = rel.norm2() / den;
    let center = from + n * t;
    // t > 0: center on the left of dir, counter-clockwise travel.
    let radial = r - center;
    Some(if t > 0.0 { radial.perp() } else { -radial.perp() })
}

/// Oracle meeting angle at `r`: ccw angle from the back-tangent of the
/// p-arc to the back-tangent of the q-arc.
pub fn oracle_meeting_angle(inp: &LocusInputs, r: Point) -> Option<f64> {
    let tp = travel_at(inp.p, inp.dir_p.unit(), r)?;
    let tq = travel_at(inp.q, inp.dir_q.unit(), r)?;
    Some(((-tq).angle() - (-tp).angle()).rem_euclid(TAU))
}

/// Sample meeting points by sweeping circles tangent to `dir_p` at `p` and
/// bisecting on the meeting-angle residual along each.
pub fn sampled_meeting_points(inp: &LocusInputs, sweeps: usize) -> Vec<Point> {
    let scale = inp.p.dist(inp.q);
    let n = inp.dir_p.unit().perp();
    let mut out = Vec::new();
    for k in 0..sweeps {
        // Signed radii spread over several orders of magnitude.
        let u = (k as f64 + 0.5) / sweeps as f64 * 2.0 - 1.0;
        let rho = scale * u.signum() * 10f64.powf(3.0 * u.abs() - 1.5);
        let center = inp.p + n * rho;
        let start = (inp.p - center).angle();
        let on = |s: f64| center + Point::polar(rho.abs(), start + s);
        let resid = |s: f64| -> Option<f64> {
            let r = on(s);
            if r.dist(inp.p) < 1e-6 * scale || r.dist(inp.q) < 1e-6 * scale {
                return None;
            }
            Some(wrap_pi(oracle_meeting_angle(inp, r)? - inp.ccw_theta()))
        };
        let steps = 720;
        let mut prev: Option<(f64, f64)> = None;
        for i in 1..steps {
            let s = i as f64 / steps as f64 * TAU;
            let cur = resid(s).map(|v| (s, v));
            if let (Some((s0, v0)), Some((s1, v1))) = (prev, cur) {
                if v0.signum() != v1.signum() && v0.abs() < 1.0 && v1.abs() < 1.0 {
                    let (mut a, mut b, mut fa) = (s0, s1, v0);
                    let mut ok = true;
                    for _ in 0..80 {
                        let m = 0.5 * (a + b);
                        match resid(m) {
                            Some(fm) if fm.signum() == fa.signum() => {
                                a = m;
                                fa = fm;
                            }
                            Some(_) => b = m,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    let m = 0.5 * (a + b);
                    if ok && resid(m).is_some_and(|v| v.abs() < 1e-9) {
                        out.push(on(m));
                    }
                }
            }
            prev = cur;
        }
    }
    out
}

pub fn random_inputs(rng: &mut ChaCha8Rng) -> LocusInputs {
    loop {
        let p = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let q = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if p.dist(q) < 0.3 {
            continue;
        }
        let inp = LocusInputs::new(
            p,
            Direction::new(rng.gen_range(0.0..TAU)),
            q,
            Direction::new(rng.gen_range(0.0..TAU)),
            rng.gen_range(0.1..TAU - 0.1),
        );
        // Stay away from nearly straight loci, which have enormous radii.
        if inp.inscribed_angle().sin().abs() > 0.05 {
            return inp;
        }
    }
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every graph document in the corpus, by file stem.
pub fn corpus_graphs() -> Vec<(String, GraphDocument, RotationGraph)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let doc = GraphDocument::parse(&std::fs::read_to_string(&p).unwrap()).unwrap();
            let g = doc.to_graph().unwrap();
            (p.file_stem().unwrap().to_string_lossy().into_owned(), doc, g)
        })
        .collect()
}

pub fn corpus_graph(name: &str) -> (GraphDocument, RotationGraph) {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).unwrap();
    let doc = GraphDocument::parse(&text).unwrap();
    let g = doc.to_graph().unwrap();
    (doc, g)
}

pub fn corpus_spiro(name: &str) -> SpiroSpec {
    let text = std::fs::read_to_string(corpus_dir().join(format!("spiro/{name}.json"))).unwrap();
    parse_spiro_spec(&text).unwrap()
}

pub fn corpus_spiro_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir().join("spiro"))
        .unwrap()
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

/// Whether a perfect matching exists, by dynamic programming over vertex
/// subsets.
pub fn has_perfect_matching_exhaustive(g: &RotationGraph) -> bool {
    let n = g.n();
    if n % 2 == 1 {
        return false;
    }
    let mut adj = vec![0u32; n];
    for e in g.edges() {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }
    let full = (1u32 << n) - 1;
    // ok[mask]: the vertices in `mask` can be perfectly matched.
    let mut ok = vec![false; 1 << n];
    ok[0] = true;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let v = mask.trailing_zeros() as usize;
        let mut rest = adj[v] & mask & !(1 << v);
        while rest != 0 {
            let w = rest.trailing_zeros();
            rest &= rest - 1;
            if ok[(mask & !(1 << v) & !(1 << w)) as usize] {
                ok[mask as usize] = true;
                break;
            }
        }
    }
    ok[full as usize]
}

/// Largest minimum degree over all induced subgraphs.
pub fn degeneracy_exhaustive(g: &RotationGraph) -> usize {
    let n = g.n();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let min = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| g.rotation(v).iter().filter(|&&w| mask >> w & 1 == 1).count())
            .min()
            .unwrap();
        best = best.max(min);
    }
    best
}

/// Degree of every vertex in the spanning subgraph with these edge ids.
pub fn degrees_in(g: &RotationGraph, edges: &[usize]) -> Vec<usize> {
    let mut deg = vec![0; g.n()];
    for &e in edges {
        deg[g.edge(e).u] += 1;
        deg[g.edge(e).v] += 1;
    }
    deg
}

/// The parts use every edge of `g` exactly once.
pub fn is_edge_partition(g: &RotationGraph, parts: &[Vec<usize>]) -> bool {
    let mut seen = BTreeSet::new();
    let total: usize = parts.iter().map(Vec::len).sum();
    parts.iter().flatten().all(|&e| e < g.m() && seen.insert(e)) && total == g.m()
}

pub fn is_regular_part(g: &RotationGraph, edges: &[usize], k: usize) -> bool {
    degrees_in(g, edges).iter().all(|&d| d == k)
}
