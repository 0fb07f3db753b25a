//! Standard graph families used by the corpus, tests and examples.

use super::RotationGraph;
use crate::euclid::Point;
use rand::seq::SliceRandom;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, TAU};

fn build(n: usize, edges: &[(usize, usize)]) -> RotationGraph {
    RotationGraph::from_edges(n, edges).expect("family is simple")
}

pub fn cycle(n: usize) -> RotationGraph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &e)
}

pub fn path(n: usize) -> RotationGraph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &e)
}

pub fn complete(n: usize) -> RotationGraph {
    let mut e = vec![];
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    build(n, &e)
}

/// Parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> RotationGraph {
    let mut e = vec![];
    for i in 0..a {
        for j in 0..b {
            e.push((i, a + j));
        }
    }
    build(a + b, &e)
}

/// Center 0 with `k` leaves.
pub fn star(k: usize) -> RotationGraph {
    let e: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    build(k + 1, &e)
}

/// Apex 0 joined to every vertex of the path `1..n`.
pub fn fan(n: usize) -> RotationGraph {
    let mut e: Vec<_> = (2..n).map(|i| (i - 1, i)).collect();
    e.extend((1..n).map(|i| (0, i)));
    build(n, &e)
}

pub fn octahedron() -> RotationGraph {
    let mut e = vec![];
    for i in 0..6 {
        for j in i + 1..6 {
            if j != i + 3 {
                e.push((i, j));
            }
        }
    }
    build(6, &e)
}

pub fn circulant(n: usize, steps: &[usize]) -> RotationGraph {
    let mut e = vec![];
    for i in 0..n {
        for &s in steps {
            let j = (i + s) % n;
            if s * 2 == n {
                if i < j {
                    e.push((i, j));
                }
            } else {
                e.push((i, j));
            }
        }
    }
    build(n, &e)
}

/// Möbius ladder on 8 vertices.
pub fn wagner() -> RotationGraph {
    circulant(8, &[1, 4])
}

/// Outer cycle `0..n`, spokes to `n..2n`, inner step `k`.
pub fn generalized_petersen(n: usize, k: usize) -> RotationGraph {
    let mut e = vec![];
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((i, n + i));
    }
    for i in 0..n {
        let j = (i + k) % n;
        if k * 2 != n || i < j {
            e.push((n + i, n + j));
        }
    }
    build(2 * n, &e)
}

pub fn petersen() -> RotationGraph {
    generalized_petersen(5, 2)
}

pub fn nauru() -> RotationGraph {
    generalized_petersen(12, 5)
}

/// Paley graph on a prime `p ≡ 1 (mod 4)`: `i ~ j` when `i - j` is a
/// nonzero square.
pub fn paley(p: usize) -> RotationGraph {
    let residues: Vec<usize> = (1..p).map(|x| x * x % p).collect();
    let mut steps: Vec<usize> = residues.into_iter().filter(|&r| r <= p / 2).collect();
    steps.sort_unstable();
    steps.dedup();
    circulant(p, &steps)
}

pub fn cube() -> RotationGraph {
    let mut e = vec![];
    for i in 0..8usize {
        for b in 0..3 {
            let j = i ^ (1 << b);
            if i < j {
                e.push((i, j));
            }
        }
    }
    build(8, &e)
}

pub fn heawood() -> RotationGraph {
    let mut e: Vec<_> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
    e.extend((0..14).step_by(2).map(|i| (i, (i + 5) % 14)));
    build(14, &e)
}

/// Cubic graph with a cut vertex into three odd branches, so it has no
/// perfect matching. Each branch is `K4` minus an edge whose two
/// degree-2 vertices hang from an attachment vertex.
pub fn no_perfect_matching_cubic() -> RotationGraph {
    let mut e = vec![];
    for b in 0..3 {
        let a = 1 + 5 * b;
        let [b1, b2, b3, b4] = [a + 1, a + 2, a + 3, a + 4];
        e.extend([(0, a), (a, b1), (a, b2)]);
        e.extend([(b1, b3), (b1, b4), (b2, b3), (b2, b4), (b3, b4)]);
    }
    build(16, &e)
}

/// Triangle `xyz` plus four vertices joined to all of it, with the
/// rotation under which incremental placement must collide.
pub fn g7() -> RotationGraph {
    let names = ["x", "y", "z", "p", "q", "r", "s"].map(String::from).to_vec();
    let mut e = vec![(0, 1), (1, 2), (2, 0)];
    for a in 3..7 {
        e.extend([(0, a), (1, a), (2, a)]);
    }
    let rot = vec![
        vec![1, 2, 3, 4, 5, 6],
        vec![2, 0, 3, 4, 5, 6],
        vec![0, 1, 3, 4, 5, 6],
        vec![0, 1, 2],
        vec![0, 1, 2],
        vec![0, 1, 2],
        vec![0, 1, 2],
    ];
    RotationGraph::with_names(names, &e, Some(rot)).expect("valid rotation")
}

/// `k` nested triangles, consecutive ones joined by a six-cycle, with the
/// rotation of its planar embedding. Vertex `3j + i` is corner `i` of
/// triangle `j` (0 innermost).
pub fn nested_triangles(k: usize) -> RotationGraph {
    let mut e = vec![];
    let id = |j: usize, i: usize| 3 * j + i % 3;
    for j in 0..k {
        for i in 0..3 {
            e.push((id(j, i), id(j, i + 1)));
        }
        if j + 1 < k {
            for i in 0..3 {
                e.push((id(j, i), id(j + 1, i)));
                e.push((id(j, i), id(j + 1, i + 2)));
            }
        }
    }
    let g = build(3 * k, &e);
    let pos: Vec<Point> = (0..3 * k)
        .map(|v| {
            let (j, i) = (v / 3, v % 3);
            let r = 2f64.powi(j as i32);
            Point::polar(r, FRAC_PI_2 + TAU * i as f64 / 3.0 + j as f64 * TAU / 6.0)
        })
        .collect();
    g.with_rotation(rotation_from_positions(&g, &pos))
        .expect("geometric rotation is valid")
}

/// Counter-clockwise rotation induced by straight-line edges at the given
/// positions.
pub fn rotation_from_positions(g: &RotationGraph, pos: &[Point]) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            let mut nb = g.rotation(v).to_vec();
            nb.sort_by(|&a, &b| {
                let ta = (pos[a] - pos[v]).angle().rem_euclid(TAU);
                let tb = (pos[b] - pos[v]).angle().rem_euclid(TAU);
                ta.total_cmp(&tb)
            });
            nb
        })
        .collect()
}

/// Random graph in which every vertex has at most two neighbors among the
/// earlier ones, with a random rotation.
pub fn random_two_degenerate<R: Rng>(n: usize, rng: &mut R) -> RotationGraph {
    let mut e = vec![];
    for v in 1..n {
        let k = rng.gen_range(0..=2.min(v));
        let mut earlier: Vec<usize> = (0..v).collect();
        earlier.shuffle(rng);
        for &u in earlier.iter().take(k) {
            e.push((u, v));
        }
    }
    randomize_rotation(&build(n, &e), rng)
}

/// Random graph in which every vertex has at most three earlier neighbors.
pub fn random_three_degenerate<R: Rng>(n: usize, rng: &mut R) -> RotationGraph {
    let mut e = vec![];
    for v in 1..n {
        let k = rng.gen_range(1..=3.min(v));
        let mut earlier: Vec<usize> = (0..v).collect();
        earlier.shuffle(rng);
        for &u in earlier.iter().take(k) {
            e.push((u, v));
        }
    }
    randomize_rotation(&build(n, &e), rng)
}

/// Erdős–Rényi graph.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> RotationGraph {
    let mut e = vec![];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    build(n, &e)
}

pub fn randomize_rotation<R: Rng>(g: &RotationGraph, rng: &mut R) -> RotationGraph {
    let rot = (0..g.n())
        .map(|v| {
            let mut r = g.rotation(v).to_vec();
            r.shuffle(rng);
            r
        })
        .collect();
    g.with_rotation(rot).expect("permuted rotation is valid")
}
