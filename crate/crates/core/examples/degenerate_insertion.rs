//! Incremental drawing of 2- and 3-degenerate graphs.

use lombardi::degenerate::{covered_circle, draw_2degenerate, draw_3degenerate, DegenerateError, DegenerateOptions};
use lombardi::graph::RotationGraph;
use lombardi::graph::families::*;
use lombardi::verify;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let opts = DegenerateOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [10, 20, 30] {
        let g = random_two_degenerate(n, &mut rng);
        let d = draw_2degenerate(&g, &opts).unwrap();
        let r = verify::resolution_report(&d);
        println!("2-degenerate n={n}: m={} deviation {:.1e}, lombardi {}", g.m(), r.max_deviation, r.is_lombardi(1e-9));
    }
    for (name, g) in [("petersen", petersen()), ("cube", cube()), ("k4", complete(4))] {
        let d = draw_3degenerate(&g, &opts).unwrap();
        println!("{name}: deviation {:.1e}", verify::resolution_report(&d).max_deviation);
    }
    match draw_3degenerate(&g7(), &opts) {
        Err(DegenerateError::CoincidentPlacement(c)) => {
            println!("g7: vertex {} has nowhere to go next to {:?}", c.vertex, c.neighbors)
        }
        other => println!("g7: unexpected {:?}", other.map(|d| d.n())),
    }

    // A triangle drawn as one full circle, and a vertex that must sit on it.
    let g = RotationGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 4), (0, 5), (2, 3), (0, 3)])
        .and_then(|g| g.with_rotation(vec![vec![3, 1, 2, 5], vec![2, 0], vec![3, 1, 0, 4], vec![0, 2], vec![2], vec![0]]))
        .unwrap();
    if let Some(c) = covered_circle(&g) {
        println!("no drawing: routes {:?} between {} and {} share a circle", c.routes, c.ends[0], c.ends[1]);
    }
    let mut seen = 0;
    for seed in 0..2000u64 {
        let g = random_two_degenerate(3 + (seed % 28) as usize, &mut ChaCha8Rng::seed_from_u64(seed));
        seen += usize::from(covered_circle(&g).is_some());
    }
    println!("{seen} of 2000 random 2-degenerate rotation systems have a covered circle");
}
