//! Regular graphs with every vertex on one circle.
//!
//!     cargo run --example circular_regular

use lombardi::circular::{circular_drawing, CircularOptions};
use lombardi::decompose::{circular_plan, DecomposeError, DEFAULT_BUDGET};
use lombardi::graph::families::*;
use lombardi::verify;

fn main() {
    for (name, g) in [
        ("wagner", wagner()),
        ("k44", complete_bipartite(4, 4)),
        ("paley13", paley(13)),
        ("petersen", petersen()),
        ("k5", complete(5)),
    ] {
        let plan = circular_plan(&g, DEFAULT_BUDGET).unwrap();
        let d = circular_drawing(&g, DEFAULT_BUDGET, &CircularOptions::default()).unwrap();
        let r = verify::report_with(&d, 1e-6);
        println!(
            "{name:9} case {:?}, {} factors: deviation {:.1e}, on circle within {:.1e}, {} crossings",
            plan.case,
            plan.factors.len(),
            r.max_deviation,
            r.cocircularity.unwrap_or(f64::NAN),
            r.crossing_count
        );
    }
    match circular_plan(&no_perfect_matching_cubic(), DEFAULT_BUDGET) {
        Err(DecomposeError::NoPerfectMatching(w)) => {
            println!("no-pm-cubic: rejected, deleting {:?} leaves {} odd parts", w.removed, w.odd_components.len())
        }
        other => println!("no-pm-cubic: unexpected {other:?}"),
    }
}
