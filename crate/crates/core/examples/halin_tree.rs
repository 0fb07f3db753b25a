//! Halin graphs: a plane tree drawn in the Poincaré disk plus its leaf cycle
//! on the boundary.

use lombardi::euclid::{angle_to_circle, Circle};
use lombardi::halin::*;
use lombardi::verify;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tree = random_halin_tree(25, &mut rng);
    let t = RootedTree::from_tree(&tree, None).unwrap();
    let h = good_hyperbolic_tree(&t).unwrap();
    let worst = h.bisections.iter().map(BisectionRecord::residual).fold(0.0, f64::max);
    println!("{} nodes, {} bisections, worst residual {worst:.1e}", t.n(), h.bisections.len());
    let audit = dominance_audit(&t, &h, 64).unwrap();
    println!("dominance: {} pairs, {} violations", audit.pairs_checked, audit.violations.len());

    let d = draw_halin(&t).unwrap();
    let r = verify::resolution_report(&d);
    println!("deviation {:.1e}, crossings {}", r.max_deviation, r.crossing_count);
    let unit = Circle::unit();
    for e in d.edges.iter().filter(|e| e.group == Some(1)).take(3) {
        let (a, b) = angle_to_circle(&e.arc, &unit);
        println!("leaf arc {}-{} meets the boundary at {:.6} and {:.6} degrees", e.u, e.v, a.to_degrees(), b.to_degrees());
    }
}
