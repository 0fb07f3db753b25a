//! Symmetric drawings from concentric circles.
//!
//!     cargo run --example spirograph -- corpus/spiro/nauru.json

use lombardi::spiro::*;
use lombardi::verify;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "corpus/spiro/petersen.json".into());
    let spec = parse_spiro_spec(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let g = spec.expand().unwrap();
    println!("{path}: {} vertices, {} edges, {}-fold", g.n(), g.m(), spec.symmetry);
    let opts = SpiroOptions::default();
    for (c, s) in solve_circles(&spec, &opts).unwrap().iter().enumerate() {
        println!("circle {c}: radius {:.6} twist {:.6} heuristic {}", s.radius, s.twist, s.heuristic);
    }
    let d = draw_spirograph(&spec, &opts).unwrap();
    let r = verify::resolution_report(&d);
    println!("deviation {:.1e}, crossings {}", r.max_deviation, r.crossing_count);

    let nested = nested_triangles_spec(4);
    match draw_spirograph(&nested, &opts) {
        Err(e) => println!("4 nested triangles, growing radii: {e}"),
        Ok(_) => println!("4 nested triangles drawn"),
    }
    let forced = draw_spirograph(&nested, &SpiroOptions { increasing: false, ..opts }).unwrap();
    println!("forced: {} crossings", verify::resolution_report(&forced).crossing_count);
}
