//! Check a drawing, break it, check again, and write SVG.
//!
//!     cargo run --example verify_and_render -- /tmp/k44.svg

use lombardi::circular::{circular_drawing, CircularOptions};
use lombardi::decompose::DEFAULT_BUDGET;
use lombardi::euclid::Arc;
use lombardi::graph::families::complete_bipartite;
use lombardi::io::{drawing_to_json, parse_drawing};
use lombardi::render::{to_svg, RenderOptions};
use lombardi::verify;

fn main() {
    let d = circular_drawing(&complete_bipartite(4, 4), DEFAULT_BUDGET, &CircularOptions::default()).unwrap();
    let r = verify::resolution_report(&d);
    println!("k44: deviation {:.1e}, crossings {}", r.max_deviation, r.crossing_count);

    let mut broken = d.clone();
    let a = broken.edges[0].arc;
    broken.edges[0].arc = Arc::new(a.p(), a.q(), a.bulge() + 0.05).unwrap();
    let r = verify::resolution_report(&broken);
    println!("after bending one edge: deviation {:.3e} at vertex {:?}", r.max_deviation, r.worst_vertex);

    let text = drawing_to_json(&d);
    assert_eq!(parse_drawing(&text).unwrap(), d);
    let svg = to_svg(&d, &RenderOptions { labels: true, ..Default::default() });
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, svg).unwrap(),
        None => println!("{} bytes of SVG", svg.len()),
    }
}
