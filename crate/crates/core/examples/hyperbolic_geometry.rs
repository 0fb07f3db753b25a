//! Geodesics and wedges in the Poincaré disk.

use lombardi::euclid::{Direction, Point};
use lombardi::hyperbolic::*;

fn main() {
    let a = HPoint::interior(Point::new(0.2, 0.1)).unwrap();
    let b = HPoint::interior(Point::new(-0.4, 0.5)).unwrap();
    let g = geodesic_through(a, b).unwrap();
    println!("geodesic {g:?}");
    println!("distance {:.6}", distance(a, b));
    let w = Wedge::new(a, Direction::new(0.0), Direction::new(1.2)).unwrap();
    // Measured from the bisector: half of 1.2 near the apex, π at the boundary.
    let end = ray_endpoint(a, w.bisector()).unwrap();
    for t in [0.1, 0.5, 0.9] {
        let x = point_on_ray(a, end, t).unwrap();
        println!("opening at {:?}: {:.6}", x.location(), wedge_opening(x, &w).unwrap());
    }
    println!("the other two of three equal rays: {:?}", equally_spaced_directions(Direction::new(0.0), 3));
}
