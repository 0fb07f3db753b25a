//! Where can two arcs with fixed starting tangents meet at a given angle?

use lombardi::euclid::*;
use std::f64::consts::PI;

fn main() {
    let p = Point::new(0.0, 0.0);
    let q = Point::new(3.0, 1.0);
    let inputs = LocusInputs::new(p, Direction::new(0.3), q, Direction::new(2.0), PI / 3.0);
    let c = meeting_locus(&inputs).unwrap();
    println!("locus: center ({:.4}, {:.4}) radius {:.4}", c.center.x, c.center.y, c.radius);
    for k in 1..6 {
        let r = c.point_at(k as f64);
        let a = arc_from_tangent(p, inputs.dir_p, r).unwrap();
        let b = arc_from_tangent(q, inputs.dir_q, r).unwrap();
        let meet = (b.tangents().1.angle() - a.tangents().1.angle()).rem_euclid(2.0 * PI);
        println!("  ({:+.3}, {:+.3}): meeting angle {:.12}", r.x, r.y, meet);
    }
}
