//! Brute-force checks of the geometry kernel. The oracles here build circles
//! from tangency conditions directly instead of going through the crate's
//! arc or locus constructions.

use lombardi::euclid::{
    angle_to_circle, arc_from_tangent, circle_through_chord_angle, cross_ratio, meeting_locus,
    wrap_pi, Arc, Circle, Direction, LocusInputs, MobiusMap, Point, Side,
};
use proptest::prelude::*;

mod common;
use common::{random_inputs, sampled_meeting_points};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

#[test]
fn locus_contains_every_sampled_meeting_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0usize;
    for _ in 0..1000 {
        let inp = random_inputs(&mut rng);
        let circle = meeting_locus(&inp).unwrap();
        let pts = sampled_meeting_points(&inp, 6);
        for r in &pts {
            let off = circle.offset(*r).abs() / circle.radius.max(1.0);
            assert!(off < 1e-9, "offset {off} for {inp:?}");
            checked += 1;
        }
    }
    assert!(checked > 5000, "only {checked} meeting points sampled");
}

#[test]
fn quarter_turn_locus_matches_fitted_circle() {
    let p = Point::new(-1.0, 0.0);
    let q = Point::new(1.0, 0.0);
    let up = Direction::new(FRAC_PI_2);
    let inp = LocusInputs::new(p, up, q, up, FRAC_PI_2);
    let pts = sampled_meeting_points(&inp, 50);
    assert!(pts.len() >= 20, "{} points", pts.len());
    // Algebraic least-squares circle fit: x² + y² + Dx + Ey + F = 0.
    let mut m = [[0.0f64; 3]; 3];
    let mut v = [0.0f64; 3];
    for r in &pts {
        let row = [r.x, r.y, 1.0];
        let rhs = -(r.x * r.x + r.y * r.y);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            v[i] += row[i] * rhs;
        }
    }
    let sol = solve3(m, v);
    let center = Point::new(-sol[0] / 2.0, -sol[1] / 2.0);
    let radius = (center.norm2() - sol[2]).sqrt();
    let c = meeting_locus(&inp).unwrap();
    assert!(center.dist(c.center) < 1e-8, "{center:?} vs {:?}", c.center);
    assert!((radius - c.radius).abs() < 1e-8);
    assert!((radius - 2f64.sqrt()).abs() < 1e-8);
    assert!(center.x.abs() < 1e-8 && (center.y.abs() - 1.0).abs() < 1e-8);
}

fn solve3(mut m: [[f64; 3]; 3], mut v: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, piv);
        v.swap(col, piv);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in 0..3 {
                    m[row][k] -= f * m[col][k];
                }
                v[row] -= f * v[col];
            }
        }
    }
    [v[0] / m[0][0], v[1] / m[1][1], v[2] / m[2][2]]
}

#[test]
fn meeting_angle_round_trip_through_arcs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let inp = random_inputs(&mut rng);
        let c = meeting_locus(&inp).unwrap();
        for _ in 0..4 {
            let r = c.point_at(rng.gen_range(0.0..TAU));
            let (Ok(ap), Ok(aq)) = (
                arc_from_tangent(inp.p, inp.dir_p, r),
                arc_from_tangent(inp.q, inp.dir_q, r),
            ) else {
                continue;
            };
            if r.dist(inp.p) < 1e-3 || r.dist(inp.q) < 1e-3 {
                continue;
            }
            let theta = (aq.tangents().1.angle() - ap.tangents().1.angle()).rem_euclid(TAU);
            let err = wrap_pi(theta - inp.ccw_theta()).abs();
            worst = worst.max(err);
        }
    }
    assert!(worst < 1e-8, "worst meeting-angle error {worst}");
}

#[test]
fn orthogonal_circle_example_satisfies_orthogonality() {
    let a = circle_through_chord_angle(
        &Circle::unit(),
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
        FRAC_PI_2,
        Side::Inside,
    )
    .unwrap();
    let c = a.circle().unwrap();
    assert!((c.center.dist(Point::ORIGIN).powi(2) - (1.0 + c.radius.powi(2))).abs() < 1e-12);
}

#[test]
fn mobius_preserves_angles_between_arcs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..200 {
        let x = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let a1 = arc_from_tangent(
            x,
            Direction::new(rng.gen_range(0.0..TAU)),
            Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
        );
        let a2 = arc_from_tangent(
            x,
            Direction::new(rng.gen_range(0.0..TAU)),
            Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
        );
        let (Ok(a1), Ok(a2)) = (a1, a2) else { continue };
        let src = [
            Point::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)),
            Point::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)),
            Point::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)),
        ];
        let dst = [Point::new(0.0, 0.0), Point::new(1.0, 0.5), Point::new(-0.3, 2.0)];
        let Ok(m) = MobiusMap::three_point(src, dst) else { continue };
        let (Ok(b1), Ok(b2)) = (m.apply_arc(&a1), m.apply_arc(&a2)) else { continue };
        // Keep away from extreme distortion near the pole.
        if b1.chord_length() > 1e4 || b2.chord_length() > 1e4 {
            continue;
        }
        let before = a2.tangents().0.diff(a1.tangents().0);
        let after = b2.tangents().0.diff(b1.tangents().0);
        assert!(
            wrap_pi(before - after).abs() < 1e-9,
            "angle {before} became {after}"
        );
        checked += 1;
    }
    assert!(checked > 150);
}

#[test]
fn mobius_images_stay_on_image_circle() {
    let m = MobiusMap::three_point(
        [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)],
        [Point::new(2.0, 1.0), Point::new(-1.0, 0.5), Point::new(0.2, -0.7)],
    )
    .unwrap();
    let a = Arc::new(Point::new(-1.0, -1.0), Point::new(2.0, 0.5), 0.4).unwrap();
    let b = m.apply_arc(&a).unwrap();
    for k in 0..=16 {
        let img = m.apply_point(a.point_at(k as f64 / 16.0)).unwrap();
        assert!(b.clearance(img) < 1e-9 * (1.0 + b.radius().min(1e6)));
    }
}

proptest! {
    #[test]
    fn property_one_equal_endpoint_angles(
        cx in -3.0f64..3.0, cy in -3.0f64..3.0, r in 0.2f64..5.0,
        s in 0.0f64..TAU, t in 0.0f64..TAU, bulge in -3.0f64..3.0,
    ) {
        let o = Circle::new(Point::new(cx, cy), r).unwrap();
        let (p, q) = (o.point_at(s), o.point_at(t));
        prop_assume!(p.dist(q) > 1e-3 * r);
        let a = Arc::new(p, q, bulge).unwrap();
        let (ap, aq) = angle_to_circle(&a, &o);
        prop_assert!((ap - aq).abs() < 1e-10, "{} vs {}", ap, aq);
    }

    #[test]
    fn tangent_construction_is_inverse_consistent(
        px in -3.0f64..3.0, py in -3.0f64..3.0, qx in -3.0f64..3.0, qy in -3.0f64..3.0,
        dir in 0.0f64..TAU,
    ) {
        let (p, q) = (Point::new(px, py), Point::new(qx, qy));
        prop_assume!(p.dist(q) > 1e-3);
        let d = Direction::new(dir);
        prop_assume!(wrap_pi(dir - (q - p).angle()).abs() < PI - 1e-6);
        let a = arc_from_tangent(p, d, q).unwrap();
        prop_assert!(a.tangents().0.diff(d).abs() < 1e-10);
        prop_assert!(a.point_at(1.0).dist(q) < 1e-9 * (1.0 + a.chord_length()));
    }

    #[test]
    fn mobius_preserves_cross_ratio(
        coef in proptest::array::uniform8(-2.0f64..2.0),
        pts in proptest::array::uniform8(-3.0f64..3.0),
    ) {
        use num_complex::Complex64;
        let c = |i: usize| Complex64::new(coef[2 * i], coef[2 * i + 1]);
        let Ok(m) = MobiusMap::new(c(0), c(1), c(2), c(3)) else { return Ok(()) };
        let z: Vec<Point> = (0..4).map(|i| Point::new(pts[2 * i], pts[2 * i + 1])).collect();
        for i in 0..4 {
            for j in 0..i {
                prop_assume!(z[i].dist(z[j]) > 1e-2);
            }
        }
        let w: Vec<Point> = match z.iter().map(|&p| m.apply_point(p)).collect::<Result<_, _>>() {
            Ok(w) => w,
            Err(_) => return Ok(()),
        };
        prop_assume!(w.iter().all(|p| p.norm() < 1e4));
        let before = cross_ratio(z[0], z[1], z[2], z[3]);
        let after = cross_ratio(w[0], w[1], w[2], w[3]);
        prop_assert!((before - after).norm() < 1e-9 * (1.0 + before.norm()));
    }
}
