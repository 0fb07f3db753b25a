//! SVG output.

use crate::drawing::Drawing;
use crate::euclid::{Arc, Point};
use std::fmt::Write;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Canvas width and height in pixels.
    pub size: f64,
    pub margin: f64,
    pub stroke_width: f64,
    pub vertex_radius: f64,
    pub labels: bool,
    /// Color edges by their group (factor, orbit, tree/cycle).
    pub color_groups: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 800.0,
            margin: 40.0,
            stroke_width: 2.0,
            vertex_radius: 5.0,
            labels: false,
            color_groups: true,
        }
    }
}

/// World-to-canvas map: uniform scale, y pointing down.
#[derive(Debug, Clone, Copy)]
pub struct Viewport {
    pub scale: f64,
    pub origin: Point,
    pub size: f64,
    pub margin: f64,
}

impl Viewport {
    pub fn fit(d: &Drawing, o: &RenderOptions) -> Viewport {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |a: Point, b: Point| {
            lo = Point::new(lo.x.min(a.x), lo.y.min(a.y));
            hi = Point::new(hi.x.max(b.x), hi.y.max(b.y));
        };
        for &p in &d.positions {
            grow(p, p);
        }
        for e in &d.edges {
            let (a, b) = e.arc.bounds();
            grow(a, b);
        }
        for c in &d.circles {
            let r = Point::new(c.radius, c.radius);
            grow(c.center - r, c.center + r);
        }
        if !lo.is_finite() {
            lo = Point::new(-1.0, -1.0);
            hi = Point::new(1.0, 1.0);
        }
        let inner = (o.size - 2.0 * o.margin).max(1.0);
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
        let scale = inner / extent;
        // Center the content in the canvas.
        let pad = Point::new(inner - (hi.x - lo.x) * scale, inner - (hi.y - lo.y) * scale) * 0.5;
        Viewport {
            scale,
            origin: Point::new(lo.x - pad.x / scale, hi.y + pad.y / scale),
            size: o.size,
            margin: o.margin,
        }
    }

    pub fn to_canvas(&self, p: Point) -> Point {
        Point::new(
            self.margin + (p.x - self.origin.x) * self.scale,
            self.margin + (self.origin.y - p.y) * self.scale,
        )
    }

    pub fn to_world(&self, c: Point) -> Point {
        Point::new(
            self.origin.x + (c.x - self.margin) / self.scale,
            self.origin.y - (c.y - self.margin) / self.scale,
        )
    }
}

/// Path data for one edge. The y flip turns a counter-clockwise arc into
/// sweep flag 0.
pub fn arc_path(a: &Arc, view: &Viewport) -> String {
    let p = view.to_canvas(a.p());
    let q = view.to_canvas(a.q());
    if a.is_segment() {
        return format!("M {} {} L {} {}", num(p.x), num(p.y), num(q.x), num(q.y));
    }
    let r = a.radius() * view.scale;
    let large = u8::from(a.bulge().abs() > 1.0);
    let sweep = u8::from(a.bulge() < 0.0);
    format!(
        "M {} {} A {} {} 0 {large} {sweep} {} {}",
        num(p.x),
        num(p.y),
        num(r),
        num(r),
        num(q.x),
        num(q.y)
    )
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn to_svg(d: &Drawing, o: &RenderOptions) -> String {
    let view = Viewport::fit(d, o);
    let mut out = String::new();
    let size = num(o.size);
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    for c in &d.circles {
        let m = view.to_canvas(c.center);
        writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#bbbbbb" stroke-width="1" stroke-dasharray="4 4"/>"##,
            num(m.x),
            num(m.y),
            num(c.radius * view.scale)
        )
        .unwrap();
    }
    for e in &d.edges {
        let color = match e.group {
            Some(g) if o.color_groups => PALETTE[g % PALETTE.len()],
            _ => "#000000",
        };
        writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
            arc_path(&e.arc, &view),
            num(o.stroke_width)
        )
        .unwrap();
    }
    for (i, &p) in d.positions.iter().enumerate() {
        let c = view.to_canvas(p);
        writeln!(out, r##"<circle cx="{}" cy="{}" r="{}" fill="#000000"/>"##, num(c.x), num(c.y), num(o.vertex_radius)).unwrap();
        if o.labels {
            writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
                num(c.x + o.vertex_radius + 2.0),
                num(c.y - o.vertex_radius - 2.0),
                escape(&d.names[i])
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::{circular_drawing, CircularOptions};
    use crate::decompose::DEFAULT_BUDGET;
    use crate::drawing::DrawnEdge;
    use crate::graph::families::complete_bipartite;
    use std::f64::consts::PI;

    /// Center of an SVG arc command with equal radii and no rotation, using
    /// the endpoint-to-center conversion from the SVG implementation notes.
    fn svg_center(p: Point, q: Point, r: f64, large: bool, sweep: bool) -> Point {
        let h = (p - q) * 0.5;
        let sign = if large != sweep { 1.0 } else { -1.0 };
        let coef = sign * ((r * r - h.norm2()).max(0.0) / h.norm2()).sqrt();
        Point::new(coef * h.y, -coef * h.x) + (p + q) * 0.5
    }

    fn parse_arc(d: &str) -> (Point, Point, f64, bool, bool) {
        let t: Vec<&str> = d.split_whitespace().collect();
        let f = |i: usize| t[i].parse::<f64>().unwrap();
        assert_eq!((t[0], t[3]), ("M", "A"));
        (Point::new(f(1), f(2)), Point::new(f(9), f(10)), f(4), t[7] == "1", t[8] == "1")
    }

    fn semicircle(bulge: f64) -> Drawing {
        let mut d = Drawing::empty();
        d.names = vec!["a".into(), "b".into()];
        d.positions = vec![Point::new(-1.0, 0.0), Point::new(1.0, 0.0)];
        d.frames = vec![None, None];
        let arc = Arc::new(d.positions[0], d.positions[1], bulge).unwrap();
        d.edges = vec![DrawnEdge { u: 0, v: 1, arc, group: None }];
        d
    }

    #[test]
    fn semicircle_sampling_audit() {
        for bulge in [1.0, -1.0] {
            let d = semicircle(bulge);
            let o = RenderOptions { size: 1000.0, margin: 0.0, ..Default::default() };
            let view = Viewport::fit(&d, &o);
            let path = arc_path(&d.edges[0].arc, &view);
            let (p, q, r, large, sweep) = parse_arc(&path);
            assert!(!large);
            assert_eq!(sweep, bulge < 0.0);
            let c = svg_center(p, q, r, large, sweep);
            let circle = d.edges[0].arc.circle().unwrap();
            let a0 = (p - c).angle();
            // Sweep flag 1 runs with increasing canvas angle.
            let span = if sweep { PI } else { -PI };
            assert!((c + Point::polar(r, a0 + span)).dist(q) < 1e-3);
            for k in 0..64 {
                let t = a0 + span * k as f64 / 63.0;
                let screen = c + Point::polar(r, t);
                let back = view.to_world(screen);
                let off = (back.dist(circle.center) - circle.radius).abs() * view.scale;
                assert!(off < 0.5, "{off}");
                assert!(d.edges[0].arc.extent_contains(back, 1e-3));
            }
        }
    }

    #[test]
    fn empty_drawing() {
        let s = to_svg(&Drawing::empty(), &RenderOptions::default());
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
        assert!(!s.contains("<path"));
    }

    #[test]
    fn k44_element_count() {
        let d = circular_drawing(&complete_bipartite(4, 4), DEFAULT_BUDGET, &CircularOptions::default()).unwrap();
        let s = to_svg(&Drawing { circles: vec![], ..d }, &RenderOptions::default());
        assert_eq!(s.matches("<path").count(), 16);
        assert_eq!(s.matches("<circle").count(), 8);
    }

    #[test]
    fn labels_are_escaped() {
        let mut d = semicircle(0.5);
        d.names[0] = "a<b".into();
        let s = to_svg(&d, &RenderOptions { labels: true, ..Default::default() });
        assert!(s.contains("a&lt;b"));
    }
}
