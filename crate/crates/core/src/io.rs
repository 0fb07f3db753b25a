//! JSON storage for drawings and verification reports.
//!
//! Floats are written in shortest round-trip form, so parsing a written
//! drawing gives back the same bits.

use crate::drawing::Drawing;
use crate::euclid::Arc;
use crate::verify::VerificationReport;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid drawing: {0}")]
    Invalid(String),
}

pub fn drawing_to_json(d: &Drawing) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("drawing serializes");
    s.push('\n');
    s
}

pub fn report_to_json(r: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

/// Parse a drawing and check that it is internally consistent.
pub fn parse_drawing(text: &str) -> Result<Drawing, IoError> {
    let d: Drawing = serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    check(&d)?;
    Ok(d)
}

fn check(d: &Drawing) -> Result<(), IoError> {
    let n = d.positions.len();
    if d.names.len() != n {
        return Err(IoError::Invalid(format!("{} names for {n} positions", d.names.len())));
    }
    if !d.frames.is_empty() && d.frames.len() != n {
        return Err(IoError::Invalid(format!("{} frames for {n} positions", d.frames.len())));
    }
    if let Some(i) = d.positions.iter().position(|p| !p.is_finite()) {
        return Err(IoError::Invalid(format!("position of vertex {i} is not finite")));
    }
    let tol = 1e-9 * d.scale().max(1.0);
    for (i, e) in d.edges.iter().enumerate() {
        if e.u >= n || e.v >= n || e.u == e.v {
            return Err(IoError::Invalid(format!("edge {i} has bad endpoints ({}, {})", e.u, e.v)));
        }
        Arc::new(e.arc.p(), e.arc.q(), e.arc.bulge())
            .map_err(|err| IoError::Invalid(format!("edge {i}: {err}")))?;
        if e.arc.p().dist(d.positions[e.u]) > tol || e.arc.q().dist(d.positions[e.v]) > tol {
            return Err(IoError::Invalid(format!("edge {i} does not start and end at its vertices")));
        }
    }
    for (i, c) in d.circles.iter().enumerate() {
        if !(c.radius > 0.0 && c.radius.is_finite() && c.center.is_finite()) {
            return Err(IoError::Invalid(format!("guide circle {i} is degenerate")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::{circular_drawing, CircularOptions};
    use crate::decompose::DEFAULT_BUDGET;
    use crate::graph::families::complete_bipartite;
    use crate::verify;

    fn k44() -> Drawing {
        circular_drawing(&complete_bipartite(4, 4), DEFAULT_BUDGET, &CircularOptions::default()).unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let d = k44();
        let text = drawing_to_json(&d);
        let back = parse_drawing(&text).unwrap();
        for (a, b) in d.positions.iter().zip(&back.positions) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
        for (a, b) in d.edges.iter().zip(&back.edges) {
            assert_eq!(a.arc.bulge().to_bits(), b.arc.bulge().to_bits());
        }
        assert_eq!(drawing_to_json(&back), text);
    }

    #[test]
    fn edited_bulge_is_noticed() {
        let d = k44();
        let before = verify::resolution_report(&d).max_deviation;
        let text = drawing_to_json(&d);
        let b = d.edges[0].arc.bulge();
        let edited = text.replacen(&format!("\"bulge\": {b:?}"), &format!("\"bulge\": {:?}", b + 0.01), 1);
        assert_ne!(edited, text);
        let after = verify::resolution_report(&parse_drawing(&edited).unwrap()).max_deviation;
        assert!(before < 1e-9 && after > 1e-3);
    }

    #[test]
    fn malformed_has_line() {
        match parse_drawing("{\n  \"names\": [\n    \"a\",\n  ]\n}") {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_edge_rejected() {
        let mut d = k44();
        d.edges[3].v = 99;
        assert!(matches!(parse_drawing(&drawing_to_json(&d)), Err(IoError::Invalid(_))));
    }
}
