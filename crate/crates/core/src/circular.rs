//! Circular Lombardi drawings of regular graphs: every vertex on the unit
//! circle, each factor of the decomposition drawn with one pair of slots.
//!
//! Slot offsets are measured at each vertex from the counter-clockwise
//! tangent of the host circle, so `π/2` points at the center. An arc that
//! leaves one vertex at offset `θ` arrives at the other at offset `π - θ`,
//! so every vertex can use the same slot set as long as that set is closed
//! under `θ ↦ π - θ`.

use crate::decompose::{audit_plan, DecomposeError, DecompositionPlan, FactorKind, PlanCase};
use crate::drawing::{Drawing, DrawnEdge, Frame};
use crate::euclid::{arc_from_tangent, normalize_angle, wrap_pi, Circle, Direction, Point, Side};
use crate::graph::RotationGraph;
use crate::verify;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircularError {
    #[error("no slot assignment for this case: {0}")]
    InfeasibleCase(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("no valid placement after {0} perturbations")]
    PerturbationExhausted(usize),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

/// Slots used by one factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorSlots {
    /// Offset at the tail of each edge, following the factor's orientation.
    pub forward: f64,
    /// Offset at the head.
    pub backward: f64,
    /// Edges alternate between `forward` and `backward` at both ends
    /// instead (the perpendicular pair of a bipartite factor).
    pub alternating: bool,
    /// Angle between the factor's arcs and the host circle.
    pub meeting_angle: f64,
    pub side: Option<SideTag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideTag {
    Inside,
    Outside,
    OnCircle,
    Both,
}

impl From<Side> for SideTag {
    fn from(s: Side) -> Self {
        match s {
            Side::Inside => SideTag::Inside,
            Side::Outside => SideTag::Outside,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlotAssignment {
    pub degree: usize,
    /// Offset of slot 0; slot `k` is `base_offset + 2πk/degree`.
    pub base_offset: f64,
    pub factors: Vec<FactorSlots>,
    /// Sharpest angle between the inward radius and a slot, the same at
    /// every vertex.
    pub twist: f64,
}

impl SlotAssignment {
    pub fn offsets(&self) -> Vec<f64> {
        (0..self.degree)
            .map(|k| normalize_angle(self.base_offset + TAU * k as f64 / self.degree as f64))
            .collect()
    }
}

fn same_angle(a: f64, b: f64) -> bool {
    wrap_pi(a - b).abs() < 1e-9
}

fn side_of(offset: f64) -> SideTag {
    let s = offset.sin();
    if s.abs() < 1e-12 {
        SideTag::OnCircle
    } else if s > 0.0 {
        SideTag::Inside
    } else {
        SideTag::Outside
    }
}

fn pair_slots(forward: f64) -> FactorSlots {
    let f = wrap_pi(forward);
    FactorSlots {
        forward: f,
        backward: wrap_pi(PI - f),
        alternating: false,
        meeting_angle: f.abs(),
        side: Some(side_of(f)),
    }
}

pub fn assign_slots(degree: usize, plan: &DecompositionPlan) -> Result<SlotAssignment, CircularError> {
    let d = degree;
    if d == 0 || plan.degree != d {
        return Err(CircularError::InfeasibleCase(format!("plan is for degree {}", plan.degree)));
    }
    let base_offset = match plan.case {
        PlanCase::Odd if d % 2 == 1 => FRAC_PI_2,
        PlanCase::Div4 if d % 4 == 0 => FRAC_PI_2 + PI / d as f64,
        PlanCase::TwoMod4Hamiltonian if d % 4 == 2 => FRAC_PI_2 + PI / d as f64,
        PlanCase::TwoMod4Bipartite if d % 4 == 2 => FRAC_PI_2,
        c => return Err(CircularError::InfeasibleCase(format!("{c:?} with degree {d}"))),
    };
    let offsets: Vec<f64> = (0..d)
        .map(|k| normalize_angle(base_offset + TAU * k as f64 / d as f64))
        .collect();
    let find = |target: f64| offsets.iter().position(|&o| same_angle(o, target));
    let mut used = vec![false; d];
    let mut factors = vec![];
    match plan.case {
        PlanCase::Odd => {
            let k = find(FRAC_PI_2).expect("inward slot present");
            used[k] = true;
            factors.push(FactorSlots {
                forward: FRAC_PI_2,
                backward: FRAC_PI_2,
                alternating: false,
                meeting_angle: FRAC_PI_2,
                side: Some(SideTag::Inside),
            });
        }
        PlanCase::TwoMod4Hamiltonian => {
            let (a, b) = (find(0.0), find(PI));
            let (Some(a), Some(b)) = (a, b) else {
                return Err(CircularError::InfeasibleCase("tangential slots missing".into()));
            };
            used[a] = true;
            used[b] = true;
            factors.push(FactorSlots {
                forward: 0.0,
                backward: PI,
                alternating: false,
                meeting_angle: 0.0,
                side: Some(SideTag::OnCircle),
            });
        }
        PlanCase::TwoMod4Bipartite => {
            let (a, b) = (find(FRAC_PI_2), find(-FRAC_PI_2));
            let (Some(a), Some(b)) = (a, b) else {
                return Err(CircularError::InfeasibleCase("perpendicular slots missing".into()));
            };
            used[a] = true;
            used[b] = true;
            factors.push(FactorSlots {
                forward: FRAC_PI_2,
                backward: -FRAC_PI_2,
                alternating: true,
                meeting_angle: FRAC_PI_2,
                side: Some(SideTag::Both),
            });
        }
        PlanCase::Div4 => {}
    }
    // Remaining slots form mirror pairs {θ, π - θ}.
    let mut inside = vec![];
    let mut outside = vec![];
    for k in 0..d {
        if used[k] {
            continue;
        }
        let partner = find(PI - offsets[k])
            .filter(|&j| j != k && !used[j])
            .ok_or_else(|| CircularError::InfeasibleCase(format!("slot {k} has no mirror partner")))?;
        used[k] = true;
        used[partner] = true;
        // The member pointing counter-clockwise leads.
        let forward = if offsets[k].cos() > 0.0 { offsets[k] } else { offsets[partner] };
        let slots = pair_slots(forward);
        if slots.side == Some(SideTag::Inside) {
            inside.push(slots);
        } else {
            outside.push(slots);
        }
    }
    // Alternate inside and outside factors.
    let (mut i, mut o) = (inside.into_iter(), outside.into_iter());
    loop {
        match (i.next(), o.next()) {
            (None, None) => break,
            (a, b) => factors.extend(a.into_iter().chain(b)),
        }
    }
    if factors.len() != plan.factors.len() {
        return Err(CircularError::InfeasibleCase(format!(
            "{} slot groups for {} factors",
            factors.len(),
            plan.factors.len()
        )));
    }
    let twist = offsets
        .iter()
        .map(|&o| wrap_pi(o - FRAC_PI_2).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(SlotAssignment {
        degree: d,
        base_offset,
        factors,
        twist,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircularOptions {
    pub seed: u64,
    pub max_retries: usize,
    /// Largest angular perturbation of a vertex, in radians.
    pub jitter: f64,
    pub clearance: f64,
    /// Placement order around the circle; index order when absent. Ignored
    /// in the Hamiltonian case, which places vertices along the cycle.
    pub order: Option<Vec<usize>>,
}

impl Default for CircularOptions {
    fn default() -> Self {
        CircularOptions {
            seed: 0,
            max_retries: 64,
            jitter: 1e-3,
            clearance: 1e-6,
            order: None,
        }
    }
}

/// Arcs sweeping so close to a full turn that their bulge exceeds this
/// count as degenerate.
const MAX_BULGE: f64 = 1e6;

/// Edge drawing instructions: (edge id, tail, head, tail offset, head offset, factor).
type Plan = Vec<(usize, usize, usize, f64, f64, usize)>;

fn edge_plan(g: &RotationGraph, plan: &DecompositionPlan, slots: &SlotAssignment) -> Plan {
    let mut out = vec![];
    for (fi, (f, s)) in plan.factors.iter().zip(&slots.factors).enumerate() {
        match f.kind {
            FactorKind::OneRegular => {
                for &e in &f.edges {
                    let ed = g.edge(e);
                    out.push((e, ed.u, ed.v, s.forward, s.backward, fi));
                }
            }
            FactorKind::TwoRegular => {
                for c in &f.cycles {
                    for i in 0..c.len() {
                        let (a, b) = (c[i], c[(i + 1) % c.len()]);
                        let e = g.edge_id(a, b).expect("cycle edge");
                        let (ta, tb) = if s.alternating {
                            let o = if i % 2 == 0 { s.forward } else { s.backward };
                            (o, o)
                        } else {
                            (s.forward, s.backward)
                        };
                        out.push((e, a, b, ta, tb, fi));
                    }
                }
            }
        }
    }
    out.sort_by_key(|x| x.0);
    out
}

fn try_layout(
    g: &RotationGraph,
    slots: &SlotAssignment,
    edges: &Plan,
    angles: &[f64],
    clearance: f64,
) -> Option<Drawing> {
    let host = Circle::unit();
    let pos: Vec<Point> = angles.iter().map(|&a| host.point_at(a)).collect();
    let tangent = |v: usize| Direction::new(angles[v] + FRAC_PI_2);
    let mut d = Drawing::for_graph(g);
    d.positions = pos.clone();
    d.circles = vec![host];
    for &(_, tail, head, off, _, fi) in edges {
        let arc = arc_from_tangent(pos[tail], tangent(tail).rotated(off), pos[head]).ok()?;
        if arc.bulge().abs() > MAX_BULGE {
            return None;
        }
        d.edges.push(DrawnEdge {
            u: tail,
            v: head,
            arc,
            group: Some(fi),
        });
    }
    d.frames = (0..g.n())
        .map(|v| {
            Some(Frame {
                base: tangent(v).rotated(slots.base_offset),
                degree: slots.degree,
            })
        })
        .collect();
    let (viol, detached) = verify::incidence(&d, clearance);
    let dev = verify::angular_deviations(&d).into_iter().fold(0.0, f64::max);
    (viol.is_empty() && detached.is_empty() && dev < 1e-9).then_some(d)
}

pub fn draw_circular(
    g: &RotationGraph,
    plan: &DecompositionPlan,
    opts: &CircularOptions,
) -> Result<Drawing, CircularError> {
    audit_plan(g, plan).map_err(CircularError::InvalidPlan)?;
    let slots = assign_slots(plan.degree, plan)?;
    let edges = edge_plan(g, plan, &slots);
    let n = g.n();
    let order: Vec<usize> = match (plan.case, &opts.order) {
        (PlanCase::TwoMod4Hamiltonian, _) => plan.factors[0].cycles[0].clone(),
        (_, Some(o)) => {
            let mut s = o.clone();
            s.sort_unstable();
            if s != (0..n).collect::<Vec<_>>() {
                return Err(CircularError::InvalidPlan("order is not a permutation".into()));
            }
            o.clone()
        }
        _ => (0..n).collect(),
    };
    let mut base = vec![0.0; n];
    for (i, &v) in order.iter().enumerate() {
        base[v] = FRAC_PI_2 + TAU * i as f64 / n as f64;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..=opts.max_retries {
        let angles: Vec<f64> = if attempt == 0 {
            base.clone()
        } else {
            base.iter()
                .map(|&a| a + rng.gen_range(-opts.jitter..=opts.jitter))
                .collect()
        };
        if let Some(d) = try_layout(g, &slots, &edges, &angles, opts.clearance) {
            return Ok(d);
        }
    }
    Err(CircularError::PerturbationExhausted(opts.max_retries))
}

/// Plan and draw in one step.
pub fn circular_drawing(g: &RotationGraph, budget: u64, opts: &CircularOptions) -> Result<Drawing, CircularError> {
    let plan = crate::decompose::circular_plan(g, budget)?;
    draw_circular(g, &plan, opts)
}
