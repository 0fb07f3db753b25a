//! Simple undirected graphs with a rotation system.

mod document;
pub mod families;

pub use document::{load_graph, GraphDocument, VertexName};

use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid rotation at {vertex}: {reason}")]
    InvalidRotation { vertex: String, reason: String },
    #[error("repeated edge {0}-{1}")]
    MultiEdge(String, String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
}

/// Undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A graph whose neighbor lists are the counter-clockwise rotation at each
/// vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationGraph {
    names: Vec<String>,
    rotation: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    edge_index: BTreeMap<Edge, usize>,
    rotation_specified: bool,
}

impl RotationGraph {
    /// Graph on `0..n` whose rotation is the order in which edges appear.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::build(names, edges, None)
    }

    pub fn with_names(
        names: Vec<String>,
        edges: &[(usize, usize)],
        rotation: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, GraphError> {
        Self::build(names, edges, rotation)
    }

    fn build(
        names: Vec<String>,
        edge_list: &[(usize, usize)],
        rotation: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, GraphError> {
        let n = names.len();
        let mut seen = BTreeSet::new();
        for nm in &names {
            if !seen.insert(nm.as_str()) {
                return Err(GraphError::DuplicateVertex(nm.clone()));
            }
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut edge_index = BTreeMap::new();
        for &(a, b) in edge_list {
            if a >= n {
                return Err(GraphError::UnknownVertex(a.to_string()));
            }
            if b >= n {
                return Err(GraphError::UnknownVertex(b.to_string()));
            }
            if a == b {
                return Err(GraphError::SelfLoop(names[a].clone()));
            }
            let e = Edge::new(a, b);
            if edge_index.insert(e, edges.len()).is_some() {
                return Err(GraphError::MultiEdge(names[e.u].clone(), names[e.v].clone()));
            }
            edges.push(e);
            adj[a].push(b);
            adj[b].push(a);
        }
        let rotation_specified = rotation.is_some();
        let rotation = match rotation {
            None => adj,
            Some(rot) => {
                if rot.len() != n {
                    return Err(GraphError::InvalidRotation {
                        vertex: "*".into(),
                        reason: format!("expected {n} rotation lists, got {}", rot.len()),
                    });
                }
                for (v, (r, a)) in rot.iter().zip(&adj).enumerate() {
                    let want: BTreeSet<usize> = a.iter().copied().collect();
                    let got: BTreeSet<usize> = r.iter().copied().collect();
                    if r.len() != a.len() || want != got {
                        return Err(GraphError::InvalidRotation {
                            vertex: names[v].clone(),
                            reason: "not a permutation of the neighbors".into(),
                        });
                    }
                }
                rot
            }
        };
        Ok(RotationGraph {
            names,
            rotation,
            edges,
            edge_index,
            rotation_specified,
        })
    }

    /// Replace the rotation system.
    pub fn with_rotation(&self, rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        Self::build(self.names.clone(), &edges, Some(rotation))
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Neighbors of `v` in counter-clockwise rotation order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotation_specified(&self) -> bool {
        self.rotation_specified
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&Edge::new(a, b)).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index.contains_key(&Edge::new(a, b))
    }

    /// Position of `w` in the rotation at `v`.
    pub fn rotation_index(&self, v: usize, w: usize) -> Option<usize> {
        self.rotation[v].iter().position(|&x| x == w)
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sorted neighbor set.
    pub fn neighbors_sorted(&self, v: usize) -> Vec<usize> {
        let mut out = self.rotation[v].clone();
        out.sort_unstable();
        out
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.rotation.first().map_or(0, |r| r.len());
        self.rotation.iter().all(|r| r.len() == d).then_some(d)
    }

    /// Subgraph on the same vertices with only the listed edges.
    pub fn spanning_subgraph(&self, edge_ids: &[usize]) -> RotationGraph {
        let keep: BTreeSet<Edge> = edge_ids.iter().map(|&i| self.edges[i]).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| keep.contains(e))
            .map(|e| (e.u, e.v))
            .collect();
        let rot: Vec<Vec<usize>> = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, r)| {
                r.iter()
                    .copied()
                    .filter(|&w| keep.contains(&Edge::new(v, w)))
                    .collect()
            })
            .collect();
        Self::build(self.names.clone(), &edges, Some(rot)).expect("subgraph of a valid graph")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &self.rotation[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// Elimination order repeatedly removing a vertex of minimum residual
/// degree (lowest id on ties), and the degeneracy it certifies.
pub fn degeneracy_order(g: &RotationGraph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !gone[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        d = d.max(deg[v]);
        gone[v] = true;
        order.push(v);
        for &w in g.rotation(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    (order, d)
}

/// Structural facts used to pick a layout engine.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphProfile {
    pub n: usize,
    pub m: usize,
    pub regular_degree: Option<usize>,
    /// A proper 2-coloring, when one exists.
    pub bipartition: Option<Vec<u8>>,
    pub components: Vec<Vec<usize>>,
    pub bridgeless: bool,
    pub degeneracy: usize,
    pub elimination_order: Vec<usize>,
}

impl GraphProfile {
    pub fn bipartite(&self) -> bool {
        self.bipartition.is_some()
    }
}

pub fn classify(g: &RotationGraph) -> GraphProfile {
    let (elimination_order, degeneracy) = degeneracy_order(g);
    GraphProfile {
        n: g.n(),
        m: g.m(),
        regular_degree: g.regular_degree(),
        bipartition: two_coloring(g),
        components: g.components(),
        bridgeless: bridges(g).is_empty(),
        degeneracy,
        elimination_order,
    }
}

pub fn two_coloring(g: &RotationGraph) -> Option<Vec<u8>> {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.rotation(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Bridges, found with low-link values over an iterative DFS.
pub fn bridges(g: &RotationGraph) -> Vec<Edge> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut out = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        // (vertex, parent edge id, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(s, usize::MAX, 0)];
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
            if *i < g.degree(v) {
                let w = g.rotation(v)[*i];
                *i += 1;
                let eid = g.edge_id(v, w).expect("edge exists");
                if eid == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, eid, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.push(Edge::new(p, v));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn triangle() {
        let g = cycle(3);
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g.regular_degree(), Some(2));
    }

    #[test]
    fn bad_rotation_rejected() {
        let g = cycle(4);
        let mut rot: Vec<Vec<usize>> = (0..4).map(|v| g.rotation(v).to_vec()).collect();
        rot[0] = vec![1, 2];
        assert!(matches!(
            g.with_rotation(rot),
            Err(GraphError::InvalidRotation { .. })
        ));
    }

    #[test]
    fn multi_edge_rejected() {
        assert!(matches!(
            RotationGraph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::MultiEdge(..))
        ));
    }

    #[test]
    fn tree_is_one_degenerate() {
        assert_eq!(degeneracy_order(&star(5)).1, 1);
        assert_eq!(degeneracy_order(&octahedron()).1, 4);
        assert_eq!(degeneracy_order(&fan(6)).1, 2);
    }

    #[test]
    fn profiles() {
        let p = classify(&complete_bipartite(4, 4));
        assert_eq!(p.regular_degree, Some(4));
        assert!(p.bipartite() && p.bridgeless);
        let p = classify(&paley(13));
        assert_eq!(p.regular_degree, Some(6));
        assert!(!p.bipartite());
        let p = classify(&no_perfect_matching_cubic());
        assert_eq!(p.regular_degree, Some(3));
        assert!(!p.bridgeless);
        assert_eq!(p.n, 16);
    }

    #[test]
    fn petersen_counts() {
        let g = petersen();
        assert_eq!((g.n(), g.m(), g.regular_degree()), (10, 15, Some(3)));
    }
}
