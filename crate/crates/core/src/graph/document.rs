use super::{GraphError, RotationGraph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Vertex identifier as written in a document: an integer or a string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexName {
    Int(i64),
    Str(String),
}

impl fmt::Display for VertexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexName::Int(i) => write!(f, "{i}"),
            VertexName::Str(s) => f.write_str(s),
        }
    }
}

impl From<&str> for VertexName {
    fn from(s: &str) -> Self {
        match s.parse::<i64>() {
            Ok(i) if i.to_string() == s => VertexName::Int(i),
            _ => VertexName::Str(s.to_string()),
        }
    }
}

/// On-disk graph format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<VertexName>,
    pub edges: Vec<[VertexName; 2]>,
    /// Counter-clockwise neighbor order per vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<VertexName>>>,
    /// For Halin graphs: which edges form the tree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree_edges: Option<Vec<[VertexName; 2]>>,
    /// For Halin graphs: the root of the tree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<VertexName>,
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    fn index(&self) -> Result<BTreeMap<String, usize>, GraphError> {
        let mut idx = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if idx.insert(v.to_string(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.to_string()));
            }
        }
        Ok(idx)
    }

    fn lookup(idx: &BTreeMap<String, usize>, v: &VertexName) -> Result<usize, GraphError> {
        idx.get(&v.to_string())
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))
    }

    pub fn to_graph(&self) -> Result<RotationGraph, GraphError> {
        let idx = self.index()?;
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok((Self::lookup(&idx, a)?, Self::lookup(&idx, b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        let names: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let rotation = match &self.rotation {
            None => None,
            Some(map) => {
                let mut rot = vec![None; names.len()];
                for (k, list) in map {
                    let v = Self::lookup(&idx, &VertexName::from(k.as_str()))?;
                    let ids = list
                        .iter()
                        .map(|w| Self::lookup(&idx, w))
                        .collect::<Result<Vec<_>, _>>()?;
                    rot[v] = Some(ids);
                }
                let mut full = Vec::with_capacity(names.len());
                for (v, r) in rot.into_iter().enumerate() {
                    match r {
                        Some(r) => full.push(r),
                        // Isolated vertices may be omitted.
                        None => full.push(
                            edges
                                .iter()
                                .filter_map(|&(a, b)| {
                                    (a == v).then_some(b).or((b == v).then_some(a))
                                })
                                .collect(),
                        ),
                    }
                }
                Some(full)
            }
        };
        RotationGraph::with_names(names, &edges, rotation)
    }

    /// Tree edges as vertex-index pairs, if present.
    pub fn tree_edge_ids(&self) -> Result<Option<Vec<(usize, usize)>>, GraphError> {
        let idx = self.index()?;
        self.tree_edges
            .as_ref()
            .map(|list| {
                list.iter()
                    .map(|[a, b]| Ok((Self::lookup(&idx, a)?, Self::lookup(&idx, b)?)))
                    .collect()
            })
            .transpose()
    }

    pub fn root_id(&self) -> Result<Option<usize>, GraphError> {
        let idx = self.index()?;
        self.root.as_ref().map(|r| Self::lookup(&idx, r)).transpose()
    }

    pub fn from_graph(g: &RotationGraph, with_rotation: bool) -> Self {
        let name = |v: usize| VertexName::from(g.name(v));
        GraphDocument {
            name: None,
            vertices: (0..g.n()).map(name).collect(),
            edges: g.edges().iter().map(|e| [name(e.u), name(e.v)]).collect(),
            rotation: with_rotation.then(|| {
                (0..g.n())
                    .map(|v| {
                        (
                            g.name(v).to_string(),
                            g.rotation(v).iter().map(|&w| name(w)).collect(),
                        )
                    })
                    .collect()
            }),
            tree_edges: None,
            root: None,
        }
    }
}

/// Parse and validate a graph document.
pub fn load_graph(text: &str) -> Result<RotationGraph, GraphError> {
    GraphDocument::parse(text)?.to_graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_document() {
        let g = load_graph(r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]]}"#).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(!g.rotation_specified());
    }

    #[test]
    fn non_neighbor_in_rotation() {
        let e = load_graph(
            r#"{"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","a"],["c","d"]],
               "rotation":{"a":["b","d"]}}"#,
        );
        assert!(matches!(e, Err(GraphError::InvalidRotation { .. })));
    }

    #[test]
    fn parse_error_has_line() {
        match load_graph("{\n\"vertices\": [0,\n}") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip_keeps_rotation() {
        let g = load_graph(
            r#"{"vertices":["x",1,2],"edges":[["x",1],[1,2],[2,"x"]],"rotation":{"x":[2,1]}}"#,
        )
        .unwrap();
        assert_eq!(g.rotation(0), &[2, 1]);
        let doc = GraphDocument::from_graph(&g, true);
        let h = GraphDocument::parse(&doc.to_json()).unwrap().to_graph().unwrap();
        assert_eq!(g, h);
    }
}
