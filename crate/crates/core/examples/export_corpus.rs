//! Regenerate the graph documents under `corpus/` from the built-in
//! generators. Spirograph specs there are written by hand.
//!
//!     cargo run --example export_corpus -- corpus

use lombardi::graph::families::*;
use lombardi::graph::{GraphDocument, RotationGraph, VertexName};
use lombardi::halin::{random_halin_tree, seven_node_tree, RootedTree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::Path;

fn doc(name: &str, g: &RotationGraph) -> GraphDocument {
    GraphDocument {
        name: Some(name.into()),
        ..GraphDocument::from_graph(g, true)
    }
}

fn halin_doc(name: &str, tree: &RotationGraph) -> GraphDocument {
    let t = RootedTree::from_tree(tree, None).unwrap();
    let g = t.halin_graph().unwrap();
    let v = |i: usize| VertexName::from(g.name(i));
    GraphDocument {
        tree_edges: Some(t.tree_edges().into_iter().map(|(a, b)| [v(a), v(b)]).collect()),
        root: Some(v(t.root())),
        ..doc(name, &g)
    }
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "corpus".into());
    let dir = Path::new(&dir);
    std::fs::create_dir_all(dir).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut docs = vec![
        doc("wagner", &wagner()),
        doc("k44", &complete_bipartite(4, 4)),
        doc("paley13", &paley(13)),
        doc("petersen", &petersen()),
        doc("nauru", &nauru()),
        doc("cube", &cube()),
        doc("heawood", &heawood()),
        doc("k5", &complete(5)),
        doc("octahedron", &octahedron()),
        doc("no-pm-cubic", &no_perfect_matching_cubic()),
        doc("g7", &g7()),
        doc("fan6", &fan(6)),
        doc("k4", &complete(4)),
        doc("two-degenerate-20", &random_two_degenerate(20, &mut rng)),
        doc("three-degenerate-12", &random_three_degenerate(12, &mut rng)),
        doc("nested3", &nested_triangles(3)),
        doc("tree7", &seven_node_tree()),
        doc("star3", &star(3)),
        halin_doc("halin-k4", &star(3)),
        halin_doc("halin-20", &random_halin_tree(20, &mut rng)),
    ];
    for d in &mut docs {
        let name = d.name.clone().unwrap();
        std::fs::write(dir.join(format!("{name}.json")), d.to_json() + "\n").unwrap();
    }
    println!("wrote {} graphs to {}", docs.len(), dir.display());
}
