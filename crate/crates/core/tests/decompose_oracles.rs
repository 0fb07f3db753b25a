//! Decomposition routines against brute force and independent audits.

mod common;

use common::*;
use lombardi::decompose::*;
use lombardi::graph::families::random_graph;
use lombardi::graph::{degeneracy_order, two_coloring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn perfect_matching_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let g = random_graph(n, rng.gen_range(0.1..0.7), &mut rng);
        let expected = has_perfect_matching_exhaustive(&g);
        match perfect_matching(&g) {
            Ok(m) => {
                assert!(expected, "matching found where none exists");
                assert_eq!(m.len() * 2, n);
                assert!(is_regular_part(&g, &m, 1));
                yes += 1;
            }
            Err(w) => {
                assert!(!expected, "missed a perfect matching on {g:?}");
                assert!(w.certifies(&g));
                no += 1;
            }
        }
    }
    assert!(yes > 20 && no > 20, "{yes} / {no}");
}

#[test]
fn degeneracy_matches_subgraph_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let n = rng.gen_range(1..=11);
        let g = random_graph(n, rng.gen_range(0.1..0.8), &mut rng);
        let (order, d) = degeneracy_order(&g);
        assert_eq!(d, degeneracy_exhaustive(&g));
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..n).collect::<Vec<_>>());
    }
}

#[test]
fn corpus_decompositions_pass_audits() {
    let mut audited = 0;
    for (name, _, g) in corpus_graphs() {
        let Some(d) = g.regular_degree() else { continue };
        if d % 2 == 0 && d > 0 {
            let factors = two_factorize(&g).unwrap();
            let parts: Vec<Vec<usize>> = factors.iter().map(|f| f.edges.clone()).collect();
            assert_eq!(parts.len(), d / 2, "{name}");
            assert!(is_edge_partition(&g, &parts), "{name}");
            assert!(parts.iter().all(|p| is_regular_part(&g, p, 2)), "{name}");
            audited += 1;
        }
        if d > 0 && two_coloring(&g).is_some() {
            let colors = bipartite_edge_coloring(&g).unwrap();
            assert_eq!(colors.len(), d, "{name}");
            assert!(is_edge_partition(&g, &colors), "{name}");
            assert!(colors.iter().all(|p| is_regular_part(&g, p, 1)), "{name}");
            audited += 1;
        }
        if d % 2 == 0 && d > 0 {
            match euler_halving(&g) {
                Ok((a, b)) => {
                    let parts = [a, b];
                    assert!(is_edge_partition(&g, &parts), "{name}");
                    assert!(parts.iter().all(|p| is_regular_part(&g, p, d / 2)), "{name}");
                    audited += 1;
                }
                Err(DecomposeError::OddComponent) => {
                    let odd = g.components().iter().any(|c| c.len() * d / 2 % 2 == 1);
                    assert!(odd, "{name}");
                }
                Err(e) => panic!("{name}: {e}"),
            }
        }
        if let Ok(plan) = circular_plan(&g, DEFAULT_BUDGET) {
            let parts: Vec<Vec<usize>> = plan.factors.iter().map(|f| f.edges.clone()).collect();
            assert!(is_edge_partition(&g, &parts), "{name}");
            audited += 1;
        }
    }
    assert!(audited >= 15, "only {audited} audits");
}
