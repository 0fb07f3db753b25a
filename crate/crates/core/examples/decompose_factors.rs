//! Splitting regular graphs into matchings and 2-factors.

use lombardi::decompose::*;
use lombardi::graph::families::*;

fn main() {
    let g = paley(13);
    let factors = two_factorize(&g).unwrap();
    for f in &factors {
        let lens: Vec<usize> = f.cycles.iter().map(Vec::len).collect();
        println!("paley13 2-factor: cycles {lens:?}, audit {:?}", audit_factor(&g, f));
    }

    let k44 = complete_bipartite(4, 4);
    let colors = bipartite_edge_coloring(&k44).unwrap();
    println!("k44: {} perfect matchings of sizes {:?}", colors.len(), colors.iter().map(Vec::len).collect::<Vec<_>>());

    let (a, b) = euler_halving(&complete(5)).unwrap();
    println!("k5 halves: {} + {} edges", a.len(), b.len());

    match perfect_matching(&no_perfect_matching_cubic()) {
        Ok(m) => println!("unexpected matching {m:?}"),
        Err(w) => println!("Tutte witness holds: {}", w.certifies(&no_perfect_matching_cubic())),
    }
    if let Search::Found(c) = hamiltonian_cycle(&wagner(), DEFAULT_BUDGET) {
        println!("wagner Hamiltonian cycle {c:?}");
    }
}
