//! Edge decompositions of regular graphs into 1- and 2-regular factors.

use crate::graph::{Edge, RotationGraph};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError {
    #[error("vertex {0} has odd degree")]
    OddDegree(usize),
    #[error("a component has an odd number of edges and cannot be halved")]
    OddComponent,
    #[error("graph is not regular of even degree")]
    NotEvenRegular,
    #[error("graph is not regular and bipartite")]
    NotRegularBipartite,
    #[error("graph is not regular")]
    NotRegular,
    #[error("no perfect matching: removing {} vertices leaves {} odd components", .0.removed.len(), .0.odd_components.len())]
    NoPerfectMatching(TutteWitness),
    #[error("no Hamiltonian cycle and no 2-factor with only even cycles")]
    NoHamiltonianOrEvenFactor,
    #[error("search budget exhausted")]
    SearchBudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    OneRegular,
    TwoRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorTag {
    Plain,
    OnCircleHamiltonian,
    PerpendicularBipartite,
    PerpendicularMatching,
}

/// A spanning 1- or 2-regular subgraph, given by edge ids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Factor {
    pub edges: Vec<usize>,
    pub kind: FactorKind,
    pub tag: FactorTag,
    /// For 2-regular factors: each cycle as a vertex sequence, starting at
    /// its lowest vertex.
    pub cycles: Vec<Vec<usize>>,
}

impl Factor {
    pub fn matching(mut edges: Vec<usize>, tag: FactorTag) -> Self {
        edges.sort_unstable();
        Factor {
            edges,
            kind: FactorKind::OneRegular,
            tag,
            cycles: vec![],
        }
    }

    pub fn two_regular(g: &RotationGraph, mut edges: Vec<usize>, tag: FactorTag) -> Self {
        edges.sort_unstable();
        let cycles = cycles_of(g, &edges);
        Factor {
            edges,
            kind: FactorKind::TwoRegular,
            tag,
            cycles,
        }
    }

    /// 2-regular factor whose single cycle is traversed in the given order.
    pub fn hamiltonian(g: &RotationGraph, order: Vec<usize>) -> Self {
        let n = order.len();
        let mut edges: Vec<usize> = (0..n)
            .map(|i| g.edge_id(order[i], order[(i + 1) % n]).expect("cycle edge"))
            .collect();
        edges.sort_unstable();
        Factor {
            edges,
            kind: FactorKind::TwoRegular,
            tag: FactorTag::OnCircleHamiltonian,
            cycles: vec![order],
        }
    }
}

fn cycles_of(g: &RotationGraph, edges: &[usize]) -> Vec<Vec<usize>> {
    let mut nb: Vec<Vec<usize>> = vec![vec![]; g.n()];
    for &e in edges {
        let Edge { u, v } = g.edge(e);
        nb[u].push(v);
        nb[v].push(u);
    }
    for l in &mut nb {
        l.sort_unstable();
    }
    let mut seen = vec![false; g.n()];
    let mut out = vec![];
    for s in 0..g.n() {
        if seen[s] || nb[s].len() != 2 {
            continue;
        }
        let mut cyc = vec![s];
        seen[s] = true;
        let (mut prev, mut cur) = (s, nb[s][0]);
        while cur != s {
            seen[cur] = true;
            cyc.push(cur);
            let next = if nb[cur][0] == prev { nb[cur][1] } else { nb[cur][0] };
            prev = cur;
            cur = next;
        }
        out.push(cyc);
    }
    out
}

/// Check that a factor is spanning and has its declared regularity.
pub fn audit_factor(g: &RotationGraph, f: &Factor) -> Result<(), String> {
    let want = match f.kind {
        FactorKind::OneRegular => 1,
        FactorKind::TwoRegular => 2,
    };
    let mut deg = vec![0usize; g.n()];
    let mut seen = BTreeSet::new();
    for &e in &f.edges {
        if e >= g.m() || !seen.insert(e) {
            return Err(format!("bad or repeated edge id {e}"));
        }
        let Edge { u, v } = g.edge(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    match deg.iter().position(|&d| d != want) {
        Some(v) => Err(format!("vertex {v} has degree {} in factor", deg[v])),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanCase {
    Div4,
    Odd,
    TwoMod4Hamiltonian,
    TwoMod4Bipartite,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionPlan {
    pub degree: usize,
    pub case: PlanCase,
    /// The special factor (if the case has one) comes first.
    pub factors: Vec<Factor>,
}

/// Check that the factors partition the edges and the case conditions hold.
pub fn audit_plan(g: &RotationGraph, plan: &DecompositionPlan) -> Result<(), String> {
    let mut all = vec![0usize; g.m()];
    for f in &plan.factors {
        audit_factor(g, f)?;
        for &e in &f.edges {
            all[e] += 1;
        }
    }
    if let Some(e) = all.iter().position(|&c| c != 1) {
        return Err(format!("edge {e} covered {} times", all[e]));
    }
    let d = plan.degree;
    let first = plan.factors.first();
    let ok = match plan.case {
        PlanCase::Div4 => d % 4 == 0,
        PlanCase::Odd => {
            d % 2 == 1 && first.is_some_and(|f| f.kind == FactorKind::OneRegular)
        }
        PlanCase::TwoMod4Hamiltonian => {
            d % 4 == 2 && first.is_some_and(|f| f.cycles.len() == 1)
        }
        PlanCase::TwoMod4Bipartite => {
            d % 4 == 2
                && first.is_some_and(|f| f.cycles.iter().all(|c| c.len() % 2 == 0))
        }
    };
    if !ok {
        return Err(format!("case {:?} conditions fail", plan.case));
    }
    let rest = if matches!(plan.case, PlanCase::Div4) { 0 } else { 1 };
    if plan.factors[rest..]
        .iter()
        .any(|f| f.kind != FactorKind::TwoRegular)
    {
        return Err("non-special factors must be 2-regular".into());
    }
    Ok(())
}

/// Euler circuit of one component as a sequence of (edge id, from, to),
/// always leaving a vertex by its lowest unused edge.
fn euler_circuit(adj: &[Vec<(usize, usize)>], start: usize, used: &mut [bool]) -> Vec<(usize, usize, usize)> {
    let mut ptr = vec![0usize; adj.len()];
    let mut stack: Vec<(usize, Option<(usize, usize)>)> = vec![(start, None)];
    let mut out = vec![];
    while let Some(&(v, _)) = stack.last() {
        let mut advanced = false;
        while ptr[v] < adj[v].len() {
            let (w, e) = adj[v][ptr[v]];
            ptr[v] += 1;
            if !used[e] {
                used[e] = true;
                stack.push((w, Some((e, v))));
                advanced = true;
                break;
            }
        }
        if !advanced {
            let (w, arc) = stack.pop().expect("nonempty");
            if let Some((e, from)) = arc {
                out.push((e, from, w));
            }
        }
    }
    out.reverse();
    out
}

fn sorted_adj(g: &RotationGraph) -> Vec<Vec<(usize, usize)>> {
    (0..g.n())
        .map(|v| {
            g.neighbors_sorted(v)
                .into_iter()
                .map(|w| (w, g.edge_id(v, w).expect("edge")))
                .collect()
        })
        .collect()
}

/// Euler circuits covering every edge, one per nontrivial component.
fn euler_circuits(g: &RotationGraph) -> Result<Vec<Vec<(usize, usize, usize)>>, DecomposeError> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(DecomposeError::OddDegree(v));
    }
    let adj = sorted_adj(g);
    let mut used = vec![false; g.m()];
    let mut out = vec![];
    for s in 0..g.n() {
        if adj[s].iter().any(|&(_, e)| !used[e]) {
            out.push(euler_circuit(&adj, s, &mut used));
        }
    }
    Ok(out)
}

/// Split the edges by alternating along Euler circuits. Every vertex gets
/// half its degree in each part.
pub fn euler_halving(g: &RotationGraph) -> Result<(Vec<usize>, Vec<usize>), DecomposeError> {
    let (mut a, mut b) = (vec![], vec![]);
    for circ in euler_circuits(g)? {
        if circ.len() % 2 == 1 {
            return Err(DecomposeError::OddComponent);
        }
        for (i, &(e, _, _)) in circ.iter().enumerate() {
            if i % 2 == 0 {
                a.push(e);
            } else {
                b.push(e);
            }
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    Ok((a, b))
}

/// Split a `2k`-regular graph into `k` 2-factors.
pub fn two_factorize(g: &RotationGraph) -> Result<Vec<Factor>, DecomposeError> {
    let d = g.regular_degree().ok_or(DecomposeError::NotEvenRegular)?;
    if d % 2 == 1 {
        return Err(DecomposeError::NotEvenRegular);
    }
    let k = d / 2;
    if k == 0 {
        return Ok(vec![]);
    }
    // Orient along Euler circuits: every vertex gets in- and out-degree k.
    // Perfect matchings of the out/in bipartite graph are then 2-factors.
    let n = g.n();
    let mut out_arcs: Vec<Vec<(usize, usize)>> = vec![vec![]; n];
    for circ in euler_circuits(g)? {
        for (e, from, to) in circ {
            out_arcs[from].push((to, e));
        }
    }
    for l in &mut out_arcs {
        l.sort_unstable();
    }
    let matchings = regular_bipartite_matchings(&out_arcs, n, k);
    Ok(matchings
        .into_iter()
        .map(|edges| Factor::two_regular(g, edges, FactorTag::Plain))
        .collect())
}

/// Decompose a `k`-regular bipartite graph, given by left adjacency lists of
/// (right vertex, edge id), into `k` perfect matchings.
fn regular_bipartite_matchings(left: &[Vec<(usize, usize)>], right_n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut alive: Vec<Vec<(usize, usize)>> = left.to_vec();
    let mut out = vec![];
    for _ in 0..k {
        let m = bipartite_perfect(&alive, right_n).expect("regular bipartite graphs have perfect matchings");
        let chosen: BTreeSet<usize> = m.iter().copied().collect();
        for l in &mut alive {
            l.retain(|(_, e)| !chosen.contains(e));
        }
        let mut m = m;
        m.sort_unstable();
        out.push(m);
    }
    out
}

/// Kuhn's augmenting-path matching; returns the edge ids of a perfect
/// matching of the left side, if any.
fn bipartite_perfect(left: &[Vec<(usize, usize)>], right_n: usize) -> Option<Vec<usize>> {
    let mut match_right: Vec<Option<(usize, usize)>> = vec![None; right_n];
    fn try_kuhn(
        v: usize,
        left: &[Vec<(usize, usize)>],
        seen: &mut [bool],
        match_right: &mut [Option<(usize, usize)>],
    ) -> bool {
        for &(w, e) in &left[v] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if match_right[w].is_none_or(|(u, _)| try_kuhn(u, left, seen, match_right)) {
                match_right[w] = Some((v, e));
                return true;
            }
        }
        false
    }
    for v in 0..left.len() {
        let mut seen = vec![false; right_n];
        if !try_kuhn(v, left, &mut seen, &mut match_right) {
            return None;
        }
    }
    Some(match_right.into_iter().flatten().map(|(_, e)| e).collect())
}

/// Split a `d`-regular bipartite graph into `d` perfect matchings.
pub fn bipartite_edge_coloring(g: &RotationGraph) -> Result<Vec<Vec<usize>>, DecomposeError> {
    let d = g.regular_degree().ok_or(DecomposeError::NotRegularBipartite)?;
    let color = crate::graph::two_coloring(g).ok_or(DecomposeError::NotRegularBipartite)?;
    let left: Vec<usize> = (0..g.n()).filter(|&v| color[v] == 0).collect();
    let mut right_index = vec![usize::MAX; g.n()];
    let mut rn = 0;
    for v in 0..g.n() {
        if color[v] == 1 {
            right_index[v] = rn;
            rn += 1;
        }
    }
    if left.len() != rn {
        return Err(DecomposeError::NotRegularBipartite);
    }
    let adj: Vec<Vec<(usize, usize)>> = left
        .iter()
        .map(|&v| {
            g.neighbors_sorted(v)
                .into_iter()
                .map(|w| (right_index[w], g.edge_id(v, w).expect("edge")))
                .collect()
        })
        .collect();
    Ok(regular_bipartite_matchings(&adj, rn, d))
}

const NONE: usize = usize::MAX;

/// Maximum matching on adjacency lists by Edmonds' blossom algorithm.
/// Returns the mate of every vertex, `usize::MAX` when unmatched.
fn blossom(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut mate = vec![NONE; n];
    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        if let Some(end) = find_augmenting(adj, &mate, root) {
            let (parent, tip) = end;
            let mut v = tip;
            while v != NONE {
                let pv = parent[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
        }
    }
    mate
}

fn find_augmenting(adj: &[Vec<usize>], mate: &[usize], root: usize) -> Option<(Vec<usize>, usize)> {
    let n = adj.len();
    let mut used = vec![false; n];
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut queue = vec![root];
    used[root] = true;
    let mut head = 0;

    let lca = |mut a: usize, mut b: usize, base: &[usize], parent: &[usize]| -> usize {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    fn mark_path(
        mut v: usize,
        b: usize,
        mut child: usize,
        mate: &[usize],
        base: &[usize],
        parent: &mut [usize],
        in_blossom: &mut [bool],
    ) {
        while base[v] != b {
            in_blossom[base[v]] = true;
            in_blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                let cur = lca(v, to, &base, &parent);
                let mut in_blossom = vec![false; n];
                mark_path(v, cur, to, mate, &base, &mut parent, &mut in_blossom);
                mark_path(to, cur, v, mate, &base, &mut parent, &mut in_blossom);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur;
                        if !used[i] {
                            used[i] = true;
                            queue.push(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    return Some((parent, to));
                }
                used[mate[to]] = true;
                queue.push(mate[to]);
            }
        }
    }
    None
}

fn sorted_lists(g: &RotationGraph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors_sorted(v)).collect()
}

fn mates_to_edges(g: &RotationGraph, mate: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = (0..g.n())
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| g.edge_id(v, mate[v]).expect("matched pair is an edge"))
        .collect();
    out.sort_unstable();
    out
}

/// Edge ids of a maximum matching.
pub fn max_matching(g: &RotationGraph) -> Vec<usize> {
    mates_to_edges(g, &blossom(&sorted_lists(g)))
}

/// Tutte–Berge certificate: deleting `removed` leaves more odd components
/// than vertices deleted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TutteWitness {
    pub removed: Vec<usize>,
    pub odd_components: Vec<Vec<usize>>,
}

impl TutteWitness {
    /// Recheck the certificate against `g`.
    pub fn certifies(&self, g: &RotationGraph) -> bool {
        let removed: BTreeSet<usize> = self.removed.iter().copied().collect();
        let rest: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
        let mut comp = vec![NONE; g.n()];
        let mut odd = 0;
        for &s in &rest {
            if comp[s] != NONE {
                continue;
            }
            comp[s] = s;
            let mut stack = vec![s];
            let mut size = 0;
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in g.rotation(v) {
                    if comp[w] == NONE && !removed.contains(&w) {
                        comp[w] = s;
                        stack.push(w);
                    }
                }
            }
            odd += size % 2;
        }
        odd > self.removed.len()
    }
}

/// A perfect matching, or a certificate that none exists.
pub fn perfect_matching(g: &RotationGraph) -> Result<Vec<usize>, TutteWitness> {
    let adj = sorted_lists(g);
    let mate = blossom(&adj);
    let size = mate.iter().filter(|&&m| m != NONE).count() / 2;
    if 2 * size == g.n() {
        return Ok(mates_to_edges(g, &mate));
    }
    Err(tutte_witness(&adj, size))
}

/// Gallai–Edmonds: `D` holds the vertices missed by some maximum matching,
/// `A` their other neighbors; the odd components of `G - A` witness the
/// deficiency.
fn tutte_witness(adj: &[Vec<usize>], size: usize) -> TutteWitness {
    let n = adj.len();
    let mut avoidable = vec![false; n];
    for v in 0..n {
        let without: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                if u == v {
                    vec![]
                } else {
                    adj[u].iter().copied().filter(|&w| w != v).collect()
                }
            })
            .collect();
        let m = blossom(&without).iter().filter(|&&x| x != NONE).count() / 2;
        avoidable[v] = m == size;
    }
    let removed: Vec<usize> = (0..n)
        .filter(|&v| !avoidable[v] && adj[v].iter().any(|&w| avoidable[w]))
        .collect();
    let is_removed: BTreeSet<usize> = removed.iter().copied().collect();
    let mut comp_seen = vec![false; n];
    let mut odd_components = vec![];
    for s in 0..n {
        if comp_seen[s] || is_removed.contains(&s) {
            continue;
        }
        comp_seen[s] = true;
        let mut stack = vec![s];
        let mut members = vec![];
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in &adj[v] {
                if !comp_seen[w] && !is_removed.contains(&w) {
                    comp_seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if members.len() % 2 == 1 {
            members.sort_unstable();
            odd_components.push(members);
        }
    }
    TutteWitness {
        removed,
        odd_components,
    }
}

/// Outcome of a budgeted exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub enum Search<T> {
    Found(T),
    /// The whole search space was explored.
    Absent,
    /// The budget ran out first.
    Unknown,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct Budget {
    left: u64,
}

impl Budget {
    fn tick(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}

/// Hamiltonian cycle as a vertex sequence starting at 0, by backtracking
/// with lowest-id-first branching.
pub fn hamiltonian_cycle(g: &RotationGraph, budget: u64) -> Search<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return Search::Absent;
    }
    if (0..n).any(|v| g.degree(v) < 2) {
        return Search::Absent;
    }
    let adj = sorted_lists(g);
    let mut path = vec![0usize];
    let mut on_path = vec![false; n];
    on_path[0] = true;
    let mut b = Budget { left: budget };
    match ham_extend(&adj, &mut path, &mut on_path, &mut b) {
        Some(true) => Search::Found(path),
        Some(false) => Search::Absent,
        None => Search::Unknown,
    }
}

fn ham_extend(adj: &[Vec<usize>], path: &mut Vec<usize>, on: &mut [bool], b: &mut Budget) -> Option<bool> {
    if !b.tick() {
        return None;
    }
    let n = adj.len();
    let last = *path.last().expect("nonempty");
    if path.len() == n {
        return Some(adj[last].contains(&path[0]));
    }
    // Every unvisited vertex needs two usable neighbors.
    for v in 0..n {
        if on[v] {
            continue;
        }
        let usable = adj[v]
            .iter()
            .filter(|&&w| !on[w] || w == last || w == path[0])
            .count();
        if usable < 2 {
            return Some(false);
        }
    }
    for &w in &adj[last] {
        if on[w] {
            continue;
        }
        on[w] = true;
        path.push(w);
        match ham_extend(adj, path, on, b) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        path.pop();
        on[w] = false;
    }
    Some(false)
}

/// Spanning 2-regular subgraph whose cycles all have even length.
pub fn even_two_factor(g: &RotationGraph, budget: u64) -> Search<Factor> {
    let n = g.n();
    if n % 2 == 1 || (0..n).any(|v| g.degree(v) < 2) {
        return Search::Absent;
    }
    let adj = sorted_lists(g);
    let mut covered = vec![false; n];
    let mut cycles = vec![];
    let mut b = Budget { left: budget };
    match cover(&adj, &mut covered, &mut cycles, &mut b) {
        Some(true) => {
            let mut edges = vec![];
            for c in &cycles {
                for i in 0..c.len() {
                    edges.push(g.edge_id(c[i], c[(i + 1) % c.len()]).expect("cycle edge"));
                }
            }
            Search::Found(Factor::two_regular(g, edges, FactorTag::PerpendicularBipartite))
        }
        Some(false) => Search::Absent,
        None => Search::Unknown,
    }
}

fn cover(adj: &[Vec<usize>], covered: &mut [bool], cycles: &mut Vec<Vec<usize>>, b: &mut Budget) -> Option<bool> {
    let Some(s) = covered.iter().position(|c| !c) else {
        return Some(true);
    };
    covered[s] = true;
    let mut path = vec![s];
    let r = grow(adj, covered, cycles, &mut path, b);
    if r != Some(true) {
        covered[s] = false;
    }
    r
}

fn grow(
    adj: &[Vec<usize>],
    covered: &mut [bool],
    cycles: &mut Vec<Vec<usize>>,
    path: &mut Vec<usize>,
    b: &mut Budget,
) -> Option<bool> {
    if !b.tick() {
        return None;
    }
    let s = path[0];
    let last = *path.last().expect("nonempty");
    // Close the cycle when it is even and long enough.
    if path.len() >= 4 && path.len() % 2 == 0 && adj[last].contains(&s) {
        cycles.push(path.clone());
        match cover(adj, covered, cycles, b) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {
                cycles.pop();
            }
        }
    }
    for &w in &adj[last] {
        // Vertices below s are already covered by earlier cycles.
        if covered[w] || w < s {
            continue;
        }
        covered[w] = true;
        path.push(w);
        match grow(adj, covered, cycles, path, b) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        path.pop();
        covered[w] = false;
    }
    Some(false)
}

/// Choose the factorization behind a circular drawing of a regular graph.
pub fn circular_plan(g: &RotationGraph, budget: u64) -> Result<DecompositionPlan, DecomposeError> {
    let d = g.regular_degree().ok_or(DecomposeError::NotRegular)?;
    if d == 0 {
        return Err(DecomposeError::NotRegular);
    }
    let rest_after = |special: &[usize]| -> Result<Vec<Factor>, DecomposeError> {
        let taken: BTreeSet<usize> = special.iter().copied().collect();
        let rest: Vec<usize> = (0..g.m()).filter(|e| !taken.contains(e)).collect();
        let sub = g.spanning_subgraph(&rest);
        let factors = two_factorize(&sub)?;
        // Map edge ids of the subgraph back to `g`.
        Ok(factors
            .into_iter()
            .map(|f| {
                let edges = f
                    .edges
                    .iter()
                    .map(|&e| {
                        let Edge { u, v } = sub.edge(e);
                        g.edge_id(u, v).expect("subgraph edge")
                    })
                    .collect();
                Factor::two_regular(g, edges, FactorTag::Plain)
            })
            .collect())
    };
    if d % 4 == 0 {
        return Ok(DecompositionPlan {
            degree: d,
            case: PlanCase::Div4,
            factors: rest_after(&[])?,
        });
    }
    if d % 2 == 1 {
        let m = perfect_matching(g).map_err(DecomposeError::NoPerfectMatching)?;
        let mut factors = vec![Factor::matching(m.clone(), FactorTag::PerpendicularMatching)];
        factors.extend(rest_after(&m)?);
        return Ok(DecompositionPlan {
            degree: d,
            case: PlanCase::Odd,
            factors,
        });
    }
    let ham = hamiltonian_cycle(g, budget);
    if let Search::Found(order) = ham {
        let f = Factor::hamiltonian(g, order);
        let mut factors = vec![f.clone()];
        factors.extend(rest_after(&f.edges)?);
        return Ok(DecompositionPlan {
            degree: d,
            case: PlanCase::TwoMod4Hamiltonian,
            factors,
        });
    }
    let even = even_two_factor(g, budget);
    if let Search::Found(f) = even {
        let mut factors = vec![f.clone()];
        factors.extend(rest_after(&f.edges)?);
        return Ok(DecompositionPlan {
            degree: d,
            case: PlanCase::TwoMod4Bipartite,
            factors,
        });
    }
    if matches!(ham, Search::Unknown) || matches!(even, Search::Unknown) {
        Err(DecomposeError::SearchBudgetExceeded)
    } else {
        Err(DecomposeError::NoHamiltonianOrEvenFactor)
    }
}
