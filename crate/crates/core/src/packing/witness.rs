use super::matroid::{ForestView, MatroidUnion};
use super::{component_orders, is_forest, is_spanning_tree, pack_with_budget, DisjointSets, Edge, PackingError};
use crate::graph::Graph;
use crate::rational::Rational;
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;

/// Default search budget in elementary steps (augmenting-search dequeues or
/// backtracking nodes).
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// `k` edge-disjoint spanning trees plus an extra forest `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingWitness {
    pub k: usize,
    pub d: usize,
    pub trees: Vec<Vec<Edge>>,
    pub forest: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    TreeCount { expected: usize, found: usize },
    NotSpanningTree { tree: usize },
    SharedEdge { u: usize, v: usize },
    NotAForest,
    ForestTooSmall { size: usize, required: usize },
    NoLargeComponent { largest: usize, d: usize },
}

/// The three defining conditions of `P(k,d)`: (a) `k` edge-disjoint
/// spanning trees, (b) a disjoint forest with more than `(d-1)/d (n-1)`
/// edges, (c) a non-spanning `F` has a component with at least `d` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessConditions {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl WitnessConditions {
    pub fn from_violations(violations: &[Violation]) -> Self {
        let mut out = Self { a: true, b: true, c: true };
        for v in violations {
            match v {
                Violation::TreeCount { .. } | Violation::NotSpanningTree { .. } | Violation::SharedEdge { .. } => {
                    out.a = false
                }
                Violation::NotAForest | Violation::ForestTooSmall { .. } => out.b = false,
                Violation::NoLargeComponent { .. } => out.c = false,
            }
        }
        out
    }

    pub fn all(&self) -> bool {
        self.a && self.b && self.c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PkdSearch {
    Found(PackingWitness),
    Refuted,
    Inconclusive,
}

impl PkdSearch {
    pub fn label(&self) -> &'static str {
        match self {
            PkdSearch::Found(_) => "FOUND",
            PkdSearch::Refuted => "REFUTED",
            PkdSearch::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Smallest integer `f` with `f > (d-1)/d (n-1)`.
pub fn forest_requirement(n: usize, d: usize) -> usize {
    assert!(d > 0, "d must be positive");
    let bound = Rational::new(((d - 1) * n.saturating_sub(1)) as i64, d as i64);
    bound.floor().to_integer() as usize + 1
}

/// Checks every witness condition; an empty list means the witness is valid.
pub fn verify_pkd_witness(g: &Graph, w: &PackingWitness) -> Result<Vec<Violation>, PackingError> {
    let n = g.n();
    let mut used: Vec<Option<usize>> = vec![None; g.m()];
    let mut violations = Vec::new();
    let mut shared = Vec::new();
    let parts = w.trees.iter().chain(std::iter::once(&w.forest));
    for (idx, part) in parts.enumerate() {
        for &(u, v) in part {
            let e = g.edge_index(u.min(v), u.max(v)).ok_or(PackingError::ForeignEdge(u, v))?;
            match used[e] {
                Some(prev) if prev != idx => shared.push(g.edges()[e]),
                _ => used[e] = Some(idx),
            }
        }
    }
    if w.trees.len() != w.k {
        violations.push(Violation::TreeCount { expected: w.k, found: w.trees.len() });
    }
    for (i, tree) in w.trees.iter().enumerate() {
        if !is_spanning_tree(n, &normalized(tree)) {
            violations.push(Violation::NotSpanningTree { tree: i });
        }
    }
    shared.sort_unstable();
    shared.dedup();
    violations.extend(shared.into_iter().map(|(u, v)| Violation::SharedEdge { u, v }));

    let forest = normalized(&w.forest);
    if !is_forest(n, &forest) {
        violations.push(Violation::NotAForest);
    } else {
        if w.d == 0 {
            return Err(PackingError::BadParameter { k: w.k, d: w.d });
        }
        let required = forest_requirement(n, w.d);
        if forest.len() < required {
            violations.push(Violation::ForestTooSmall { size: forest.len(), required });
        }
        if !is_spanning_tree(n, &forest) {
            // a tree component on `c` vertices carries `c - 1` edges
            let largest = component_orders(n, &forest).into_iter().max().unwrap_or(1) - 1;
            if largest < w.d {
                violations.push(Violation::NoLargeComponent { largest, d: w.d });
            }
        }
    }
    Ok(violations)
}

fn normalized(edges: &[Edge]) -> Vec<Edge> {
    edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
}

/// Whether the leftover edges `remainder` of a fixed `k`-packing admit a
/// forest satisfying (b) and (c). A spanning forest of the remainder
/// maximizes both the edge count and the largest component, so it suffices
/// to inspect that one forest.
pub fn remainder_feasible(n: usize, remainder: &[Edge], d: usize) -> bool {
    let orders = component_orders(n, remainder);
    if orders.len() == 1 {
        return true;
    }
    let forest_size = n - orders.len();
    forest_size >= forest_requirement(n, d) && orders.iter().any(|&c| c > d)
}

/// Same decision as [`remainder_feasible`], by trying every edge subset.
pub fn remainder_feasible_bruteforce(n: usize, remainder: &[Edge], d: usize) -> bool {
    assert!(remainder.len() <= 24, "subset enumeration capped at 24 edges");
    let required = forest_requirement(n, d);
    (0u32..1 << remainder.len()).any(|mask| {
        let f: Vec<Edge> = (0..remainder.len()).filter(|&i| mask >> i & 1 == 1).map(|i| remainder[i]).collect();
        if f.len() < required || !is_forest(n, &f) {
            return false;
        }
        is_spanning_tree(n, &f) || component_orders(n, &f).into_iter().any(|c| c > d)
    })
}

fn check_parameters(g: &Graph, k: usize, d: usize) -> Result<(), PackingError> {
    if k == 0 || d == 0 {
        return Err(PackingError::BadParameter { k, d });
    }
    if g.n() < 2 {
        return Err(PackingError::TooSmall(g.n()));
    }
    if !g.is_connected() {
        return Err(PackingError::Disconnected);
    }
    Ok(())
}

/// Decides `P(k,d)` exactly.
///
/// A spanning-tree `F` is exactly the `(k+1)`-packing fast path. Otherwise
/// `F` has a component with at least `d` edges, and so contains a tree on
/// some connected set `C` of `d + 1` vertices; the rest of `F` is then a
/// forest of `G / C`. For each such `C` the search runs matroid union over
/// `k` copies of the cycle matroid of `G` plus that of `G[C]` and, once all
/// of those are full, adds the cycle matroid of `G / C`. Augmentation never
/// shrinks a part, so the last part reaches the largest size compatible
/// with the anchor and `REFUTED` is exact.
pub fn search_pkd_witness(g: &Graph, k: usize, d: usize, budget: u64) -> Result<PkdSearch, PackingError> {
    check_parameters(g, k, d)?;
    let n = g.n();
    let mut spent = 0u64;

    match pack_with_budget(g, k + 1, budget) {
        Err(()) => return Ok(PkdSearch::Inconclusive),
        Ok(Some(mut trees)) => {
            let forest = trees.pop().expect("k + 1 trees");
            return Ok(PkdSearch::Found(PackingWitness { k, d, trees, forest }));
        }
        Ok(None) => {}
    }
    let required = forest_requirement(n, d);
    if required >= n - 1 || g.m() < k * (n - 1) + required {
        // (b) forces a spanning tree, which the failed (k+1)-packing rules out
        return Ok(PkdSearch::Refuted);
    }

    let edges = g.edges();
    let mut base = MatroidUnion::new(edges, vec![ForestView::full(n, g.m()); k]);
    if !base.insert_all(budget) {
        return Ok(PkdSearch::Inconclusive);
    }
    if base.total() < k * (n - 1) {
        return Ok(PkdSearch::Refuted);
    }
    spent += base.work;

    let mut exhausted = false;
    let mut found = None;
    let mut members = vec![false; n];
    let _ = for_each_connected_set(g, d + 1, &mut |set| {
        if spent >= budget {
            exhausted = true;
            return ControlFlow::Break(());
        }
        spent += 1;
        for &v in set {
            members[v] = true;
        }
        let outcome = anchored_attempt(g, &base, &members, k, d, budget - spent);
        for &v in set {
            members[v] = false;
        }
        match outcome {
            Anchored::OutOfBudget(work) => {
                spent += work;
                exhausted = true;
                ControlFlow::Break(())
            }
            Anchored::Fail(work) => {
                spent += work;
                ControlFlow::Continue(())
            }
            Anchored::Forest(forest, trees) => {
                found = Some(PackingWitness { k, d, trees, forest });
                ControlFlow::Break(())
            }
        }
    });
    Ok(match (found, exhausted) {
        (Some(w), _) => PkdSearch::Found(w),
        (None, true) => PkdSearch::Inconclusive,
        (None, false) => PkdSearch::Refuted,
    })
}

enum Anchored {
    Forest(Vec<Edge>, Vec<Vec<Edge>>),
    Fail(u64),
    OutOfBudget(u64),
}

fn anchored_attempt(g: &Graph, base: &MatroidUnion, members: &[bool], k: usize, d: usize, budget: u64) -> Anchored {
    let n = g.n();
    let edges = g.edges();
    let mut union = base.clone();
    union.work = 0;
    union.push_view(ForestView::induced(n, edges, members));
    if !union.insert_all(budget) {
        return Anchored::OutOfBudget(union.work);
    }
    if union.size(k) < d {
        return Anchored::Fail(union.work);
    }
    union.push_view(ForestView::contracted(n, edges, members));
    if !union.insert_all(budget) {
        return Anchored::OutOfBudget(union.work);
    }
    if union.size(k) + union.size(k + 1) < forest_requirement(n, d) {
        return Anchored::Fail(union.work);
    }
    let pick = |part: usize| union.part_edges(part).into_iter().map(|e| edges[e]).collect::<Vec<_>>();
    let trees = (0..k).map(pick).collect();
    let mut forest = pick(k);
    forest.extend(pick(k + 1));
    forest.sort_unstable();
    Anchored::Forest(forest, trees)
}

/// Visits every connected vertex set of the given size exactly once
/// (each set is grown from its smallest vertex).
fn for_each_connected_set(
    g: &Graph,
    size: usize,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = g.n();
    for root in 0..n {
        let mut closed = FixedBitSet::with_capacity(n);
        closed.insert(root);
        let mut ext = Vec::new();
        for &u in g.neighbors(root) {
            if u > root {
                ext.push(u);
            }
            closed.insert(u);
        }
        let mut set = vec![root];
        extend_set(g, size, root, &mut set, ext, &closed, visit)?;
    }
    ControlFlow::Continue(())
}

fn extend_set(
    g: &Graph,
    size: usize,
    root: usize,
    set: &mut Vec<usize>,
    mut ext: Vec<usize>,
    closed: &FixedBitSet,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if set.len() == size {
        return visit(set);
    }
    while let Some(w) = ext.pop() {
        let mut next_ext = ext.clone();
        let mut next_closed = closed.clone();
        for &u in g.neighbors(w) {
            if !closed.contains(u) {
                next_closed.insert(u);
                if u > root {
                    next_ext.push(u);
                }
            }
        }
        set.push(w);
        extend_set(g, size, root, set, next_ext, &next_closed, visit)?;
        set.pop();
    }
    ControlFlow::Continue(())
}

/// Decides `P(k,d)` by enumerating every unordered `k`-tuple of pairwise
/// edge-disjoint spanning trees and testing each remainder with
/// [`remainder_feasible`]. Exponential; meant for small graphs and as an
/// independent check of [`search_pkd_witness`].
pub fn search_pkd_witness_exhaustive(g: &Graph, k: usize, d: usize, budget: u64) -> Result<PkdSearch, PackingError> {
    check_parameters(g, k, d)?;
    let n = g.n();
    let m = g.m();
    if k * (n - 1) > m {
        return Ok(PkdSearch::Refuted);
    }
    let mut nodes = 0u64;
    let Some(trees) = all_spanning_trees(g, budget, &mut nodes) else {
        return Ok(PkdSearch::Inconclusive);
    };
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut used = FixedBitSet::with_capacity(m);
    let outcome = choose_trees(g, &trees, k, d, 0, &mut chosen, &mut used, budget, &mut nodes);
    Ok(match outcome {
        ControlFlow::Break(Some(forest)) => PkdSearch::Found(PackingWitness {
            k,
            d,
            trees: chosen.iter().map(|&t| bits_to_edges(g, &trees[t])).collect(),
            forest,
        }),
        ControlFlow::Break(None) => PkdSearch::Inconclusive,
        ControlFlow::Continue(()) => PkdSearch::Refuted,
    })
}

fn bits_to_edges(g: &Graph, bits: &FixedBitSet) -> Vec<Edge> {
    bits.ones().map(|e| g.edges()[e]).collect()
}

#[allow(clippy::too_many_arguments)]
fn choose_trees(
    g: &Graph,
    trees: &[FixedBitSet],
    k: usize,
    d: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    used: &mut FixedBitSet,
    budget: u64,
    nodes: &mut u64,
) -> ControlFlow<Option<Vec<Edge>>> {
    *nodes += 1;
    if *nodes > budget {
        return ControlFlow::Break(None);
    }
    if chosen.len() == k {
        let remainder: Vec<Edge> = (0..g.m()).filter(|&e| !used.contains(e)).map(|e| g.edges()[e]).collect();
        if remainder_feasible(g.n(), &remainder, d) {
            let mut ds = DisjointSets::new(g.n());
            let forest = remainder.into_iter().filter(|&(u, v)| ds.union(u, v)).collect();
            return ControlFlow::Break(Some(forest));
        }
        return ControlFlow::Continue(());
    }
    for t in start..trees.len() {
        if !trees[t].is_disjoint(used) {
            continue;
        }
        used.union_with(&trees[t]);
        chosen.push(t);
        choose_trees(g, trees, k, d, t + 1, chosen, used, budget, nodes)?;
        chosen.pop();
        used.difference_with(&trees[t]);
    }
    ControlFlow::Continue(())
}

/// All spanning trees as edge-index bitsets, by include/exclude branching
/// over edges in index order. `None` when the node budget runs out.
fn all_spanning_trees(g: &Graph, budget: u64, nodes: &mut u64) -> Option<Vec<FixedBitSet>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut picked = FixedBitSet::with_capacity(g.m());
    if tree_branch(g, 0, 0, &mut labels, &mut picked, &mut out, budget, nodes) {
        Some(out)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn tree_branch(
    g: &Graph,
    edge: usize,
    count: usize,
    labels: &mut Vec<usize>,
    picked: &mut FixedBitSet,
    out: &mut Vec<FixedBitSet>,
    budget: u64,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if *nodes > budget {
        return false;
    }
    let n = g.n();
    if count + 1 == n {
        out.push(picked.clone());
        return true;
    }
    if edge == g.m() || g.m() - edge < n - 1 - count {
        return true;
    }
    let (u, v) = g.edges()[edge];
    let (lu, lv) = (labels[u], labels[v]);
    if lu != lv {
        let saved = labels.clone();
        for l in labels.iter_mut() {
            if *l == lv {
                *l = lu;
            }
        }
        picked.insert(edge);
        let ok = tree_branch(g, edge + 1, count + 1, labels, picked, out, budget, nodes);
        picked.set(edge, false);
        *labels = saved;
        if !ok {
            return false;
        }
    }
    tree_branch(g, edge + 1, count, labels, picked, out, budget, nodes)
}
