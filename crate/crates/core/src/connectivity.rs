//! Edge connectivity, minimum-cut side enumeration and membership in the
//! classes `G_t` (graphs with `t + 1` disjoint minimum-cut sides that leave
//! at least one vertex uncovered).

use crate::graph::{components, Graph, VertexSet};
use fixedbitset::FixedBitSet;
use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

/// Largest order handled by exhaustive side enumeration.
pub const ENUMERATION_MAX_N: usize = 20;
/// Largest `t` accepted by [`gt_membership`].
pub const MAX_T: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("graph has {n} vertices; at least {required} required")]
    TooSmall { n: usize, required: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("t = {0} outside 1..={MAX_T}")]
    BadT(usize),
}

/// `t + 1` pairwise disjoint proper subsets whose boundaries all equal
/// `κ'(G)` and whose union misses at least one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GtWitness {
    pub t: usize,
    pub subsets: Vec<VertexSet>,
}

impl GtWitness {
    pub fn leftover(&self, n: usize) -> VertexSet {
        (0..n).filter(|&v| self.subsets.iter().all(|s| !s.contains(v))).collect()
    }

    /// Re-checks every defining condition against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        if self.subsets.len() != self.t + 1 {
            return Err(format!("expected {} subsets, got {}", self.t + 1, self.subsets.len()));
        }
        let n = g.n();
        for (i, s) in self.subsets.iter().enumerate() {
            if s.is_empty() || s.len() >= n || s.iter().any(|v| v >= n) {
                return Err(format!("subset {i} is not a non-empty proper subset"));
            }
            for other in &self.subsets[i + 1..] {
                if !s.is_disjoint(other) {
                    return Err(format!("subset {i} overlaps a later subset"));
                }
            }
        }
        if self.leftover(n).is_empty() {
            return Err("subsets cover every vertex".into());
        }
        let (kappa, _) = edge_connectivity(g).map_err(|e| e.to_string())?;
        for (i, s) in self.subsets.iter().enumerate() {
            let cut = g.boundary_size(s);
            if cut != kappa {
                return Err(format!("subset {i} has boundary {cut}, κ' = {kappa}"));
            }
        }
        Ok(())
    }
}

/// `κ'(G)` together with one side attaining it.
///
/// Exhaustive enumeration for `n <= 20`, max-flow otherwise. A disconnected
/// graph reports `κ' = 0` with its first component as the side.
pub fn edge_connectivity(g: &Graph) -> Result<(usize, VertexSet), ConnectivityError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooSmall { n, required: 2 });
    }
    let comps = components(g);
    if comps.len() > 1 {
        return Ok((0, comps[0].clone()));
    }
    if n <= ENUMERATION_MAX_N {
        Ok(edge_connectivity_enumerate(g))
    } else {
        Ok(edge_connectivity_flow(g))
    }
}

/// Walks every subset of `0..n` in Gray-code order, keeping the cut value
/// up to date in O(1) per step, and hands each non-trivial `(mask, cut)` to
/// `visit`. Vertex `fixed`, if given, never joins the subset.
fn for_each_cut(g: &Graph, fixed: Option<usize>, mut visit: impl FnMut(u64, usize)) {
    let n = g.n();
    let free: Vec<usize> = (0..n).filter(|&v| Some(v) != fixed).collect();
    let adj: Vec<u64> = (0..n).map(|v| g.adjacency_mask(v)).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut mask = 0u64;
    let mut cut = 0usize;
    for step in 1u64..(1u64 << free.len()) {
        let v = free[step.trailing_zeros() as usize];
        let bit = 1u64 << v;
        let inside = (adj[v] & mask).count_ones() as usize;
        let degree = adj[v].count_ones() as usize;
        if mask & bit == 0 {
            cut = cut + degree - 2 * inside;
        } else {
            cut = cut + 2 * inside - degree;
        }
        mask ^= bit;
        if mask != full {
            visit(mask, cut);
        }
    }
}

fn edge_connectivity_enumerate(g: &Graph) -> (usize, VertexSet) {
    let mut best: Option<(usize, VertexSet)> = None;
    for_each_cut(g, Some(g.n() - 1), |mask, cut| {
        let better = match &best {
            None => true,
            Some((b, _)) => cut < *b,
        };
        if better {
            best = Some((cut, VertexSet::from_mask(mask)));
        }
    });
    best.expect("n >= 2 yields at least one side")
}

/// Max-flow formulation: `κ' = min_t λ(0, t)`; the returned side is the
/// source side of the minimising cut.
pub fn edge_connectivity_flow(g: &Graph) -> (usize, VertexSet) {
    let n = g.n();
    let mut best = (usize::MAX, VertexSet::default());
    let mut network = UnitFlow::new(g);
    for t in 1..n {
        let limit = best.0.min(g.m() + 1);
        let mut sources = FixedBitSet::with_capacity(n);
        sources.insert(0);
        let mut sinks = FixedBitSet::with_capacity(n);
        sinks.insert(t);
        let (value, side) = network.max_flow(&sources, &sinks, limit);
        if value < best.0 {
            best = (value, VertexSet::from_bits(&side));
        }
    }
    best
}

/// Unit-capacity undirected flow network; every edge can carry one unit in
/// either direction.
struct UnitFlow {
    n: usize,
    /// `(head, edge index, direction)` per vertex.
    arcs: Vec<Vec<(usize, usize, bool)>>,
    /// Net flow on edge `i` in direction `u -> v` where `u < v`: -1, 0 or 1.
    flow: Vec<i8>,
}

impl UnitFlow {
    fn new(g: &Graph) -> Self {
        let mut arcs = vec![Vec::new(); g.n()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            arcs[u].push((v, i, true));
            arcs[v].push((u, i, false));
        }
        Self { n: g.n(), arcs, flow: vec![0; g.m()] }
    }

    fn residual(&self, edge: usize, forward: bool) -> bool {
        if forward {
            self.flow[edge] < 1
        } else {
            self.flow[edge] > -1
        }
    }

    /// Augments until no path remains or the value exceeds `limit`; returns
    /// the value (capped at `limit + 1`) and the residual-reachable side.
    fn max_flow(&mut self, sources: &FixedBitSet, sinks: &FixedBitSet, limit: usize) -> (usize, FixedBitSet) {
        self.flow.iter_mut().for_each(|f| *f = 0);
        let mut value = 0;
        loop {
            let mut parent: Vec<Option<(usize, usize, bool)>> = vec![None; self.n];
            let mut seen = sources.clone();
            let mut queue: VecDeque<usize> = sources.ones().collect();
            let mut reached = None;
            'bfs: while let Some(v) = queue.pop_front() {
                for &(u, e, fwd) in &self.arcs[v] {
                    if !seen.contains(u) && self.residual(e, fwd) {
                        seen.insert(u);
                        parent[u] = Some((v, e, fwd));
                        if sinks.contains(u) {
                            reached = Some(u);
                            break 'bfs;
                        }
                        queue.push_back(u);
                    }
                }
            }
            let Some(mut v) = reached else {
                return (value, seen);
            };
            while let Some((prev, e, fwd)) = parent[v] {
                self.flow[e] += if fwd { 1 } else { -1 };
                v = prev;
            }
            value += 1;
            if value > limit {
                return (value, seen);
            }
        }
    }
}

/// Every non-empty proper `S` with `e(S, V \ S) = κ'(G)`, both sides of
/// each cut, ordered by size then lexicographically.
pub fn min_cut_sides(g: &Graph) -> Result<Vec<VertexSet>, ConnectivityError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooSmall { n, required: 2 });
    }
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    let mut sides = if n <= ENUMERATION_MAX_N { min_cut_sides_enumerate(g) } else { min_cut_sides_flow(g) };
    sides.sort_by(VertexSet::size_lex_cmp);
    sides.dedup();
    Ok(sides)
}

fn min_cut_sides_enumerate(g: &Graph) -> Vec<VertexSet> {
    let mut best = usize::MAX;
    let mut masks = Vec::new();
    for_each_cut(g, None, |mask, cut| {
        if cut < best {
            best = cut;
            masks.clear();
        }
        if cut == best {
            masks.push(mask);
        }
    });
    masks.into_iter().map(VertexSet::from_mask).collect()
}

/// Branch-and-bound over vertex assignments; each node runs a max-flow
/// between the vertices fixed inside and outside, pruning when it exceeds
/// `κ'`. Every surviving node has a minimum-cut completion, so the search
/// is output-sensitive.
pub fn min_cut_sides_flow(g: &Graph) -> Vec<VertexSet> {
    let (kappa, _) = edge_connectivity_flow(g);
    let n = g.n();
    let mut network = UnitFlow::new(g);
    let mut out = Vec::new();
    let mut inside = FixedBitSet::with_capacity(n);
    let mut outside = FixedBitSet::with_capacity(n);
    branch(g, &mut network, kappa, 0, &mut inside, &mut outside, &mut out);
    out
}

fn branch(
    g: &Graph,
    network: &mut UnitFlow,
    kappa: usize,
    next: usize,
    inside: &mut FixedBitSet,
    outside: &mut FixedBitSet,
    out: &mut Vec<VertexSet>,
) {
    let n = g.n();
    if inside.count_ones(..) > 0 && outside.count_ones(..) > 0 {
        let (value, _) = network.max_flow(inside, outside, kappa);
        if value > kappa {
            return;
        }
    }
    if next == n {
        let count = inside.count_ones(..);
        if count > 0 && count < n {
            let side = VertexSet::from_bits(inside);
            debug_assert_eq!(g.boundary_size(&side), kappa);
            out.push(side);
        }
        return;
    }
    inside.insert(next);
    branch(g, network, kappa, next + 1, inside, outside, out);
    inside.set(next, false);
    outside.insert(next);
    branch(g, network, kappa, next + 1, inside, outside, out);
    outside.set(next, false);
}

/// A `G_t` witness if one exists.
///
/// Exact backtracking over the minimum-cut sides in increasing size,
/// pruning when the chosen sides already cover every vertex.
pub fn gt_membership(g: &Graph, t: usize) -> Result<Option<GtWitness>, ConnectivityError> {
    if t == 0 || t > MAX_T {
        return Err(ConnectivityError::BadT(t));
    }
    let n = g.n();
    if n < t + 2 {
        return Err(ConnectivityError::TooSmall { n, required: t + 2 });
    }
    let sides = min_cut_sides(g)?;
    let bits: Vec<FixedBitSet> = sides.iter().map(|s| s.to_bits(n)).collect();
    let mut chosen = Vec::with_capacity(t + 1);
    let mut used = FixedBitSet::with_capacity(n);
    if pick_disjoint(&bits, t + 1, 0, &mut used, &mut chosen, n) {
        Ok(Some(GtWitness { t, subsets: chosen.into_iter().map(|i| sides[i].clone()).collect() }))
    } else {
        Ok(None)
    }
}

fn pick_disjoint(
    sides: &[FixedBitSet],
    need: usize,
    start: usize,
    used: &mut FixedBitSet,
    chosen: &mut Vec<usize>,
    n: usize,
) -> bool {
    if chosen.len() == need {
        return true;
    }
    if sides.len() - start < need - chosen.len() {
        return false;
    }
    for i in start..sides.len() {
        if sides.len() - i < need - chosen.len() {
            break;
        }
        if !used.is_disjoint(&sides[i]) {
            continue;
        }
        let covered = used.count_ones(..) + sides[i].count_ones(..);
        // sides are sorted by size, so every later side is at least as large
        let remaining = need - chosen.len() - 1;
        if covered + remaining * sides[i].count_ones(..) >= n {
            continue;
        }
        used.union_with(&sides[i]);
        chosen.push(i);
        if pick_disjoint(sides, need, i + 1, used, chosen, n) {
            return true;
        }
        chosen.pop();
        used.difference_with(&sides[i]);
    }
    false
}
