//! Spanning-tree packing, the fractional packing number, property `P(k,d)`
//! witnesses and the three-to-four component refinement of a small cut.

mod fractional;
mod lemma41;
pub mod matroid;
mod witness;

pub use fractional::{nu_f_exact, nu_f_exact_with_cap, tau_partition_bruteforce, FractionalPackingResult, NU_F_MAX_N};
pub use lemma41::{lemma41_decompose, lemma41_gadget, Lemma41Error, Lemma41Gadget, Lemma41Split};
pub use witness::{
    forest_requirement, remainder_feasible, remainder_feasible_bruteforce, search_pkd_witness,
    search_pkd_witness_exhaustive, verify_pkd_witness, PackingWitness, PkdSearch, Violation, WitnessConditions,
    DEFAULT_BUDGET,
};

use crate::graph::Graph;
use matroid::{ForestView, MatroidUnion};
use thiserror::Error;

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {0} vertices; at least 2 required")]
    TooSmall(usize),
    #[error("graph has {n} vertices; exhaustive search is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("edge {0}-{1} is not in the graph")]
    ForeignEdge(usize, usize),
    #[error("k and d must be positive (k = {k}, d = {d})")]
    BadParameter { k: usize, d: usize },
}

/// Union-find over `0..n`.
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    pub(crate) count: usize,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), count: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.count -= 1;
        true
    }
}

pub fn is_forest(n: usize, edges: &[Edge]) -> bool {
    let mut ds = DisjointSets::new(n);
    edges.iter().all(|&(u, v)| u < n && v < n && ds.union(u, v))
}

pub fn is_spanning_tree(n: usize, edges: &[Edge]) -> bool {
    edges.len() + 1 == n && is_forest(n, edges)
}

/// Component vertex counts of the spanning subgraph `(0..n, edges)`.
pub(crate) fn component_orders(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut ds = DisjointSets::new(n);
    for &(u, v) in edges {
        ds.union(u, v);
    }
    let mut orders = vec![0; n];
    for v in 0..n {
        let r = ds.find(v);
        orders[r] += 1;
    }
    orders.retain(|&c| c > 0);
    orders
}

/// `k` pairwise edge-disjoint spanning trees, or `None` when `τ(G) < k`.
pub fn pack_spanning_trees(g: &Graph, k: usize) -> Result<Option<Vec<Vec<Edge>>>, PackingError> {
    if !g.is_connected() {
        return Err(PackingError::Disconnected);
    }
    Ok(pack_with_budget(g, k, u64::MAX).expect("unbounded budget"))
}

/// `Err(())` only when the budget runs out.
pub(crate) fn pack_with_budget(g: &Graph, k: usize, budget: u64) -> Result<Option<Vec<Vec<Edge>>>, ()> {
    let n = g.n();
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if k * (n - 1) > g.m() {
        return Ok(None);
    }
    let mut union = MatroidUnion::new(g.edges(), vec![ForestView::full(n, g.m()); k]);
    if !union.insert_all(budget) {
        return Err(());
    }
    if union.total() < k * (n - 1) {
        return Ok(None);
    }
    let trees = (0..k)
        .map(|part| union.part_edges(part).into_iter().map(|e| g.edges()[e]).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    debug_assert!(trees.iter().all(|t| is_spanning_tree(n, t)));
    Ok(Some(trees))
}

/// `τ(G)` by matroid union: the largest `k` for which a packing exists.
pub fn tau_matroid(g: &Graph) -> Result<usize, PackingError> {
    if g.n() < 2 {
        return Err(PackingError::TooSmall(g.n()));
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut k = 0;
    while pack_spanning_trees(g, k + 1)?.is_some() {
        k += 1;
    }
    Ok(k)
}
