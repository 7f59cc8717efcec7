//! Refining a small three-component edge cut into a four-component one.
//!
//! Given `X` with `G - X` split into `G1, G2, G3` and a `G_2` witness
//! `V1, V2, V3` (leftover `V'`), some `G_j` meets two of the four sets. Cutting
//! `G_j` along the boundary of its intersection with one of them gives an
//! edge set `X1`; if `G_j - X1` falls into more than two pieces, the pieces
//! are regrouped into two connected halves along a spanning tree of the
//! piece graph. Only `X1` edges cross the regrouping, so `X'` stays in `X1`.

use super::{DisjointSets, Edge};
use crate::connectivity::{edge_connectivity, GtWitness};
use crate::graph::{components, Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Lemma41Error {
    #[error("G - X has {0} components; exactly 3 required")]
    WrongComponentCount(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no admissible split found")]
    NoSplitFound,
    #[error("edge {0}-{1} is not in the graph")]
    ForeignEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma41Split {
    pub x_prime: Vec<Edge>,
    pub components: Vec<VertexSet>,
}

pub fn lemma41_decompose(g: &Graph, gt: &GtWitness, x: &[Edge], k: usize) -> Result<Lemma41Split, Lemma41Error> {
    let n = g.n();
    let delta = g.min_degree();
    let mut x_edges: Vec<Edge> = Vec::with_capacity(x.len());
    for &(u, v) in x {
        let e = (u.min(v), u.max(v));
        if !g.has_edge(e.0, e.1) {
            return Err(Lemma41Error::ForeignEdge(u, v));
        }
        x_edges.push(e);
    }
    x_edges.sort_unstable();
    x_edges.dedup();

    let rest = g.without_edges(&x_edges);
    let parts = components(&rest);
    if parts.len() != 3 {
        return Err(Lemma41Error::WrongComponentCount(parts.len()));
    }
    if delta < 3 * k + 3 {
        return Err(Lemma41Error::HypothesisViolated(format!("δ = {delta} < 3k + 3 = {}", 3 * k + 3)));
    }
    let r: Vec<usize> = parts.iter().map(|p| g.boundary_size(p)).collect();
    for (i, &ri) in r.iter().enumerate() {
        if ri < k + 1 || ri > 2 * k + 1 {
            return Err(Lemma41Error::HypothesisViolated(format!(
                "r_{} = {ri} outside [{}, {}]",
                i + 1,
                k + 1,
                2 * k + 1
            )));
        }
    }
    let total: usize = r.iter().sum();
    if total > 4 * k + 3 {
        return Err(Lemma41Error::HypothesisViolated(format!("Σ r_i = {total} > 4k + 3 = {}", 4 * k + 3)));
    }
    if gt.t != 2 {
        return Err(Lemma41Error::HypothesisViolated(format!("witness has t = {}, expected 2", gt.t)));
    }
    gt.validate(g).map_err(Lemma41Error::HypothesisViolated)?;
    let kappa = edge_connectivity(g).map_err(|e| Lemma41Error::HypothesisViolated(e.to_string()))?.0;

    let mut targets = gt.subsets.clone();
    targets.push(gt.leftover(n));

    for part in &parts {
        for target in &targets {
            let inside: Vec<bool> = (0..n).map(|v| part.contains(v) && target.contains(v)).collect();
            let count = inside.iter().filter(|&&b| b).count();
            if count == 0 || count == part.len() {
                continue;
            }
            let local: Vec<Edge> = rest.edges().iter().copied().filter(|&(u, _)| part.contains(u)).collect();
            let x1: Vec<Edge> = local.iter().copied().filter(|&(u, v)| inside[u] != inside[v]).collect();
            for x_prime in regroupings(n, part, &local, &x1) {
                if x_prime.len() > kappa {
                    continue;
                }
                let mut removed = x_edges.clone();
                removed.extend(&x_prime);
                let split = components(&g.without_edges(&removed));
                if split.len() == 4 && split.iter().all(|c| c.len() > delta) {
                    return Ok(Lemma41Split { x_prime, components: split });
                }
            }
        }
    }
    Err(Lemma41Error::NoSplitFound)
}

/// Candidate edge sets `X' ⊆ X1` splitting `part` into two connected halves.
fn regroupings(n: usize, part: &VertexSet, local: &[Edge], x1: &[Edge]) -> Vec<Vec<Edge>> {
    let mut ds = DisjointSets::new(n);
    for &(u, v) in local {
        if !x1.contains(&(u, v)) {
            ds.union(u, v);
        }
    }
    let mut roots: Vec<usize> = part.iter().map(|v| ds.find(v)).collect();
    roots.sort_unstable();
    roots.dedup();
    let piece_of = |ds: &mut DisjointSets, v: usize| roots.binary_search(&ds.find(v)).expect("vertex of part");
    let pieces = roots.len();
    if pieces == 2 {
        return vec![x1.to_vec()];
    }
    let x1_pieces: Vec<(usize, usize)> =
        x1.iter().map(|&(u, v)| (piece_of(&mut ds, u), piece_of(&mut ds, v))).collect();

    // BFS spanning tree of the piece graph
    let mut adj = vec![Vec::new(); pieces];
    for &(a, b) in &x1_pieces {
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut parent = vec![usize::MAX; pieces];
    let mut seen = vec![false; pieces];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut tree_edges = Vec::new();
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                parent[b] = a;
                tree_edges.push((a, b));
                queue.push_back(b);
            }
        }
    }

    tree_edges
        .iter()
        .map(|&(_, cut_child)| {
            // pieces in the subtree of `cut_child` form one side
            let side: Vec<bool> = (0..pieces)
                .map(|p| {
                    let mut q = p;
                    while q != usize::MAX && q != cut_child {
                        q = parent[q];
                    }
                    q == cut_child
                })
                .collect();
            x1.iter().zip(&x1_pieces).filter(|(_, &(a, b))| side[a] != side[b]).map(|(&e, _)| e).collect()
        })
        .collect()
}

/// Five cliques `K_{3k+4}` named A..E joined by random links (A–B: k,
/// A–C: k, B–C: 1, D–C: k+1, E–A: k+1). `κ' = k + 1`; B, D and E are
/// disjoint minimum-cut sides; removing the A–B, A–C, B–C links leaves the
/// three components A ∪ E, B, C ∪ D.
#[derive(Debug, Clone)]
pub struct Lemma41Gadget {
    pub graph: Graph,
    pub witness: GtWitness,
    pub x: Vec<Edge>,
    pub blocks: Vec<VertexSet>,
}

pub fn lemma41_gadget(k: usize, seed: u64) -> Lemma41Gadget {
    assert!(k >= 1, "k must be positive");
    let s = 3 * k + 4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<VertexSet> = (0..5).map(|b| VertexSet::new(b * s..(b + 1) * s)).collect();
    let mut edges = Vec::new();
    for b in 0..5 {
        for u in b * s..(b + 1) * s {
            for v in u + 1..(b + 1) * s {
                edges.push((u, v));
            }
        }
    }
    let (a, bb, c, d, e) = (0, 1, 2, 3, 4);
    let link = |p: usize, q: usize, count: usize, rng: &mut ChaCha8Rng| {
        let mut pairs: Vec<Edge> =
            (p * s..(p + 1) * s).flat_map(|u| (q * s..(q + 1) * s).map(move |v| (u, v))).collect();
        pairs.shuffle(rng);
        pairs.truncate(count);
        pairs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect::<Vec<_>>()
    };
    let mut x = link(a, bb, k, &mut rng);
    x.extend(link(a, c, k, &mut rng));
    x.extend(link(bb, c, 1, &mut rng));
    x.sort_unstable();
    edges.extend(&x);
    edges.extend(link(d, c, k + 1, &mut rng));
    edges.extend(link(e, a, k + 1, &mut rng));
    let graph = Graph::new(5 * s, edges).expect("gadget is simple");
    let witness = GtWitness { t: 2, subsets: vec![blocks[bb].clone(), blocks[d].clone(), blocks[e].clone()] };
    Lemma41Gadget { graph, witness, x, blocks }
}
