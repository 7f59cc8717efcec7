//! Matroid partition over graphic matroids.
//!
//! Each part is a forest in its own view of the graph: the view maps
//! original vertices to part-local vertices (for contractions) and may
//! exclude edges entirely (for restrictions). Elements are inserted one at
//! a time by breadth-first search for a shortest augmenting path of swaps.

use std::collections::VecDeque;

/// Graphic matroid of a contraction/restriction of the host graph.
#[derive(Debug, Clone)]
pub struct ForestView {
    vertex_map: Vec<usize>,
    local_vertices: usize,
    allowed: Vec<bool>,
}

impl ForestView {
    /// The graphic matroid of the whole graph.
    pub fn full(n: usize, m: usize) -> Self {
        Self { vertex_map: (0..n).collect(), local_vertices: n, allowed: vec![true; m] }
    }

    /// Only edges with both ends in `members` (the graph `G[C]`).
    pub fn induced(n: usize, edges: &[(usize, usize)], members: &[bool]) -> Self {
        let allowed = edges.iter().map(|&(u, v)| members[u] && members[v]).collect();
        Self { vertex_map: (0..n).collect(), local_vertices: n, allowed }
    }

    /// `G / C`: vertices of `members` merged into one, inner edges dropped.
    pub fn contracted(n: usize, edges: &[(usize, usize)], members: &[bool]) -> Self {
        let rep = members.iter().position(|&b| b).unwrap_or(0);
        let vertex_map = (0..n).map(|v| if members[v] { rep } else { v }).collect();
        let allowed = edges.iter().map(|&(u, v)| !(members[u] && members[v])).collect();
        Self { vertex_map, local_vertices: n, allowed }
    }
}

/// Current partition of inserted edges into forests, one per view.
#[derive(Clone)]
pub struct MatroidUnion<'a> {
    edges: &'a [(usize, usize)],
    views: Vec<ForestView>,
    owner: Vec<Option<usize>>,
    /// Per forest, per local vertex: `(neighbour, edge)`.
    forests: Vec<Vec<Vec<(usize, usize)>>>,
    sizes: Vec<usize>,
    /// Edges dequeued by augmenting searches so far.
    pub work: u64,
}

impl<'a> MatroidUnion<'a> {
    pub fn new(edges: &'a [(usize, usize)], views: Vec<ForestView>) -> Self {
        let forests = views.iter().map(|v| vec![Vec::new(); v.local_vertices]).collect();
        let sizes = vec![0; views.len()];
        Self { edges, owner: vec![None; edges.len()], forests, sizes, views, work: 0 }
    }

    /// Adds another (initially empty) part; the existing partition stays valid.
    pub fn push_view(&mut self, view: ForestView) {
        self.forests.push(vec![Vec::new(); view.local_vertices]);
        self.sizes.push(0);
        self.views.push(view);
    }

    pub fn parts(&self) -> usize {
        self.views.len()
    }

    pub fn size(&self, part: usize) -> usize {
        self.sizes[part]
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn owner(&self, edge: usize) -> Option<usize> {
        self.owner[edge]
    }

    /// Edge indices held by `part`, ascending.
    pub fn part_edges(&self, part: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.owner[e] == Some(part)).collect()
    }

    fn local_ends(&self, part: usize, edge: usize) -> (usize, usize) {
        let (u, v) = self.edges[edge];
        let map = &self.views[part].vertex_map;
        (map[u], map[v])
    }

    /// Edges on the forest path between `from` and `to`, or `None` when
    /// they lie in different trees.
    fn forest_path(&self, part: usize, from: usize, to: usize) -> Option<Vec<usize>> {
        let adj = &self.forests[part];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
        let mut seen = vec![false; adj.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = Vec::new();
                let mut y = to;
                while let Some((p, e)) = parent[y] {
                    path.push(e);
                    y = p;
                }
                return Some(path);
            }
            for &(z, e) in &adj[x] {
                if !seen[z] {
                    seen[z] = true;
                    parent[z] = Some((x, e));
                    queue.push_back(z);
                }
            }
        }
        None
    }

    fn attach(&mut self, part: usize, edge: usize) {
        let (u, v) = self.local_ends(part, edge);
        self.forests[part][u].push((v, edge));
        self.forests[part][v].push((u, edge));
        self.owner[edge] = Some(part);
        self.sizes[part] += 1;
    }

    fn detach(&mut self, part: usize, edge: usize) {
        let (u, v) = self.local_ends(part, edge);
        self.forests[part][u].retain(|&(_, e)| e != edge);
        self.forests[part][v].retain(|&(_, e)| e != edge);
        self.owner[edge] = None;
        self.sizes[part] -= 1;
    }

    /// Tries to add `edge` to the union. Returns `false` when it is spanned
    /// by the current partition (and so by any later one). `budget` caps
    /// `work`; `None` is returned if it runs out mid-search.
    pub fn insert(&mut self, edge: usize, budget: u64) -> Option<bool> {
        if self.owner[edge].is_some() {
            return Some(true);
        }
        let m = self.edges.len();
        // label[y] = (x, part): x enters `part`, displacing y
        let mut label: Vec<Option<(usize, usize)>> = vec![None; m];
        let mut visited = vec![false; m];
        visited[edge] = true;
        let mut queue = VecDeque::from([edge]);
        while let Some(x) = queue.pop_front() {
            if self.work >= budget {
                return None;
            }
            self.work += 1;
            for part in 0..self.views.len() {
                if !self.views[part].allowed[x] || self.owner[x] == Some(part) {
                    continue;
                }
                let (u, v) = self.local_ends(part, x);
                if u == v {
                    continue;
                }
                match self.forest_path(part, u, v) {
                    None => {
                        self.augment(x, part, &label);
                        return Some(true);
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if !visited[y] {
                                visited[y] = true;
                                label[y] = Some((x, part));
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        Some(false)
    }

    fn augment(&mut self, last: usize, part: usize, label: &[Option<(usize, usize)>]) {
        let (mut x, mut target) = (last, part);
        loop {
            if let Some(from) = self.owner[x] {
                self.detach(from, x);
            }
            self.attach(target, x);
            match label[x] {
                Some((prev, prev_part)) => {
                    x = prev;
                    target = prev_part;
                }
                None => break,
            }
        }
    }

    /// Inserts every edge not yet owned; returns `false` if the budget ran out.
    pub fn insert_all(&mut self, budget: u64) -> bool {
        for e in 0..self.edges.len() {
            if self.owner[e].is_none() && self.insert(e, budget).is_none() {
                return false;
            }
        }
        true
    }
}
