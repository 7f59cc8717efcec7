//! Undirected simple graphs on dense labels `0..n`, plus the vertex-set and
//! partition carriers shared by the rest of the crate.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex sets overlap at vertex {0}")]
    DisjointnessViolation(usize),
    #[error("invalid partition: {0}")]
    PartitionInvalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Malformed,
    SelfLoop,
    DuplicateEdge,
    VertexOutOfRange,
    EdgeCountMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind:?}: {detail}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
    pub detail: String,
}

impl ParseError {
    fn new(line: usize, kind: ParseErrorKind, detail: impl Into<String>) -> Self {
        Self { line, kind, detail: detail.into() }
    }
}

/// Sorted, duplicate-free set of vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn from_bits(bits: &FixedBitSet) -> Self {
        VertexSet(bits.ones().collect())
    }

    pub fn to_bits(&self, n: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for &v in &self.0 {
            bits.insert(v);
        }
        bits
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.first_common(other).is_none()
    }

    fn first_common(&self, other: &VertexSet) -> Option<usize> {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some(self.0[i]),
            }
        }
        None
    }

    /// `V(G) \ self` for a graph on `n` vertices.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|&v| !self.contains(v)).collect())
    }

    /// Ordering used for canonical listings: by size, then lexicographic.
    pub fn size_lex_cmp(&self, other: &VertexSet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter)
    }
}

/// Partition of `0..n` into non-empty disjoint blocks, kept sorted by
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexPartition {
    blocks: Vec<VertexSet>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<VertexSet>, n: usize) -> Result<Self, GraphError> {
        if blocks.is_empty() {
            return Err(GraphError::PartitionInvalid("no blocks".into()));
        }
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(GraphError::PartitionInvalid("empty block".into()));
            }
            for v in block.iter() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if seen[v] {
                    return Err(GraphError::PartitionInvalid(format!("vertex {v} in two blocks")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(GraphError::PartitionInvalid(format!("vertex {v} not covered")));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.as_slice()[0]);
        Ok(VertexPartition { blocks })
    }

    /// Builds the partition from a block label per vertex.
    pub fn from_labels(labels: &[usize]) -> Self {
        let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l].push(v);
        }
        let mut blocks: Vec<VertexSet> = blocks.into_iter().filter(|b| !b.is_empty()).map(VertexSet).collect();
        blocks.sort_by_key(|b| b.as_slice()[0]);
        VertexPartition { blocks }
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(VertexSet::len).sum()
    }

    /// Block index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n()];
        for (i, block) in self.blocks.iter().enumerate() {
            for v in block.iter() {
                labels[v] = i;
            }
        }
        labels
    }
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    min_degree: usize,
    max_degree: usize,
}

impl Graph {
    /// Edges may be given in either orientation; they are stored as `(u, v)`
    /// with `u < v`, sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            list.push(e);
        }
        list.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &list {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let min_degree = adjacency.iter().map(Vec::len).min().unwrap_or(0);
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Graph { n, edges: list, adjacency, min_degree, max_degree })
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid by construction")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid by construction")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid by construction")
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, std::iter::empty()).expect("valid by construction")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Neighbourhood bitmask; only meaningful for `n <= 64`.
    pub fn adjacency_mask(&self, v: usize) -> u64 {
        self.adjacency[v].iter().fold(0u64, |m, &u| m | 1 << u)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || components(self).len() == 1
    }

    /// Graph with the listed edges removed; unknown edges are ignored.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let removed: HashSet<(usize, usize)> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        Graph::new(self.n, self.edges.iter().copied().filter(|e| !removed.contains(e)))
            .expect("subgraph of a simple graph")
    }

    /// Serializes to the edge-list text format read by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Number of edges inside `set`.
    pub fn internal_edges(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.adjacency[v].iter().filter(|&&u| u > v && set.contains(u)).count()).sum()
    }

    /// `e(S, V \ S)`.
    pub fn boundary_size(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.adjacency[v].iter().filter(|&&u| !set.contains(u)).count()).sum()
    }
}

fn check_range(g: &Graph, set: &VertexSet) -> Result<(), GraphError> {
    match set.iter().find(|&v| v >= g.n) {
        Some(vertex) => Err(GraphError::VertexOutOfRange { vertex, n: g.n }),
        None => Ok(()),
    }
}

/// Number of edges with one end in `x` and the other in `y`.
pub fn cut_size(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<usize, GraphError> {
    check_range(g, x)?;
    check_range(g, y)?;
    if let Some(v) = x.first_common(y) {
        return Err(GraphError::DisjointnessViolation(v));
    }
    Ok(x.iter().map(|v| g.neighbors(v).iter().filter(|&&u| y.contains(u)).count()).sum())
}

/// Connected components, each sorted, listed by smallest member.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    let mut label = vec![usize::MAX; g.n];
    let mut out = Vec::new();
    for start in 0..g.n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if label[u] == usize::MAX {
                    label[u] = id;
                    members.push(u);
                    queue.push_back(u);
                }
            }
        }
        out.push(VertexSet::new(members));
    }
    out
}

/// Reads `"n m"` followed by `m` lines `"u v"`. Blank lines are skipped;
/// line numbers in errors are 1-based and count blank lines.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (header_line, header) =
        lines.next().ok_or_else(|| ParseError::new(1, ParseErrorKind::Malformed, "missing header"))?;
    let header_fields: Vec<&str> = header.split_whitespace().collect();
    let parse_int = |line: usize, s: &str| -> Result<usize, ParseError> {
        s.parse().map_err(|_| {
            ParseError::new(line, ParseErrorKind::Malformed, format!("`{s}` is not a non-negative integer"))
        })
    };
    if header_fields.len() != 2 {
        return Err(ParseError::new(header_line, ParseErrorKind::Malformed, "header must be `n m`"));
    }
    let n = parse_int(header_line, header_fields[0])?;
    let m = parse_int(header_line, header_fields[1])?;
    if n == 0 {
        return Err(ParseError::new(header_line, ParseErrorKind::Malformed, "graph needs at least one vertex"));
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in lines {
        last_line = line;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError::new(line, ParseErrorKind::Malformed, "edge line must be `u v`"));
        }
        let u = parse_int(line, fields[0])?;
        let v = parse_int(line, fields[1])?;
        if u >= n || v >= n {
            return Err(ParseError::new(line, ParseErrorKind::VertexOutOfRange, format!("edge {u}-{v} with n = {n}")));
        }
        if u == v {
            return Err(ParseError::new(line, ParseErrorKind::SelfLoop, format!("loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(line, ParseErrorKind::DuplicateEdge, format!("edge {u}-{v} repeated")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::new(
            last_line,
            ParseErrorKind::EdgeCountMismatch,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(n, edges).expect("validated above"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0} outside the graph6 range 63..=126")]
    BadByte(u8),
    #[error("graph6 string too short: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6 string has {0} trailing bytes")]
    Trailing(usize),
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Graph6Error::BadByte(b));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated { expected: 3, found: bytes.len() - 1 });
        }
        (bytes[1..4].iter().fold(0, |acc, &b| acc << 6 | six(b)), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Graph6Error::Truncated { expected: 6, found: bytes.len().saturating_sub(2) });
        }
        (bytes[2..8].iter().fold(0, |acc, &b| acc << 6 | six(b)), &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if rest.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: rest.len() });
    }
    if rest.len() > expected {
        return Err(Graph6Error::Trailing(rest.len() - expected));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(rest[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 encodes a simple graph"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error(transparent)]
    EdgeList(#[from] ParseError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}

/// Edge list when the first non-blank line is two integers, graph6 otherwise.
pub fn parse_graph_auto(text: &str) -> Result<Graph, InputError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let looks_like_header = first.split_whitespace().count() == 2
        && first.split_whitespace().all(|f| f.bytes().all(|c| c.is_ascii_digit()));
    if looks_like_header {
        Ok(parse_edge_list(text)?)
    } else {
        Ok(parse_graph6(first)?)
    }
}
