//! Graph representation and the combinatorial primitives every other module
//! consumes: edge counts between vertex sets, volumes, connected components.
//!
//! Graphs are simple, undirected, and have no isolated vertices. The
//! no-isolated-vertices rule is enforced at construction so that `D^{-1/2}`
//! is always well-defined downstream.

mod edge_list;
pub mod generators;

pub use edge_list::{parse_edge_list, ParsedEdgeList};
pub use generators::GeneratorSpec;

use std::cmp::Ordering;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(u32),
    #[error("graph must have at least one edge")]
    Empty,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid generator parameters: {0}")]
    InvalidParameter(String),
    #[error("generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },
}

/// Simple undirected graph on vertices `0..n`, no self-loops, no duplicate
/// edges, no isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Each edge stored once as `(u, v)` with `u < v`, sorted.
    edges: Vec<(u32, u32)>,
    degree: Vec<u32>,
    adj: Vec<Vec<u32>>,
    volume_total: u64,
}

impl Graph {
    /// Builds a graph from a vertex count and an edge list.
    ///
    /// Edges may be given in either orientation; they are normalized to
    /// `(min, max)` and sorted. Rejects self-loops, duplicates, out-of-range
    /// endpoints, and isolated vertices.
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self, GraphError> {
        if n == 0 || edges.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut norm: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            norm.push((u, v));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut degree = vec![0u32; n];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        if let Some(v) = degree.iter().position(|&d| d == 0) {
            return Err(GraphError::IsolatedVertex(v as u32));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let volume_total = degree.iter().map(|&d| u64::from(d)).sum();
        Ok(Graph {
            n,
            edges: norm,
            degree,
            adj,
            volume_total,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    /// Sum of all degrees, `vol G = 2 |E|`.
    pub fn volume_total(&self) -> u64 {
        self.volume_total
    }

    pub fn max_degree(&self) -> u32 {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.degree.iter().all(|&d| d == self.degree[0])
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&(u, v)).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() == 1
    }

    /// Deterministic edge-list serialization: one `u v` line per edge in
    /// sorted order. Two graphs are equal iff their serializations match.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u, v));
        }
        out
    }
}

/// Subset of the vertices of a graph on `n` vertices, bitset-backed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            blocks: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, iter: I) -> Self {
        let mut s = Self::empty(n);
        for v in iter {
            s.insert(v);
        }
        s
    }

    /// Interprets bit `i` of `mask` as membership of vertex `i`. Requires
    /// `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "mask constructor limited to n <= 64");
        assert!(n == 64 || mask >> n == 0, "mask has bits beyond vertex range");
        VertexSet {
            n,
            blocks: vec![mask],
        }
    }

    pub fn universe_len(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.n);
        self.blocks[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {} out of range {}", v, self.n);
        self.blocks[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n);
        self.blocks[v / 64] &= !(1 << (v % 64));
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        for b in &mut out.blocks {
            *b = !*b;
        }
        // clear bits beyond n
        let rem = out.n % 64;
        if rem != 0 {
            if let Some(last) = out.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    pub fn to_sorted_vec(&self) -> Vec<u32> {
        self.iter().map(|v| v as u32).collect()
    }

    /// Lexicographic order on the sorted vertex lists of the two sets, so
    /// `{1,2} < {1,3} < {2}` and a proper prefix sorts first.
    pub fn lex_cmp(&self, other: &VertexSet) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for (i, (&a, &b)) in self.blocks.iter().zip(&other.blocks).enumerate() {
            let diff = a ^ b;
            if diff != 0 {
                let v = i * 64 + diff.trailing_zeros() as usize;
                return if self.contains(v) {
                    // self has v where other does not: self is smaller unless
                    // other is already exhausted (a proper prefix of self).
                    if other.has_member_above(v) {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                } else if self.has_member_above(v) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }

    fn has_member_above(&self, v: usize) -> bool {
        ((v + 1)..self.n).any(|w| self.contains(w))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let members = self.to_sorted_vec();
        let mut seq = serializer.serialize_seq(Some(members.len()))?;
        for v in members {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// `E(S, T)`: number of edges with one endpoint in `S` and the other in `T`,
/// edges inside `S ∩ T` counted twice. In particular `edges_between(S, S)`
/// is twice the internal edge count and `edges_between(S, V) = vol S`.
pub fn edges_between(g: &Graph, s: &VertexSet, t: &VertexSet) -> u64 {
    debug_assert_eq!(s.universe_len(), g.n());
    debug_assert_eq!(t.universe_len(), g.n());
    let mut count = 0u64;
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        if s.contains(u) && t.contains(v) {
            count += 1;
        }
        if s.contains(v) && t.contains(u) {
            count += 1;
        }
    }
    count
}

/// `vol S`: sum of the degrees of the members of `S`.
pub fn volume(g: &Graph, s: &VertexSet) -> u64 {
    debug_assert_eq!(s.universe_len(), g.n());
    s.iter().map(|v| u64::from(g.degree(v))).sum()
}

/// Partition of the vertices into maximal connected sets, ordered by their
/// smallest member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut queue = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = VertexSet::empty(n);
        seen[start] = true;
        queue.push(start);
        while let Some(v) = queue.pop() {
            comp.insert(v);
            for &w in g.neighbors(v) {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        components.push(comp);
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn construction_rejects_self_loop() {
        assert!(matches!(
            Graph::new(2, vec![(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
    }

    #[test]
    fn construction_rejects_duplicate() {
        assert!(matches!(
            Graph::new(2, vec![(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
    }

    #[test]
    fn construction_rejects_isolated() {
        assert!(matches!(
            Graph::new(3, vec![(0, 1)]),
            Err(GraphError::IsolatedVertex(2))
        ));
    }

    #[test]
    fn degrees_and_volume() {
        let g = path3();
        assert_eq!(g.degrees(), &[1, 2, 1]);
        assert_eq!(g.volume_total(), 4);
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn edges_between_triangle_double_counts() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let v = VertexSet::full(3);
        assert_eq!(edges_between(&g, &v, &v), 6);
    }

    #[test]
    fn edges_between_cycle_boundary() {
        let g = generators::cycle(4).unwrap();
        let s = VertexSet::from_indices(4, [0, 1]);
        let t = s.complement();
        assert_eq!(edges_between(&g, &s, &t), 2);
    }

    #[test]
    fn edges_between_identity_classifies_endpoints() {
        let g = generators::petersen();
        let s = VertexSet::from_indices(10, [0, 2, 5, 7]);
        let internal = edges_between(&g, &s, &s);
        let boundary = edges_between(&g, &s, &s.complement());
        assert_eq!(internal + boundary, volume(&g, &s));
        assert_eq!(internal % 2, 0);
    }

    #[test]
    fn volume_examples() {
        let k4 = generators::complete(4).unwrap();
        assert_eq!(volume(&k4, &VertexSet::from_indices(4, [0, 1])), 6);
        assert_eq!(volume(&k4, &VertexSet::full(4)), k4.volume_total());
        let star = generators::star(4).unwrap();
        assert_eq!(volume(&star, &VertexSet::from_indices(4, [0])), 3);
    }

    #[test]
    fn components_counts() {
        assert_eq!(connected_components(&path3()).len(), 1);
        let two_k2 = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let comps = connected_components(&two_k2);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_sorted_vec(), vec![0, 1]);
        assert_eq!(comps[1].to_sorted_vec(), vec![2, 3]);
        assert_eq!(connected_components(&generators::petersen()).len(), 1);
    }

    #[test]
    fn complement_roundtrip() {
        let s = VertexSet::from_indices(70, [0, 63, 64, 69]);
        let c = s.complement();
        assert_eq!(s.len() + c.len(), 70);
        assert_eq!(c.complement(), s);
    }

    #[test]
    fn lex_cmp_matches_sorted_list_order() {
        let n = 6;
        let set = |vs: &[usize]| VertexSet::from_indices(n, vs.iter().copied());
        assert_eq!(set(&[1, 2]).lex_cmp(&set(&[1, 3])), Ordering::Less);
        assert_eq!(set(&[1, 3]).lex_cmp(&set(&[2])), Ordering::Less);
        assert_eq!(set(&[1]).lex_cmp(&set(&[1, 2])), Ordering::Less);
        assert_eq!(set(&[1, 2]).lex_cmp(&set(&[1])), Ordering::Greater);
        assert_eq!(set(&[2, 4]).lex_cmp(&set(&[2, 4])), Ordering::Equal);
    }

    #[test]
    fn vertex_set_serializes_as_sorted_list() {
        let s = VertexSet::from_indices(5, [3, 0, 4]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,3,4]");
    }
}
