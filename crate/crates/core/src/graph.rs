//! Simple undirected graphs with dense, stable edge ids and exact GF(2)
//! arithmetic on edge sets.
//!
//! Every cycle, face and spanning tree in this crate is an [`EdgeSet`]: a
//! fixed-capacity bit vector indexed by edge id, so symmetric difference,
//! subset tests and popcounts are single integer operations with no room for
//! approximation.

use std::fmt;

use thiserror::Error;

/// Hard cap on edge count; edge sets are backed by a `u128`.
pub const MAX_EDGES: usize = 128;

/// Errors produced by graph construction and the cycle machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for vertex count {vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("{0} edges exceed the supported maximum of {MAX_EDGES}")]
    TooManyEdges(usize),
    #[error("edge-set capacity mismatch: {0} vs {1}")]
    CapacityMismatch(usize, usize),
    #[error("cycle enumeration exceeded the limit of {0}")]
    CycleLimitExceeded(u64),
}

/// A set of edge ids, valid only against the graph it was created for.
///
/// Ordering is by raw bit pattern; this is the canonical order used for all
/// materialized cycle and tree lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    bits: u128,
    capacity: u32,
}

impl EdgeSet {
    /// The empty set over `capacity` edge ids.
    pub fn empty(capacity: usize) -> Self {
        assert!(capacity <= MAX_EDGES, "capacity {capacity} exceeds {MAX_EDGES}");
        EdgeSet { bits: 0, capacity: capacity as u32 }
    }

    pub(crate) fn from_bits(bits: u128, capacity: usize) -> Self {
        let mut s = EdgeSet::empty(capacity);
        debug_assert_eq!(bits & !s.mask(), 0, "bits outside capacity");
        s.bits = bits;
        s
    }

    fn mask(&self) -> u128 {
        if self.capacity as usize == MAX_EDGES {
            u128::MAX
        } else {
            (1u128 << self.capacity) - 1
        }
    }

    /// Raw bit pattern (bit `i` = edge id `i`).
    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn capacity(&self) -> usize {
        self.capacity as usize
    }

    pub fn contains(&self, edge: usize) -> bool {
        edge < self.capacity as usize && self.bits >> edge & 1 == 1
    }

    pub fn insert(&mut self, edge: usize) {
        assert!(edge < self.capacity as usize, "edge id {edge} out of capacity");
        self.bits |= 1 << edge;
    }

    pub fn remove(&mut self, edge: usize) {
        assert!(edge < self.capacity as usize, "edge id {edge} out of capacity");
        self.bits &= !(1 << edge);
    }

    /// Number of edges in the set.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Exact GF(2) sum. Fails if the operands were built for graphs with
    /// different edge counts.
    pub fn symmetric_difference(&self, other: &EdgeSet) -> Result<EdgeSet, GraphError> {
        if self.capacity != other.capacity {
            return Err(GraphError::CapacityMismatch(self.capacity(), other.capacity()));
        }
        Ok(EdgeSet { bits: self.bits ^ other.bits, capacity: self.capacity })
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.capacity == other.capacity && self.bits & !other.bits == 0
    }

    /// Edge ids shared with `other`.
    pub fn intersection_len(&self, other: &EdgeSet) -> usize {
        debug_assert_eq!(self.capacity, other.capacity);
        (self.bits & other.bits).count_ones() as usize
    }

    /// Edge ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

/// Infallible XOR for same-graph sets; capacity mismatch is a programming
/// error here, the checked form is [`EdgeSet::symmetric_difference`].
impl std::ops::BitXor for EdgeSet {
    type Output = EdgeSet;
    fn bitxor(self, rhs: EdgeSet) -> EdgeSet {
        assert_eq!(self.capacity, rhs.capacity, "edge-set capacity mismatch");
        EdgeSet { bits: self.bits ^ rhs.bits, capacity: self.capacity }
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph. Edge ids are 0..m-1 in construction order and
/// stable for the lifetime of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>, // (neighbor, edge id)
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates
    /// (in either orientation) and out-of-range endpoints.
    pub fn new(vertex_count: usize, edge_list: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if edge_list.len() > MAX_EDGES {
            return Err(GraphError::TooManyEdges(edge_list.len()));
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (id, &(u, v)) in edge_list.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if edges.contains(&key) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            edges.push(key);
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Ok(Graph { vertex_count, edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of `edge`, normalized so the smaller vertex comes first.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge id)` pairs incident to `v`, in insertion order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    /// Edge id of `(u, v)` in either orientation.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.adjacency.get(u)?.iter().find(|&&(w, _)| w == v).map(|&(_, id)| id)
    }

    /// Empty edge set sized for this graph.
    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::empty(self.edge_count())
    }

    /// Edge set from explicit edge ids.
    pub fn edge_set_of(&self, ids: impl IntoIterator<Item = usize>) -> EdgeSet {
        let mut s = self.empty_edge_set();
        for id in ids {
            assert!(id < self.edge_count(), "edge id {id} out of range");
            s.insert(id);
        }
        s
    }

    /// True iff every vertex is reachable from vertex 0 (vacuously true for
    /// at most one vertex).
    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// True iff the graph is connected, has at least three vertices and no
    /// cut vertex (lowpoint depth-first search).
    pub fn is_biconnected(&self) -> bool {
        if self.vertex_count < 3 || !self.is_connected() {
            return false;
        }
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        // Explicit stack: (vertex, parent, adjacency cursor).
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        let mut root_children = 0usize;
        while let Some(frame) = stack.last_mut() {
            let (v, parent, cursor) = (frame.0, frame.1, frame.2);
            if cursor < self.adjacency[v].len() {
                frame.2 += 1;
                let (w, _) = self.adjacency[v][cursor];
                if disc[w] == usize::MAX {
                    if v == 0 {
                        root_children += 1;
                    }
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    // Non-root articulation test.
                    if p != 0 && low[v] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        root_children < 2
    }

    /// True iff `s` is a single simple cycle: nonempty, every touched vertex
    /// has degree exactly 2 in `s`, and the touched vertices form one
    /// connected component.
    pub fn is_cycle(&self, s: &EdgeSet) -> bool {
        assert_eq!(s.capacity(), self.edge_count(), "edge set built for a different graph");
        if s.is_empty() {
            return false;
        }
        let mut degree = vec![0u8; self.vertex_count];
        for e in s.iter() {
            let (u, v) = self.edges[e];
            degree[u] += 1;
            degree[v] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            return false;
        }
        // Walk the cycle from any touched vertex using only edges of s.
        let start = self.edges[s.iter().next().unwrap()].0;
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &(w, e) in &self.adjacency[v] {
                if s.contains(e) && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        let touched = degree.iter().filter(|&&d| d == 2).count();
        reached == touched
    }

    /// All simple cycles, each exactly once, sorted by bit pattern.
    ///
    /// Path-extension search rooted at the smallest vertex of each cycle;
    /// aborts with [`GraphError::CycleLimitExceeded`] past `limit` cycles.
    pub fn enumerate_cycles(&self, limit: u64) -> Result<Vec<EdgeSet>, GraphError> {
        let mut cycles = Vec::new();
        let mut visited = vec![false; self.vertex_count];
        let mut path_edges = Vec::new();
        for root in 0..self.vertex_count {
            visited[root] = true;
            for &(first, e) in &self.adjacency[root] {
                if first > root {
                    visited[first] = true;
                    path_edges.push(e);
                    self.extend_cycle_paths(root, first, first, &mut visited, &mut path_edges, limit, &mut cycles)?;
                    path_edges.pop();
                    visited[first] = false;
                }
            }
            visited[root] = false;
        }
        cycles.sort_unstable();
        debug_assert!(cycles.windows(2).all(|w| w[0] != w[1]));
        Ok(cycles)
    }

    fn extend_cycle_paths(
        &self,
        root: usize,
        first: usize,
        v: usize,
        visited: &mut Vec<bool>,
        path_edges: &mut Vec<usize>,
        limit: u64,
        cycles: &mut Vec<EdgeSet>,
    ) -> Result<(), GraphError> {
        for &(w, e) in &self.adjacency[v] {
            if w == root {
                // Close the cycle once per orientation: first step below the
                // closing vertex.
                if path_edges.len() >= 2 && first < v {
                    if cycles.len() as u64 >= limit {
                        return Err(GraphError::CycleLimitExceeded(limit));
                    }
                    let mut s = self.edge_set_of(path_edges.iter().copied());
                    s.insert(e);
                    cycles.push(s);
                }
            } else if w > root && !visited[w] {
                visited[w] = true;
                path_edges.push(e);
                self.extend_cycle_paths(root, first, w, visited, path_edges, limit, cycles)?;
                path_edges.pop();
                visited[w] = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::new(2, &[(0, 1), (0, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            Graph::new(2, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(1, 0)
        );
        assert_eq!(Graph::new(2, &[(1, 1)]).unwrap_err(), GraphError::SelfLoop(1));
        assert_eq!(
            Graph::new(2, &[(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 2, vertex_count: 2 }
        );
    }

    #[test]
    fn edge_ids_follow_input_order() {
        let g = triangle();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.endpoints(0), (0, 1));
        assert_eq!(g.endpoints(2), (0, 2));
        assert_eq!(g.edge_id(2, 1), Some(1));
        assert_eq!(g.edge_id(0, 0), None);
    }

    #[test]
    fn connectivity() {
        assert!(triangle().is_connected());
        assert!(Graph::new(1, &[]).unwrap().is_connected());
        assert!(Graph::new(0, &[]).unwrap().is_connected());
        let two_triangles =
            Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!two_triangles.is_connected());
    }

    #[test]
    fn biconnectivity() {
        let path3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path3.is_biconnected());
        assert!(triangle().is_biconnected());
        assert!(!Graph::new(2, &[(0, 1)]).unwrap().is_biconnected());
        // Two triangles sharing a single vertex: 2 is a cut vertex.
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(!bowtie.is_biconnected());
    }

    #[test]
    fn symmetric_difference_laws() {
        let g = k4();
        let a = g.edge_set_of([0, 1, 3]);
        let b = g.edge_set_of([1, 2]);
        assert!(a.symmetric_difference(&a).unwrap().is_empty());
        assert_eq!(a.symmetric_difference(&g.empty_edge_set()).unwrap(), a);
        assert_eq!(a ^ b, b ^ a);
        let foreign = EdgeSet::empty(3);
        assert_eq!(
            a.symmetric_difference(&foreign).unwrap_err(),
            GraphError::CapacityMismatch(6, 3)
        );
    }

    #[test]
    fn shared_edge_cancels_into_four_cycle() {
        // Two triangles glued along one edge.
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)]).unwrap();
        let t1 = g.edge_set_of([0, 1, 2]);
        let t2 = g.edge_set_of([1, 3, 4]);
        let four = t1 ^ t2;
        assert_eq!(four.len(), 4);
        assert!(g.is_cycle(&four));
    }

    #[test]
    fn cycle_recognition() {
        let g = triangle();
        assert!(g.is_cycle(&g.edge_set_of([0, 1, 2])));
        assert!(!g.is_cycle(&g.empty_edge_set()));
        assert!(!g.is_cycle(&g.edge_set_of([0, 1])));
        let two = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        // 2-regular but two components.
        assert!(!two.is_cycle(&two.edge_set_of(0..6)));
    }

    #[test]
    fn triangle_has_one_cycle_k4_has_seven() {
        assert_eq!(triangle().enumerate_cycles(1 << 20).unwrap().len(), 1);
        let cycles = k4().enumerate_cycles(1 << 20).unwrap();
        assert_eq!(cycles.len(), 7);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
    }

    #[test]
    fn cycle_limit_guard() {
        assert_eq!(
            k4().enumerate_cycles(3).unwrap_err(),
            GraphError::CycleLimitExceeded(3)
        );
    }

    #[test]
    fn edge_set_iteration_and_order() {
        let g = k4();
        let s = g.edge_set_of([5, 0, 2]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert!(g.edge_set_of([0]) < g.edge_set_of([1]));
        assert!(g.edge_set_of([0, 1]) > g.edge_set_of([1]));
    }
}
