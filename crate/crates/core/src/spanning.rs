//! Spanning-tree enumeration, exact algebraic tree counting, and fundamental
//! cycles.
//!
//! Enumeration and counting are two independent algorithms (include/exclude
//! recursion vs. a Laplacian-minor determinant); agreement between them is
//! the crate's primary anti-bug oracle.

use num_bigint::{BigInt, BigUint, Sign};
use thiserror::Error;

use crate::graph::{EdgeSet, Graph};
use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("spanning-tree enumeration exceeded the limit of {0}")]
    TreeLimitExceeded(u64),
    #[error("edge set is not a spanning tree of the graph")]
    NotASpanningTree,
}

/// A spanning tree of a graph: `n - 1` edges, acyclic, touching every vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    edges: EdgeSet,
}

impl SpanningTree {
    /// Validates that `edges` is a spanning tree of `g`.
    pub fn new(g: &Graph, edges: EdgeSet) -> Result<SpanningTree, SpanError> {
        if !is_spanning_tree(g, &edges) {
            return Err(SpanError::NotASpanningTree);
        }
        Ok(SpanningTree { edges })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.contains(edge)
    }
}

fn is_spanning_tree(g: &Graph, edges: &EdgeSet) -> bool {
    if edges.capacity() != g.edge_count() {
        return false;
    }
    let n = g.vertex_count();
    if n == 0 {
        return edges.is_empty();
    }
    if edges.len() != n - 1 {
        return false;
    }
    let mut uf = UnionFind::new(n);
    for e in edges.iter() {
        let (u, v) = g.endpoints(e);
        if !uf.union(u, v) {
            return false; // cycle
        }
    }
    uf.component_count() == 1
}

/// All spanning trees of `g`, each exactly once, sorted by bit pattern.
///
/// Include/exclude recursion on edges: the lowest-id edge joining two
/// components of the partial forest is either taken or banned, and a branch
/// is explored only while the unbanned edges still connect the graph (a
/// bridge of the remaining graph is therefore forced into every tree).
pub fn enumerate_spanning_trees(g: &Graph, limit: u64) -> Result<Vec<SpanningTree>, SpanError> {
    if !g.is_connected() {
        return Err(SpanError::Disconnected);
    }
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(vec![SpanningTree { edges: g.empty_edge_set() }]);
    }
    let mut out = Vec::new();
    let mut forest = g.empty_edge_set();
    let uf = UnionFind::new(n);
    let banned = g.empty_edge_set();
    recurse_trees(g, &mut forest, uf, banned, 0, limit, &mut out)?;
    out.sort_unstable();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    Ok(out)
}

fn recurse_trees(
    g: &Graph,
    forest: &mut EdgeSet,
    mut uf: UnionFind,
    banned: EdgeSet,
    picked: usize,
    limit: u64,
    out: &mut Vec<SpanningTree>,
) -> Result<(), SpanError> {
    if picked == g.vertex_count() - 1 {
        if out.len() as u64 >= limit {
            return Err(SpanError::TreeLimitExceeded(limit));
        }
        out.push(SpanningTree { edges: *forest });
        return Ok(());
    }
    // Lowest-id usable edge: not banned, joins two forest components.
    let mut pick = None;
    for e in 0..g.edge_count() {
        if banned.contains(e) || forest.contains(e) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        if !uf.same(u, v) {
            pick = Some(e);
            break;
        }
    }
    // Connectivity pruning guarantees a usable edge exists.
    let e = pick.expect("partial forest must be extendable");
    let (u, v) = g.endpoints(e);

    // Branch 1: e in the tree.
    let mut with_uf = uf.clone();
    with_uf.union(u, v);
    forest.insert(e);
    recurse_trees(g, forest, with_uf, banned, picked + 1, limit, out)?;
    forest.remove(e);

    // Branch 2: e banned, viable only if the remaining edges still connect.
    let mut banned = banned;
    banned.insert(e);
    if connects_all(g, &banned) {
        recurse_trees(g, forest, uf, banned, picked, limit, out)?;
    }
    Ok(())
}

/// True iff the graph minus `banned` edges is connected.
fn connects_all(g: &Graph, banned: &EdgeSet) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(w, e) in g.neighbors(v) {
            if !banned.contains(e) && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Exact spanning-tree count by the determinant of a Laplacian minor,
/// computed with fraction-free (Bareiss) elimination over big integers.
pub fn count_spanning_trees(g: &Graph) -> Result<BigUint, SpanError> {
    if !g.is_connected() {
        return Err(SpanError::Disconnected);
    }
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(BigUint::from(1u32));
    }
    let dim = n - 1;
    // Laplacian with the last row and column dropped.
    let mut a = vec![vec![BigInt::from(0); dim]; dim];
    for v in 0..dim {
        a[v][v] = BigInt::from(g.neighbors(v).len());
    }
    for &(u, v) in g.edges() {
        if u < dim && v < dim {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    let det = bareiss_determinant(&mut a);
    match det.to_biguint() {
        Some(count) => Ok(count),
        None => unreachable!("tree count of a connected graph is positive"),
    }
}

/// Fraction-free elimination; all intermediate divisions are exact.
fn bareiss_determinant(a: &mut [Vec<BigInt>]) -> BigInt {
    let dim = a.len();
    if dim == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..dim - 1 {
        if a[k][k] == BigInt::from(0) {
            let Some(swap) = (k + 1..dim).find(|&r| a[r][k] != BigInt::from(0)) else {
                return BigInt::from(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::from(0);
        }
        prev = a[k][k].clone();
    }
    let det = a[dim - 1][dim - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Fundamental cycles of `t`: for each non-tree edge, the unique cycle in
/// the tree plus that edge, in non-tree-edge id order.
pub fn fundamental_cycles(g: &Graph, t: &SpanningTree) -> Result<Vec<EdgeSet>, SpanError> {
    Ok(fundamental_cycles_with_edges(g, t)?.into_iter().map(|(_, c)| c).collect())
}

/// Fundamental cycles paired with their defining non-tree edge id.
pub fn fundamental_cycles_with_edges(
    g: &Graph,
    t: &SpanningTree,
) -> Result<Vec<(usize, EdgeSet)>, SpanError> {
    if !is_spanning_tree(g, t.edges()) {
        return Err(SpanError::NotASpanningTree);
    }
    let n = g.vertex_count();
    // Root the tree once; each fundamental cycle follows parent pointers.
    let mut parent_edge = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    if n > 0 {
        let mut stack = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, e) in g.neighbors(v) {
                if t.contains(e) && !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    parent_edge[w] = e;
                    depth[w] = depth[v] + 1;
                    stack.push(w);
                }
            }
        }
    }
    let mut cycles = Vec::with_capacity(g.edge_count() + 1 - n);
    for e in 0..g.edge_count() {
        if t.contains(e) {
            continue;
        }
        let (mut u, mut v) = g.endpoints(e);
        let mut cycle = g.empty_edge_set();
        cycle.insert(e);
        while depth[u] > depth[v] {
            cycle.insert(parent_edge[u]);
            u = parent[u];
        }
        while depth[v] > depth[u] {
            cycle.insert(parent_edge[v]);
            v = parent[v];
        }
        while u != v {
            cycle.insert(parent_edge[u]);
            cycle.insert(parent_edge[v]);
            u = parent[u];
            v = parent[v];
        }
        cycles.push((e, cycle));
    }
    Ok(cycles)
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
    fn triangle_has_three_trees() {
        let g = triangle();
        let trees = enumerate_spanning_trees(&g, 1 << 20).unwrap();
        assert_eq!(trees.len(), 3);
        assert_eq!(count_spanning_trees(&g).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn k4_has_sixteen_trees() {
        let g = k4();
        let trees = enumerate_spanning_trees(&g, 1 << 20).unwrap();
        assert_eq!(trees.len(), 16);
        assert_eq!(count_spanning_trees(&g).unwrap(), BigUint::from(16u32));
    }

    #[test]
    fn a_tree_has_one_spanning_tree() {
        let path4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let trees = enumerate_spanning_trees(&path4, 1 << 20).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].edges().len(), 3);
        assert_eq!(count_spanning_trees(&path4).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn disconnected_inputs_are_rejected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(enumerate_spanning_trees(&g, 10).unwrap_err(), SpanError::Disconnected);
        assert_eq!(count_spanning_trees(&g).unwrap_err(), SpanError::Disconnected);
    }

    #[test]
    fn tree_limit_guard() {
        assert_eq!(
            enumerate_spanning_trees(&k4(), 10).unwrap_err(),
            SpanError::TreeLimitExceeded(10)
        );
    }

    #[test]
    fn spanning_tree_validation() {
        let g = triangle();
        assert!(SpanningTree::new(&g, g.edge_set_of([0, 1])).is_ok());
        assert_eq!(
            SpanningTree::new(&g, g.edge_set_of([0, 1, 2])).unwrap_err(),
            SpanError::NotASpanningTree
        );
        let disconnected = Graph::new(4, &[(0, 1), (1, 0usize.wrapping_add(2)), (2, 3), (3, 0)]).unwrap();
        assert_eq!(
            SpanningTree::new(&disconnected, disconnected.edge_set_of([0, 1, 3])).unwrap_err(),
            SpanError::NotASpanningTree
        );
    }

    #[test]
    fn fundamental_cycles_of_triangle() {
        let g = triangle();
        let t = SpanningTree::new(&g, g.edge_set_of([0, 1])).unwrap();
        let cycles = fundamental_cycles(&g, &t).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0], g.edge_set_of([0, 1, 2]));
    }

    #[test]
    fn fundamental_cycles_contain_one_non_tree_edge() {
        let g = k4();
        for tree in enumerate_spanning_trees(&g, 1 << 20).unwrap() {
            let cycles = fundamental_cycles_with_edges(&g, &tree).unwrap();
            assert_eq!(cycles.len(), 3);
            for (e, c) in cycles {
                assert!(g.is_cycle(&c));
                assert!(c.contains(e));
                assert_eq!(c.iter().filter(|&f| !tree.contains(f)).count(), 1);
            }
        }
    }
}
