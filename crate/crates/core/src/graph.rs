//! Simple undirected graphs on the vertex set `0..n`, their metric, and the
//! constructive operations used by the family generators.

use std::collections::VecDeque;

use thiserror::Error;

pub type Vertex = usize;

/// Marker stored in a [`DistanceData`] matrix for pairs in different components.
pub const INFINITE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("common neighbors of a vertex with itself are undefined (vertex {0})")]
    SameVertex(Vertex),
    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Immutable simple graph. Neighbor lists are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    matrix: Vec<bool>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from unordered vertex pairs. Duplicates (in either
    /// orientation) and self-loops are rejected rather than dropped.
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut matrix = vec![false; n * n];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if matrix[u * n + v] {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, matrix })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
        }
    }

    /// Builds from a symmetric predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(Vertex, Vertex) -> bool) -> Self {
        let mut matrix = vec![false; n * n];
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    matrix[u * n + v] = true;
                    matrix[v * n + u] = true;
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Graph { adj, matrix };
        g.assert_invariants();
        g
    }

    fn assert_invariants(&self) {
        let n = self.order();
        assert_eq!(self.matrix.len(), n * n);
        for u in 0..n {
            assert!(!self.matrix[u * n + u], "self-loop at {u}");
            for &v in &self.adj[u] {
                assert!(self.matrix[v * n + u], "asymmetric adjacency {u}-{v}");
            }
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.matrix[u * self.order() + v]
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The common degree if the graph is regular. The null graph counts as 0-regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        bfs_levels(self, 0).iter().all(|&d| d != INFINITE)
    }

    /// All-pairs breadth-first distances.
    pub fn distances(&self) -> DistanceData {
        DistanceData::new(self)
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.fill(usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                // Cycles found deeper than this cannot beat `best`.
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Exact clique number by branch and bound with a greedy-coloring bound.
    pub fn clique_number(&self) -> usize {
        let n = self.order();
        if n == 0 {
            return 0;
        }
        let mut order: Vec<Vertex> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut best = 1;
        let mut current = 0;
        self.expand_clique(order, &mut current, &mut best);
        best
    }

    fn expand_clique(&self, candidates: Vec<Vertex>, size: &mut usize, best: &mut usize) {
        let (ordered, colors) = self.greedy_color(&candidates);
        for idx in (0..ordered.len()).rev() {
            if *size + colors[idx] <= *best {
                return;
            }
            let v = ordered[idx];
            *size += 1;
            let next: Vec<Vertex> = ordered[..idx]
                .iter()
                .copied()
                .filter(|&w| self.adjacent(v, w))
                .collect();
            if next.is_empty() {
                *best = (*best).max(*size);
            } else {
                self.expand_clique(next, size, best);
            }
            *size -= 1;
        }
    }

    /// Sequential greedy coloring; returns vertices sorted by color with the
    /// color (1-based) of each position.
    fn greedy_color(&self, candidates: &[Vertex]) -> (Vec<Vertex>, Vec<usize>) {
        let mut classes: Vec<Vec<Vertex>> = Vec::new();
        for &v in candidates {
            match classes
                .iter_mut()
                .find(|c| c.iter().all(|&w| !self.adjacent(v, w)))
            {
                Some(class) => class.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut ordered = Vec::with_capacity(candidates.len());
        let mut colors = Vec::with_capacity(candidates.len());
        for (c, class) in classes.into_iter().enumerate() {
            for v in class {
                ordered.push(v);
                colors.push(c + 1);
            }
        }
        (ordered, colors)
    }

    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>, GraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(self.adj[u]
            .iter()
            .copied()
            .filter(|&w| self.adjacent(v, w))
            .collect())
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.order(), |u, v| !self.adjacent(u, v))
    }

    /// Line graph together with the edge of `self` behind each new vertex.
    pub fn line_graph(&self) -> (Graph, Vec<(Vertex, Vertex)>) {
        let edges: Vec<_> = self.edges().collect();
        let g = Graph::from_fn(edges.len(), |a, b| {
            let (x, y) = edges[a];
            let (z, w) = edges[b];
            x == z || x == w || y == z || y == w
        });
        (g, edges)
    }

    /// Cartesian product; vertex `(a, b)` becomes `a * other.order() + b`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let m = other.order();
        Graph::from_fn(self.order() * m, |x, y| {
            let (a1, b1) = (x / m, x % m);
            let (a2, b2) = (y / m, y % m);
            (a1 == a2 && other.adjacent(b1, b2)) || (b1 == b2 && self.adjacent(a1, a2))
        })
    }

    /// Inverts the edges between the two parts of a bipartition.
    pub fn bipartite_complement(
        &self,
        left: &[Vertex],
        right: &[Vertex],
    ) -> Result<Graph, GraphError> {
        let n = self.order();
        let mut side = vec![None; n];
        for (tag, part) in [(0u8, left), (1u8, right)] {
            for &v in part {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        order: n,
                    });
                }
                if side[v].is_some() {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {v} listed twice"
                    )));
                }
                side[v] = Some(tag);
            }
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(GraphError::InvalidPartition(format!(
                "vertex {v} in neither part"
            )));
        }
        if let Some((u, v)) = self.edges().find(|&(u, v)| side[u] == side[v]) {
            return Err(GraphError::InvalidPartition(format!(
                "edge {{{u}, {v}}} inside a part"
            )));
        }
        Ok(Graph::from_fn(n, |u, v| {
            side[u] != side[v] && !self.adjacent(u, v)
        }))
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        let n = self.order();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        Graph::from_fn(n, |u, v| self.adjacent(inv[u], inv[v]))
    }

    /// Whether `perm` maps edges to edges (and hence non-edges to non-edges).
    pub fn is_automorphism(&self, perm: &[Vertex]) -> bool {
        let n = self.order();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        self.edges().all(|(u, v)| self.adjacent(perm[u], perm[v]))
    }
}

fn bfs_levels(g: &Graph, root: Vertex) -> Vec<u32> {
    let mut dist = vec![INFINITE; g.order()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == INFINITE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs shortest-path data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceData {
    n: usize,
    dist: Vec<u32>,
    diameter: usize,
    connected: bool,
    // kseq[v][m] = number of vertices at distance m from v, m <= diameter.
    kseq: Vec<Vec<usize>>,
}

impl DistanceData {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut dist = Vec::with_capacity(n * n);
        for v in 0..n {
            dist.extend(bfs_levels(g, v));
        }
        let connected = dist.iter().all(|&d| d != INFINITE);
        let diameter = dist
            .iter()
            .filter(|&&d| d != INFINITE)
            .max()
            .copied()
            .unwrap_or(0) as usize;
        let kseq = (0..n)
            .map(|v| {
                let mut counts = vec![0; diameter + 1];
                for &d in &dist[v * n..(v + 1) * n] {
                    if d != INFINITE {
                        counts[d as usize] += 1;
                    }
                }
                counts
            })
            .collect();
        DistanceData {
            n,
            dist,
            diameter,
            connected,
            kseq,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Raw distance; [`INFINITE`] across components.
    #[inline]
    pub fn raw(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Distance as `usize`, `None` across components.
    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let d = self.raw(u, v);
        (d != INFINITE).then_some(d as usize)
    }

    /// Distance in a graph known to be connected.
    #[inline]
    pub fn d(&self, u: Vertex, v: Vertex) -> usize {
        self.raw(u, v) as usize
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// `k_m(v)`: number of vertices at distance `m` from `v` (0 past the diameter).
    pub fn k(&self, v: Vertex, m: usize) -> usize {
        self.kseq[v].get(m).copied().unwrap_or(0)
    }

    pub fn kseq(&self, v: Vertex) -> &[usize] {
        &self.kseq[v]
    }

    /// Vertices at distance exactly `m` from `v`, ascending.
    pub fn sphere(&self, v: Vertex, m: usize) -> Vec<Vertex> {
        (0..self.n)
            .filter(|&w| self.raw(v, w) == m as u32)
            .collect()
    }

    /// Ordered pairs at distance `m`, lexicographic.
    pub fn pairs_at(&self, m: usize) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.n;
        (0..n * n)
            .filter(move |&i| self.dist[i] == m as u32)
            .map(move |i| (i / n, i % n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    #[test]
    fn edge_list_construction() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, complete(3));
        assert_eq!(k3.edge_count(), 3);

        let single = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(single.order(), 1);
        assert_eq!(single.edge_count(), 0);

        let c5 = cycle(5);
        assert_eq!(c5.regular_degree(), Some(2));
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn pentagon_metric() {
        let c5 = cycle(5);
        let dd = c5.distances();
        assert_eq!(dd.get(0, 2), Some(2));
        assert_eq!(dd.diameter(), 2);
        assert_eq!(dd.kseq(0), &[1, 2, 2]);
        assert_eq!(c5.girth(), Some(5));
    }

    #[test]
    fn disconnected_uses_infinite_marker() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let dd = g.distances();
        assert!(!dd.is_connected());
        assert_eq!(dd.raw(0, 2), INFINITE);
        assert_eq!(dd.get(0, 3), None);
        assert_eq!(dd.diameter(), 1);
        assert!(!g.is_connected());
    }

    #[test]
    fn girth_of_forest_and_triangle() {
        let path = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), None);
        assert_eq!(complete(3).girth(), Some(3));
        assert_eq!(cycle(4).girth(), Some(4));
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(complete(5).clique_number(), 5);
        assert_eq!(cycle(5).clique_number(), 2);
        assert_eq!(Graph::empty(3).clique_number(), 1);
        assert_eq!(Graph::empty(0).clique_number(), 0);
    }

    #[test]
    fn common_neighbors_rejects_same_vertex() {
        let g = complete(4);
        assert_eq!(g.common_neighbors(1, 1), Err(GraphError::SameVertex(1)));
        assert_eq!(g.common_neighbors(0, 1).unwrap(), vec![2, 3]);
    }

    #[test]
    fn complement_basics() {
        assert_eq!(complete(4).complement(), Graph::empty(4));
        let c5 = cycle(5);
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn line_graph_degrees() {
        let c6 = cycle(6);
        let (l, edges) = c6.line_graph();
        assert_eq!(edges.len(), 6);
        assert_eq!(l.regular_degree(), Some(2));
        assert!(l.is_connected());

        let (lk4, _) = complete(4).line_graph();
        assert_eq!(lk4.order(), 6);
        assert_eq!(lk4.regular_degree(), Some(4));
    }

    #[test]
    fn cartesian_products() {
        let k2 = complete(2);
        let c4 = k2.cartesian_product(&k2);
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.regular_degree(), Some(2));
        assert_eq!(c4.girth(), Some(4));

        let k3 = complete(3);
        let rook = k3.cartesian_product(&k3);
        assert_eq!(rook.order(), 9);
        assert_eq!(rook.regular_degree(), Some(4));

        let k4 = complete(4);
        let rook4 = k4.cartesian_product(&k4);
        assert_eq!(rook4.order(), 16);
        assert_eq!(rook4.regular_degree(), Some(6));
        assert_eq!(rook4.clique_number(), 4);
    }

    #[test]
    fn bipartite_complement_of_complete_bipartite_is_empty() {
        let left = [0, 1, 2];
        let right = [3, 4, 5];
        let k33 = Graph::from_fn(6, |u, v| (u < 3) != (v < 3));
        let empty = k33.bipartite_complement(&left, &right).unwrap();
        assert_eq!(empty, Graph::empty(6));
        assert_eq!(empty.bipartite_complement(&left, &right).unwrap(), k33);
    }

    #[test]
    fn bipartite_complement_rejects_bad_partitions() {
        let c4 = cycle(4);
        assert!(matches!(
            c4.bipartite_complement(&[0, 1], &[2, 3]),
            Err(GraphError::InvalidPartition(_))
        ));
        assert!(matches!(
            c4.bipartite_complement(&[0], &[1, 3]),
            Err(GraphError::InvalidPartition(_))
        ));
        assert!(matches!(
            c4.bipartite_complement(&[0, 2, 0], &[1, 3]),
            Err(GraphError::InvalidPartition(_))
        ));
        assert!(c4.bipartite_complement(&[0, 2], &[1, 3]).is_ok());
    }

    #[test]
    fn permutation_checks() {
        let c5 = cycle(5);
        assert!(c5.is_automorphism(&[1, 2, 3, 4, 0]));
        assert!(!c5.is_automorphism(&[1, 0, 2, 3, 4]));
        assert!(!c5.is_automorphism(&[0, 0, 2, 3, 4]));
        assert_eq!(c5.permuted(&[1, 2, 3, 4, 0]), c5);
    }
}
