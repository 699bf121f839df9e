/*!
Simple undirected graphs on at most 64 vertices.

Vertices are dense 0-based labels; adjacency is one `u64` bitset per vertex.
Graphs are immutable values: every edit returns a new graph, and vertex
deletion compacts the remaining labels. The 64-vertex cap keeps distances
below 64, which is what lets closeness stay inside a 128-bit dyadic.
*/

use std::fmt;

use thiserror::Error;

use crate::dyadic::Dyadic;

/// Hard cap on graph order. Distances are then at most 63, so closeness sums
/// fit comfortably in a `Dyadic`.
pub const MAX_ORDER: usize = 64;

/// Distance marker for vertices not reached by a BFS.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} outside supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) already present")]
    EdgeExists(usize, usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("combined order {0} exceeds {MAX_ORDER}")]
    CombinedOrderTooLarge(usize),
}

/// An undirected simple graph with `order() <= 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

/// BFS distances from a single source. `dist[v]` is a hop count, or
/// [`UNREACHABLE`] if `v` lies in another component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    pub dist: Vec<u32>,
}

impl Graph {
    /// The edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Graph, GraphError> {
        if order == 0 || order > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(order));
        }
        Ok(Graph { adj: vec![0; order] })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order() {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.order() })
        } else {
            Ok(())
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] & (1 << v) != 0
    }

    /// Neighborhood of `u` as a bitmask.
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// All vertices as a bitmask.
    pub fn vertex_mask(&self) -> u64 {
        mask_below(self.order())
    }

    /// Edges in ascending `(u, v)` order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            let above = self.adj[u] & !mask_below(u + 1);
            BitIter(above).map(move |v| (u, v))
        })
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u, v));
        }
        let mut g = self.clone();
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    /// Removes `v` and compacts the labels above it down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        if self.order() == 1 {
            return Err(GraphError::OrderOutOfRange(0));
        }
        let low = mask_below(v);
        let adj = (0..self.order())
            .filter(|&u| u != v)
            .map(|u| {
                let row = self.adj[u];
                (row & low) | ((row >> 1) & !low)
            })
            .collect();
        Ok(Graph { adj })
    }

    /// Complement within the same vertex set (no self-loops).
    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let adj = (0..self.order())
            .map(|u| !self.adj[u] & all & !(1 << u))
            .collect();
        Graph { adj }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let total = self.order() + other.order();
        if total > MAX_ORDER {
            return Err(GraphError::CombinedOrderTooLarge(total));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&row| row << self.order()));
        Ok(Graph { adj })
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = mask_below(self.order());
        let right = g.vertex_mask() & !left;
        for u in 0..self.order() {
            g.adj[u] |= right;
        }
        for u in self.order()..g.order() {
            g.adj[u] |= left;
        }
        Ok(g)
    }

    /// Adds a fresh vertex whose neighborhood is `mask` (over the existing
    /// vertices). Used by the enumerator.
    pub(crate) fn extend_with_vertex(&self, mask: u64) -> Graph {
        debug_assert!(self.order() < MAX_ORDER);
        debug_assert_eq!(mask & !self.vertex_mask(), 0);
        let v = self.order();
        let mut adj = self.adj.clone();
        adj.push(mask);
        let mut m = mask;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            adj[u] |= 1 << v;
        }
        Graph { adj }
    }

    /// Relabels so that position `i` of the result holds `position_to_vertex[i]`.
    pub fn relabeled(&self, position_to_vertex: &[usize]) -> Graph {
        let n = self.order();
        debug_assert_eq!(position_to_vertex.len(), n);
        let mut pos_of = vec![0usize; n];
        for (i, &v) in position_to_vertex.iter().enumerate() {
            pos_of[v] = i;
        }
        let mut adj = vec![0u64; n];
        for (i, &v) in position_to_vertex.iter().enumerate() {
            let mut m = self.adj[v];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                adj[i] |= 1 << pos_of[w];
            }
        }
        Graph { adj }
    }

    /// Bitmask of everything reachable from `start` (including it).
    pub(crate) fn reach_mask(&self, start: usize) -> u64 {
        let mut visited = 1u64 << start;
        let mut frontier = visited;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !visited;
            visited |= frontier;
        }
        visited
    }

    /// True iff one BFS from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        self.reach_mask(0) == self.vertex_mask()
    }

    /// Calls `f(d, mask)` for every BFS level `d >= 1` out of `src`.
    fn bfs_levels(&self, src: usize, mut f: impl FnMut(u32, u64)) {
        let mut visited = 1u64 << src;
        let mut frontier = visited;
        let mut d = 0u32;
        loop {
            let mut next = 0u64;
            let mut m = frontier;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= self.adj[v];
            }
            next &= !visited;
            if next == 0 {
                return;
            }
            d += 1;
            visited |= next;
            f(d, next);
            frontier = next;
        }
    }

    pub fn bfs_distances(&self, u: usize) -> Result<DistanceRow, GraphError> {
        self.check_vertex(u)?;
        let mut dist = vec![UNREACHABLE; self.order()];
        dist[u] = 0;
        self.bfs_levels(u, |d, mask| {
            for v in BitIter(mask) {
                dist[v] = d;
            }
        });
        Ok(DistanceRow { source: u, dist })
    }

    /// `sum over v != u of 2^-d(u,v)`, with unreachable vertices contributing 0.
    pub fn vertex_closeness(&self, u: usize) -> Result<Dyadic, GraphError> {
        self.check_vertex(u)?;
        let mut counts = [0i128; MAX_ORDER];
        let mut maxd = 0u32;
        self.bfs_levels(u, |d, mask| {
            counts[d as usize] += mask.count_ones() as i128;
            maxd = d;
        });
        Ok(weighted_pair_sum(&counts, maxd))
    }

    /// Closeness `C(G)`: the sum of `2^-d(u,v)` over ordered pairs `u != v`.
    pub fn closeness(&self) -> Dyadic {
        let mut counts = [0i128; MAX_ORDER];
        let mut maxd = 0u32;
        for u in 0..self.order() {
            self.bfs_levels(u, |d, mask| {
                counts[d as usize] += mask.count_ones() as i128;
                maxd = maxd.max(d);
            });
        }
        weighted_pair_sum(&counts, maxd)
    }
}

/// `sum over d of counts[d] * 2^-d` as an exact dyadic. With at most 64*63
/// ordered pairs and d < 64, the aligned numerator stays below 2^76.
fn weighted_pair_sum(counts: &[i128; MAX_ORDER], maxd: u32) -> Dyadic {
    if maxd == 0 {
        return Dyadic::zero();
    }
    let mut numer = 0i128;
    for d in 1..=maxd {
        numer += counts[d as usize] << (maxd - d);
    }
    Dyadic::new(numer, maxd)
}

fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

// Debug spells out the edge list; assertion failures in tests are unreadable
// otherwise.
impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert_eq!(Graph::empty(0).unwrap_err(), GraphError::OrderOutOfRange(0));
        assert_eq!(Graph::empty(65).unwrap_err(), GraphError::OrderOutOfRange(65));
        assert!(Graph::empty(64).is_ok());
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 3, order: 3 }
        );
        // Duplicates collapse.
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn edits_are_persistent() {
        let g = path(4);
        let h = g.delete_edge(1, 2).unwrap();
        assert_eq!(g.size(), 3);
        assert_eq!(h.size(), 2);
        assert!(g.has_edge(1, 2) && !h.has_edge(1, 2));
        assert_eq!(h.add_edge(1, 2).unwrap(), g);
        assert_eq!(g.add_edge(0, 1).unwrap_err(), GraphError::EdgeExists(0, 1));
        assert_eq!(h.delete_edge(1, 2).unwrap_err(), GraphError::MissingEdge(1, 2));
    }

    #[test]
    fn vertex_deletion_compacts() {
        // P_4 minus an inner vertex: K_2 on the old {2,3}, now {1,2}, plus
        // the isolated old vertex 0.
        let g = path(4).delete_vertex(1).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(
            Graph::empty(1).unwrap().delete_vertex(0).unwrap_err(),
            GraphError::OrderOutOfRange(0)
        );
    }

    #[test]
    fn complement_and_union_and_join() {
        assert_eq!(complete(5).complement(), Graph::empty(5).unwrap());
        assert_eq!(Graph::empty(4).unwrap().complement(), complete(4));

        let u = path(3).disjoint_union(&complete(2)).unwrap();
        assert_eq!(u.order(), 5);
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (3, 4)]);

        // K_2 joined with (K_1 + K_2): 1 + 1 + 6 cross edges.
        let right = Graph::empty(1).unwrap().disjoint_union(&complete(2)).unwrap();
        let j = complete(2).join(&right).unwrap();
        assert_eq!(j.order(), 5);
        assert_eq!(j.size(), 8);
        assert!(j.has_edge(0, 2) && j.has_edge(1, 4));

        let too_big = complete(40).disjoint_union(&complete(30));
        assert_eq!(too_big.unwrap_err(), GraphError::CombinedOrderTooLarge(70));
    }

    #[test]
    fn distances() {
        let g = path(4);
        let row = g.bfs_distances(0).unwrap();
        assert_eq!(row.dist, vec![0, 1, 2, 3]);
        let two = Graph::empty(2).unwrap();
        assert_eq!(two.bfs_distances(0).unwrap().dist, vec![0, UNREACHABLE]);
        assert!(g.bfs_distances(7).is_err());
        assert!(path(2).is_connected());
        assert!(!two.is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn closeness_matches_known_values() {
        // C(K_n) = n(n-1)/2.
        for n in 2..=10 {
            assert_eq!(complete(n).closeness(), Dyadic::from_int((n * (n - 1) / 2) as i128));
        }
        // C(P_m) = 2m - 4 + 2^(2-m).
        assert_eq!(path(3).closeness(), Dyadic::new(5, 1));
        assert_eq!(path(5).closeness(), Dyadic::new(49, 3));
        assert_eq!(Graph::empty(3).unwrap().closeness(), Dyadic::zero());
        // Unreachable pairs contribute nothing: C(K_2 + K_1) = 1.
        let g = complete(2).disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(g.closeness(), Dyadic::from_int(1));
    }

    #[test]
    fn closeness_is_additive_and_decomposes_per_vertex() {
        let a = path(4);
        let b = complete(3);
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(u.closeness(), a.closeness() + b.closeness());

        let per_vertex: Dyadic = (0..a.order())
            .map(|v| a.vertex_closeness(v).unwrap())
            .sum();
        assert_eq!(per_vertex, a.closeness());
    }

    #[test]
    fn relabeling_preserves_structure() {
        let g = path(4);
        let h = g.relabeled(&[3, 1, 0, 2]);
        assert_eq!(h.size(), g.size());
        assert_eq!(h.closeness(), g.closeness());
        // Degree multiset survives.
        let mut dg: Vec<_> = (0..4).map(|v| g.degree(v)).collect();
        let mut dh: Vec<_> = (0..4).map(|v| h.degree(v)).collect();
        dg.sort_unstable();
        dh.sort_unstable();
        assert_eq!(dg, dh);
    }

    #[test]
    fn order_64_round_trip() {
        let g = complete(64);
        assert_eq!(g.size(), 64 * 63 / 2);
        assert_eq!(g.closeness(), Dyadic::from_int(64 * 63 / 2));
        assert!(g.is_connected());
        assert_eq!(g.complement().size(), 0);
    }
}
