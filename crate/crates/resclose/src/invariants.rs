/*!
Classical graph parameters that the closed-form bounds are conditioned on.

Everything here is exact. Parameters whose only exact algorithms are
exponential (connectivity by subset search, independence, matching,
chromatic number, vertex bipartiteness) refuse graphs above
[`EXPONENTIAL_CAP`] vertices instead of silently taking hours; the
polynomial ones (edge connectivity, minimum degree, cut edges and
vertices, pendant edges) run at any supported order.
*/

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{BitIter, Graph};

/// Order limit for the exponential-time parameters.
pub const EXPONENTIAL_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("{kind} on {order} vertices exceeds the exponential-search cap of {EXPONENTIAL_CAP}")]
    OrderTooLarge { kind: ParameterKind, order: usize },
    #[error("unknown parameter {0:?}")]
    UnknownParameter(String),
}

/// The parameters a bound can be conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParameterKind {
    VertexConnectivity,
    EdgeConnectivity,
    MinDegree,
    IndependenceNumber,
    MatchingNumber,
    ChromaticNumber,
    VertexBipartiteness,
    CutEdges,
    CutVertices,
    PendantEdges,
}

impl ParameterKind {
    pub const ALL: [ParameterKind; 10] = [
        ParameterKind::VertexConnectivity,
        ParameterKind::EdgeConnectivity,
        ParameterKind::MinDegree,
        ParameterKind::IndependenceNumber,
        ParameterKind::MatchingNumber,
        ParameterKind::ChromaticNumber,
        ParameterKind::VertexBipartiteness,
        ParameterKind::CutEdges,
        ParameterKind::CutVertices,
        ParameterKind::PendantEdges,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParameterKind::VertexConnectivity => "vertex-connectivity",
            ParameterKind::EdgeConnectivity => "edge-connectivity",
            ParameterKind::MinDegree => "min-degree",
            ParameterKind::IndependenceNumber => "independence",
            ParameterKind::MatchingNumber => "matching",
            ParameterKind::ChromaticNumber => "chromatic",
            ParameterKind::VertexBipartiteness => "vertex-bipartiteness",
            ParameterKind::CutEdges => "cut-edges",
            ParameterKind::CutVertices => "cut-vertices",
            ParameterKind::PendantEdges => "pendant-edges",
        }
    }
}

impl fmt::Display for ParameterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParameterKind {
    type Err = InvariantError;
    fn from_str(s: &str) -> Result<ParameterKind, InvariantError> {
        ParameterKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| InvariantError::UnknownParameter(s.to_string()))
    }
}

/// Evaluates one parameter on `g`.
pub fn parameter(g: &Graph, kind: ParameterKind) -> Result<usize, InvariantError> {
    match kind {
        ParameterKind::VertexConnectivity => vertex_connectivity(g),
        ParameterKind::EdgeConnectivity => Ok(edge_connectivity(g)),
        ParameterKind::MinDegree => Ok(min_degree(g)),
        ParameterKind::IndependenceNumber => independence_number(g),
        ParameterKind::MatchingNumber => matching_number(g),
        ParameterKind::ChromaticNumber => chromatic_number(g),
        ParameterKind::VertexBipartiteness => vertex_bipartiteness(g),
        ParameterKind::CutEdges => Ok(bridges(g).len()),
        ParameterKind::CutVertices => Ok(cut_vertices(g).len()),
        ParameterKind::PendantEdges => Ok(pendant_edges(g).len()),
    }
}

fn check_cap(g: &Graph, kind: ParameterKind) -> Result<(), InvariantError> {
    if g.order() > EXPONENTIAL_CAP {
        Err(InvariantError::OrderTooLarge { kind, order: g.order() })
    } else {
        Ok(())
    }
}

/// True when the vertices in `mask` induce a connected subgraph. The empty
/// mask is vacuously connected.
fn connected_within(g: &Graph, mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let mut visited = 1u64 << mask.trailing_zeros();
    loop {
        let mut next = 0u64;
        for v in BitIter(visited) {
            next |= g.neighbors(v);
        }
        next &= mask & !visited;
        if next == 0 {
            return visited == mask;
        }
        visited |= next;
    }
}

/// Gosper's hack: visits every `k`-subset of `n` bits in ascending order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    debug_assert!(k >= 1 && n < 64);
    let mut s = (1u64 << k) - 1;
    while s < 1u64 << n {
        if f(s) {
            return true;
        }
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = ((r ^ s) >> 2) / c | r;
    }
    false
}

/// Smallest number of vertices whose deletion disconnects the graph, by
/// subset search; `n - 1` for complete graphs, 0 for disconnected ones.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, InvariantError> {
    check_cap(g, ParameterKind::VertexConnectivity)?;
    let n = g.order();
    if !g.is_connected() {
        return Ok(0);
    }
    if g.size() == n * (n - 1) / 2 {
        return Ok(n - 1);
    }
    let all = g.vertex_mask();
    for k in 1..=n - 2 {
        let found = for_each_subset(n, k, |s| !connected_within(g, all & !s));
        if found {
            return Ok(k);
        }
    }
    unreachable!("a connected non-complete graph has a cutting set of at most n - 2 vertices")
}

/// Unit-capacity max flow between two vertices, counting edge-disjoint
/// paths. Each undirected edge is a capacity-one arc in both directions.
fn edge_disjoint_paths(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.order();
    let mut cap = vec![vec![0u8; n]; n];
    for (u, v) in g.edges() {
        cap[u][v] = 1;
        cap[v][u] = 1;
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut v = t;
        while v != s {
            let u = prev[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Smallest number of edges whose deletion disconnects the graph. By
/// Menger this is the minimum over targets of the edge-disjoint path count
/// from a fixed source.
pub fn edge_connectivity(g: &Graph) -> usize {
    (1..g.order())
        .map(|t| edge_disjoint_paths(g, 0, t))
        .min()
        .unwrap_or(0)
}

pub fn min_degree(g: &Graph) -> usize {
    (0..g.order()).map(|v| g.degree(v)).min().expect("order is positive")
}

/// Largest set of pairwise non-adjacent vertices, by branch and bound on
/// the vertex of highest remaining degree.
pub fn independence_number(g: &Graph) -> Result<usize, InvariantError> {
    check_cap(g, ParameterKind::IndependenceNumber)?;
    fn grow(g: &Graph, candidates: u64, current: u32, best: &mut u32) {
        if current + candidates.count_ones() <= *best {
            return;
        }
        let Some(v) = BitIter(candidates)
            .max_by_key(|&v| (g.neighbors(v) & candidates).count_ones())
        else {
            *best = (*best).max(current);
            return;
        };
        grow(g, candidates & !(1 << v) & !g.neighbors(v), current + 1, best);
        grow(g, candidates & !(1 << v), current, best);
    }
    let mut best = 0;
    grow(g, g.vertex_mask(), 0, &mut best);
    Ok(best as usize)
}

/// Largest set of pairwise disjoint edges, by subset dynamic programming:
/// the lowest vertex of a mask is either unmatched or matched to one of
/// its neighbors inside the mask.
pub fn matching_number(g: &Graph) -> Result<usize, InvariantError> {
    check_cap(g, ParameterKind::MatchingNumber)?;
    let n = g.order();
    let mut dp = vec![0u8; 1 << n];
    for mask in 1..1u64 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = dp[rest as usize];
        for u in BitIter(g.neighbors(v) & rest) {
            best = best.max(1 + dp[(rest & !(1 << u)) as usize]);
        }
        dp[mask as usize] = best;
    }
    Ok(dp[(1usize << n) - 1] as usize)
}

/// Two-colorability of the subgraph induced by `mask`.
fn bipartite_within(g: &Graph, mask: u64) -> bool {
    let mut side = [0u64; 2];
    let mut seen = 0u64;
    for start in BitIter(mask) {
        if seen & 1 << start != 0 {
            continue;
        }
        side[0] |= 1 << start;
        seen |= 1 << start;
        let mut frontier = 1u64 << start;
        let mut parity = 0;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= g.neighbors(v);
            }
            next &= mask;
            if next & side[parity] != 0 {
                return false;
            }
            parity ^= 1;
            next &= !seen;
            side[parity] |= next;
            seen |= next;
            frontier = next;
        }
    }
    true
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartite_within(g, g.vertex_mask())
}

/// Smallest number of vertices whose deletion leaves a bipartite graph,
/// by subset search over deletion sets of increasing size.
pub fn vertex_bipartiteness(g: &Graph) -> Result<usize, InvariantError> {
    check_cap(g, ParameterKind::VertexBipartiteness)?;
    if is_bipartite(g) {
        return Ok(0);
    }
    let n = g.order();
    let all = g.vertex_mask();
    for k in 1..=n - 2 {
        let found = for_each_subset(n, k, |s| bipartite_within(g, all & !s));
        if found {
            return Ok(k);
        }
    }
    // Any two vertices induce a bipartite graph.
    unreachable!("deleting all but two vertices always leaves a bipartite graph")
}

/// Smallest number of colors in a proper vertex coloring. Backtracks over
/// color counts between the clique lower bound and a greedy upper bound;
/// edgeless and bipartite graphs short-circuit.
pub fn chromatic_number(g: &Graph) -> Result<usize, InvariantError> {
    check_cap(g, ParameterKind::ChromaticNumber)?;
    if g.size() == 0 {
        return Ok(1);
    }
    if is_bipartite(g) {
        return Ok(2);
    }
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    let mut greedy = vec![usize::MAX; n];
    let mut upper = 0;
    for &v in &order {
        let mut banned = 0u64;
        for u in BitIter(g.neighbors(v)) {
            if greedy[u] != usize::MAX {
                banned |= 1 << greedy[u];
            }
        }
        let c = (!banned).trailing_zeros() as usize;
        greedy[v] = c;
        upper = upper.max(c + 1);
    }

    // A clique in g is an independent set in the complement.
    let lower = independence_number(&g.complement())?.max(3);
    for k in lower..upper {
        let mut colors = vec![usize::MAX; n];
        if colorable(g, &order, &mut colors, 0, k, 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Tries to extend a partial proper coloring of `order[..idx]` using at
/// most `k` colors. Only one fresh color is ever open at a time, which
/// breaks color-permutation symmetry.
fn colorable(g: &Graph, order: &[usize], colors: &mut [usize], idx: usize, k: usize, used: usize) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let mut banned = 0u64;
    for u in BitIter(g.neighbors(v)) {
        if colors[u] != usize::MAX {
            banned |= 1 << colors[u];
        }
    }
    for c in 0..k.min(used + 1) {
        if banned >> c & 1 == 0 {
            colors[v] = c;
            if colorable(g, order, colors, idx + 1, k, used.max(c + 1)) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

struct CutSearch<'a> {
    g: &'a Graph,
    timer: u32,
    disc: Vec<u32>,
    low: Vec<u32>,
    bridges: Vec<(usize, usize)>,
    arts: u64,
}

impl CutSearch<'_> {
    fn dfs(&mut self, u: usize, parent: usize) {
        self.timer += 1;
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        let mut children = 0;
        for v in BitIter(self.g.neighbors(u)) {
            if self.disc[v] == 0 {
                children += 1;
                self.dfs(v, u);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] > self.disc[u] {
                    self.bridges.push((u.min(v), u.max(v)));
                }
                if parent != usize::MAX && self.low[v] >= self.disc[u] {
                    self.arts |= 1 << u;
                }
            } else if v != parent {
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
        if parent == usize::MAX && children >= 2 {
            self.arts |= 1 << u;
        }
    }

    fn run(g: &Graph) -> (Vec<(usize, usize)>, u64) {
        let n = g.order();
        let mut s = CutSearch { g, timer: 0, disc: vec![0; n], low: vec![0; n], bridges: Vec::new(), arts: 0 };
        for v in 0..n {
            if s.disc[v] == 0 {
                s.dfs(v, usize::MAX);
            }
        }
        s.bridges.sort_unstable();
        (s.bridges, s.arts)
    }
}

/// Edges whose deletion increases the number of components, ascending.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    CutSearch::run(g).0
}

/// Vertices whose deletion increases the number of components, ascending.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    BitIter(CutSearch::run(g).1).collect()
}

/// Edges with an endpoint of degree one, ascending.
pub fn pendant_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|&(u, v)| g.degree(u) == 1 || g.degree(v) == 1)
        .collect()
}
