/*!
Generators for the graph families that attain the closed-form bounds, plus
the two link-residual-increasing rewirings used to recognize non-extremal
graphs.

A [`FamilySpec`] is a parsed, validated, canonically ordered description
like `clique_join:1,2,2` or `pendant_paths:2,1,1,1`; instantiating one
always succeeds and lays vertices out in the documented order. Parameter
lists that are unordered by nature (join parts, path lengths) are sorted at
construction, so equal specs describe equal graphs and display-parse round
trips are exact.
*/

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{BitIter, Graph, MAX_ORDER};
use crate::invariants;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("malformed family spec {0:?}, expected kind:int,int,...")]
    Malformed(String),
    #[error("unknown family kind {0:?}")]
    UnknownKind(String),
    #[error("{kind}: {reason}")]
    Invalid { kind: FamilyKind, reason: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `complete:n` is K_n.
    Complete,
    /// `star:n` is the star on n vertices, center first.
    Star,
    /// `path:n` is the path on n vertices in line order.
    Path,
    /// `cycle:n` is the cycle on n vertices in ring order.
    Cycle,
    /// `clique_join:h,p1,...,pt` joins K_h to the disjoint union
    /// K_p1 + ... + K_pt; `h` may be zero, making it a plain union.
    CliqueJoin,
    /// `multipartite:p1,...,pk` is the complete multipartite graph with the
    /// given part sizes.
    Multipartite,
    /// `pendant_paths:a1,...,ar` hangs a pendant path of length `ai` off
    /// the i-th vertex of K_r; zero lengths leave their vertex bare.
    PendantPaths,
    /// `balanced_pendant_paths:n,k` is `pendant_paths` on K_{n-k} with `k`
    /// path vertices split as evenly as the lengths allow.
    BalancedPendantPaths,
    /// `clique_pendants:c1,...,cm` hangs `ci` pendant edges off the i-th
    /// vertex of K_m.
    CliquePendants,
    /// `h_graph:b1,b2` glues K_b1 and K_b2 at a shared vertex and hangs one
    /// pendant edge off every other clique vertex.
    HGraph,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 10] = [
        FamilyKind::Complete,
        FamilyKind::Star,
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::CliqueJoin,
        FamilyKind::Multipartite,
        FamilyKind::PendantPaths,
        FamilyKind::BalancedPendantPaths,
        FamilyKind::CliquePendants,
        FamilyKind::HGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Complete => "complete",
            FamilyKind::Star => "star",
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::CliqueJoin => "clique_join",
            FamilyKind::Multipartite => "multipartite",
            FamilyKind::PendantPaths => "pendant_paths",
            FamilyKind::BalancedPendantPaths => "balanced_pendant_paths",
            FamilyKind::CliquePendants => "clique_pendants",
            FamilyKind::HGraph => "h_graph",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated family description. Order of unordered parameters is
/// canonical, so equality of specs is equality of described graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    kind: FamilyKind,
    params: Vec<usize>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, mut params: Vec<usize>) -> Result<FamilySpec, FamilyError> {
        let fail = |reason| Err(FamilyError::Invalid { kind, reason });
        let order = checked_order(kind, &params);
        match kind {
            FamilyKind::Complete | FamilyKind::Star | FamilyKind::Path | FamilyKind::Cycle => {
                if params.len() != 1 {
                    return fail("takes exactly one parameter");
                }
                let min = match kind {
                    FamilyKind::Star => 2,
                    FamilyKind::Cycle => 3,
                    _ => 1,
                };
                if params[0] < min {
                    return fail("order is below the family minimum");
                }
            }
            FamilyKind::CliqueJoin => {
                if params.len() < 2 {
                    return fail("takes a hub size and at least one part");
                }
                if params[1..].contains(&0) {
                    return fail("parts must be nonempty");
                }
                params[1..].sort_unstable();
            }
            FamilyKind::Multipartite => {
                if params.is_empty() {
                    return fail("takes at least one part");
                }
                if params.contains(&0) {
                    return fail("parts must be nonempty");
                }
                params.sort_unstable();
            }
            FamilyKind::PendantPaths => {
                if params.len() < 3 {
                    return fail("the underlying clique needs at least three vertices");
                }
                params.sort_unstable_by(|a, b| b.cmp(a));
            }
            FamilyKind::BalancedPendantPaths => {
                if params.len() != 2 {
                    return fail("takes an order and a path-vertex count");
                }
                let (n, k) = (params[0], params[1]);
                if k < 2 {
                    return fail("needs at least two path vertices");
                }
                if n < k + 3 {
                    return fail("the underlying clique needs at least three vertices");
                }
            }
            FamilyKind::CliquePendants => {
                if params.is_empty() {
                    return fail("the underlying clique needs at least one vertex");
                }
                params.sort_unstable_by(|a, b| b.cmp(a));
            }
            FamilyKind::HGraph => {
                if params.len() != 2 {
                    return fail("takes two clique sizes");
                }
                params.sort_unstable();
                if params[0] < 3 {
                    return fail("both cliques need at least three vertices");
                }
            }
        }
        match order {
            Some(n) if (1..=MAX_ORDER).contains(&n) => Ok(FamilySpec { kind, params }),
            _ => fail("total order is outside 1..=64"),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    /// Number of vertices of the described graph.
    pub fn order(&self) -> usize {
        checked_order(self.kind, &self.params).expect("validated at construction")
    }

    /// Builds the graph. Vertices are laid out as each kind documents:
    /// cliques and parts first in parameter order, attached structure
    /// appended left to right.
    pub fn instantiate(&self) -> Graph {
        let p = &self.params;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let clique = |edges: &mut Vec<(usize, usize)>, lo: usize, hi: usize| {
            for u in lo..hi {
                for v in u + 1..hi {
                    edges.push((u, v));
                }
            }
        };
        match self.kind {
            FamilyKind::Complete => clique(&mut edges, 0, p[0]),
            FamilyKind::Star => edges.extend((1..p[0]).map(|v| (0, v))),
            FamilyKind::Path => edges.extend((1..p[0]).map(|v| (v - 1, v))),
            FamilyKind::Cycle => edges.extend((0..p[0]).map(|v| (v, (v + 1) % p[0]))),
            FamilyKind::CliqueJoin => {
                let hub = p[0];
                clique(&mut edges, 0, hub);
                let mut lo = hub;
                for &part in &p[1..] {
                    clique(&mut edges, lo, lo + part);
                    for u in 0..hub {
                        for v in lo..lo + part {
                            edges.push((u, v));
                        }
                    }
                    lo += part;
                }
            }
            FamilyKind::Multipartite => {
                let mut lo = 0;
                let mut bounds = Vec::new();
                for &part in p.iter() {
                    bounds.push((lo, lo + part));
                    lo += part;
                }
                for (i, &(alo, ahi)) in bounds.iter().enumerate() {
                    for &(blo, bhi) in &bounds[i + 1..] {
                        for u in alo..ahi {
                            for v in blo..bhi {
                                edges.push((u, v));
                            }
                        }
                    }
                }
            }
            FamilyKind::PendantPaths => return pendant_paths_graph(p),
            FamilyKind::BalancedPendantPaths => {
                return pendant_paths_graph(&balanced_path_lengths(p[0], p[1]));
            }
            FamilyKind::CliquePendants => {
                let m = p.len();
                clique(&mut edges, 0, m);
                let mut next = m;
                for (v, &count) in p.iter().enumerate() {
                    for _ in 0..count {
                        edges.push((v, next));
                        next += 1;
                    }
                }
            }
            FamilyKind::HGraph => {
                let (b1, b2) = (p[0], p[1]);
                // Vertex 0 is shared; the cliques occupy 1..b1 and
                // b1..b1+b2-1; one leaf per non-shared clique vertex follows.
                clique(&mut edges, 1, b1);
                clique(&mut edges, b1, b1 + b2 - 1);
                for v in 1..b1 + b2 - 1 {
                    edges.push((0, v));
                    edges.push((v, b1 + b2 - 2 + v));
                }
            }
        }
        Graph::from_edges(self.order(), &edges).expect("validated parameters build a simple graph")
    }
}

fn checked_order(kind: FamilyKind, params: &[usize]) -> Option<usize> {
    let sum = |xs: &[usize]| xs.iter().try_fold(0usize, |a, &x| a.checked_add(x));
    match kind {
        FamilyKind::Complete | FamilyKind::Star | FamilyKind::Path | FamilyKind::Cycle => {
            params.first().copied()
        }
        FamilyKind::CliqueJoin | FamilyKind::Multipartite => sum(params),
        FamilyKind::PendantPaths => sum(params)?.checked_add(params.len()),
        FamilyKind::BalancedPendantPaths => params.first().copied(),
        FamilyKind::CliquePendants => sum(params)?.checked_add(params.len()),
        FamilyKind::HGraph => {
            let b = sum(params)?;
            b.checked_mul(2)?.checked_sub(3)
        }
    }
}

/// Clique vertices come first, then each path in parameter order.
fn pendant_paths_graph(lengths: &[usize]) -> Graph {
    let r = lengths.len();
    let mut edges = Vec::new();
    for u in 0..r {
        for v in u + 1..r {
            edges.push((u, v));
        }
    }
    let mut next = r;
    for (v, &len) in lengths.iter().enumerate() {
        let mut prev = v;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next, &edges).expect("path layout is a simple graph")
}

/// Splits `k` path vertices over a K_{n-k} as evenly as possible: longest
/// paths first, lengths differing by at most one.
pub fn balanced_path_lengths(n: usize, k: usize) -> Vec<usize> {
    let r = n - k;
    let q = k / r;
    let rem = k % r;
    let mut lengths = vec![q + 1; rem];
    lengths.resize(r, q);
    lengths
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind)?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<FamilySpec, FamilyError> {
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| FamilyError::Malformed(s.to_string()))?;
        let kind = FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| FamilyError::UnknownKind(name.to_string()))?;
        let params = rest
            .split(',')
            .map(|p| p.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| FamilyError::Malformed(s.to_string()))?;
        FamilySpec::new(kind, params)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewireError {
    #[error("the given vertices are not a long-enough path in the graph")]
    NotAPath,
    #[error("every vertex strictly inside the path must have degree two")]
    InternalVertexDegree,
    #[error("the path endpoints lack the degrees the rewiring needs")]
    EndpointDegree,
    #[error("the path edges must be bridges")]
    NotABridge,
    #[error("the far end of the path must be a leaf")]
    NotPendant,
}

fn check_chain(g: &Graph, path: &[usize], min_len: usize) -> Result<(), RewireError> {
    if path.len() < min_len {
        return Err(RewireError::NotAPath);
    }
    let mut seen = 0u64;
    for &v in path {
        if v >= g.order() || seen & 1 << v != 0 {
            return Err(RewireError::NotAPath);
        }
        seen |= 1 << v;
    }
    if !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
        return Err(RewireError::NotAPath);
    }
    if path[1..path.len() - 1].iter().any(|&v| g.degree(v) != 2) {
        return Err(RewireError::InternalVertexDegree);
    }
    Ok(())
}

/// Moves everything hanging past the far end of an internal path onto its
/// near end, which strictly increases link residual closeness. The path
/// `u_0 ... u_t` must consist of bridges with degree-two interior and both
/// endpoints need two neighbors outside the path; the rewired graph
/// replaces each edge `u_t w` (w outside the path) with `u_0 w`.
pub fn rewire_internal_path(g: &Graph, path: &[usize]) -> Result<Graph, RewireError> {
    check_chain(g, path, 2)?;
    let (u0, ut) = (path[0], path[path.len() - 1]);
    if g.degree(u0) < 3 || g.degree(ut) < 3 {
        return Err(RewireError::EndpointDegree);
    }
    // With degree-two interior the path edges are bridges together or not
    // at all, so checking the first one covers the chain.
    if !invariants::bridges(g).contains(&(u0.min(path[1]), u0.max(path[1]))) {
        return Err(RewireError::NotABridge);
    }
    let moved = g.neighbors(ut) & !(1 << path[path.len() - 2]);
    let mut out = g.clone();
    for w in BitIter(moved) {
        out = out
            .delete_edge(ut, w)
            .and_then(|h| h.add_edge(u0, w))
            .expect("bridge precondition keeps moved edges disjoint from u_0");
    }
    Ok(out)
}

/// Fans a pendant path `u_0 u_1 ... u_t` (far end a leaf) into `t` pendant
/// edges at `u_0`, which strictly increases link residual closeness.
/// Strictness needs `t >= 3` or degree at least three at `u_0`: a two-edge
/// fan hung on a thinner vertex only relabels a three-vertex tail, so ties
/// exist there.
pub fn rewire_pendant_path_to_star(g: &Graph, path: &[usize]) -> Result<Graph, RewireError> {
    check_chain(g, path, 3)?;
    let t = path.len() - 1;
    if g.degree(path[t]) != 1 {
        return Err(RewireError::NotPendant);
    }
    if t < 3 && g.degree(path[0]) < 3 {
        return Err(RewireError::EndpointDegree);
    }
    let mut out = g.clone();
    for i in 2..=t {
        out = out
            .delete_edge(path[i - 1], path[i])
            .and_then(|h| h.add_edge(path[0], path[i]))
            .expect("a pendant chain never touches u_0 past its first edge");
    }
    Ok(out)
}
