/*!
Canonical labeling by partition refinement and individualization.

The canonical form of a graph is the relabeling that minimizes the packed
lower-triangle adjacency bit string, so two graphs are isomorphic exactly
when their canonical forms are equal as labeled graphs. Vertices start
partitioned by degree and distance histogram, the partition is refined to
equitability, and the remaining ties are broken by individualizing one
vertex of the first smallest cell at a time. Automorphisms discovered when
two leaves produce the same bit string prune sibling branches: a candidate
reachable from an already-explored sibling by an automorphism fixing every
individualized vertex cannot improve the minimum.
*/

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};

use crate::graph::{BitIter, Graph, UNREACHABLE};

/// The canonical relabeling of `g`. Equal outputs characterize isomorphic
/// inputs; the output is a fixed point of this function.
pub fn canonical_form(g: &Graph) -> Graph {
    let mut searcher = Searcher {
        g,
        n: g.order(),
        best: None,
        gens: Vec::new(),
        group: UnionFind::new(g.order()),
    };
    let mut cells = initial_cells(g);
    let seed: VecDeque<u64> = cells.iter().copied().collect();
    searcher.refine(&mut cells, seed);
    searcher.search(&cells, 0);
    let (_, perm) = searcher.best.expect("search visits at least one leaf");
    g.relabeled(&perm)
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b)
}

/// Cells ordered by (degree, distance histogram), ascending. The histogram
/// is label-invariant, so isomorphic graphs start from matching partitions.
fn initial_cells(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let mut groups: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for v in 0..n {
        let row = g.bfs_distances(v).expect("vertex is in range");
        let mut hist = vec![0u32; n + 1];
        for &d in &row.dist {
            if d == UNREACHABLE {
                hist[n] += 1;
            } else if d > 0 {
                hist[d as usize - 1] += 1;
            }
        }
        *groups.entry(hist).or_insert(0) |= 1 << v;
    }
    groups.into_values().collect()
}

/// Lower-triangle adjacency bits of `g.relabeled(perm)`, packed MSB-first.
/// Word-wise comparison of two certificates is bitwise-lexicographic.
fn certificate(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = perm.len();
    let h = g.relabeled(perm);
    let mut words = vec![0u64; (n * (n - 1) / 2).div_ceil(64)];
    let mut idx = 0;
    for i in 1..n {
        for j in 0..i {
            if h.has_edge(i, j) {
                words[idx / 64] |= 1 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    words
}

struct Searcher<'a> {
    g: &'a Graph,
    n: usize,
    /// Smallest certificate seen so far and the permutation achieving it.
    best: Option<(Vec<u64>, Vec<usize>)>,
    /// Automorphism generators found at equal-certificate leaves. Only
    /// generators that enlarged the known orbits are kept.
    gens: Vec<Vec<usize>>,
    group: UnionFind,
}

impl Searcher<'_> {
    /// Splits cells by neighbor counts into queued splitter masks until the
    /// partition is equitable. Subcells are ordered by ascending count,
    /// which keeps the outcome independent of input labeling.
    fn refine(&self, cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
        while let Some(splitter) = queue.pop_front() {
            let mut ci = 0;
            while ci < cells.len() {
                if cells[ci].count_ones() > 1 {
                    let mut by_count: BTreeMap<u32, u64> = BTreeMap::new();
                    for v in BitIter(cells[ci]) {
                        let c = (self.g.neighbors(v) & splitter).count_ones();
                        *by_count.entry(c).or_insert(0) |= 1 << v;
                    }
                    if by_count.len() > 1 {
                        let subs: Vec<u64> = by_count.into_values().collect();
                        queue.extend(subs.iter().copied());
                        let added = subs.len();
                        cells.splice(ci..=ci, subs);
                        ci += added;
                        continue;
                    }
                }
                ci += 1;
            }
        }
    }

    /// `prefix` is the set of vertices individualized on the path so far.
    fn search(&mut self, cells: &[u64], prefix: u64) {
        let mut target = None;
        for (i, c) in cells.iter().enumerate() {
            let size = c.count_ones();
            if size > 1 && target.is_none_or(|(_, best)| size < best) {
                target = Some((i, size));
            }
        }
        let Some((target, _)) = target else {
            self.leaf(cells);
            return;
        };

        let mut tried: Vec<usize> = Vec::new();
        for v in BitIter(cells[target]) {
            if self.pruned(&tried, v, prefix) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cells[target] & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            self.refine(&mut child, VecDeque::from([1 << v]));
            self.search(&child, prefix | 1 << v);
        }
    }

    /// True when some automorphism fixing the whole prefix pointwise maps an
    /// already-tried sibling to `v`; the subtree under `v` then mirrors one
    /// already searched.
    fn pruned(&self, tried: &[usize], v: usize, prefix: u64) -> bool {
        if tried.is_empty() || self.gens.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for sigma in &self.gens {
            if BitIter(prefix).all(|p| sigma[p] == p) {
                for u in 0..self.n {
                    uf.union(u, sigma[u]);
                }
            }
        }
        tried.iter().any(|&u| uf.find(u) == uf.find(v))
    }

    fn leaf(&mut self, cells: &[u64]) {
        let perm: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let cert = certificate(self.g, &perm);
        match self.best.as_ref().map(|(bc, _)| cert.cmp(bc)) {
            None | Some(Ordering::Less) => self.best = Some((cert, perm)),
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => {
                // Two permutations with equal certificates relabel to the
                // same graph, so mapping one onto the other is an
                // automorphism.
                let bp = &self.best.as_ref().expect("compared against best").1;
                let mut sigma = vec![0usize; self.n];
                for (i, &v) in perm.iter().enumerate() {
                    sigma[v] = bp[i];
                }
                let mut merged = false;
                for v in 0..self.n {
                    if self.group.union(v, sigma[v]) {
                        merged = true;
                    }
                }
                if merged {
                    self.gens.push(sigma);
                }
            }
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns true when the two elements were in different classes.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}
