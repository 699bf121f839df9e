//! Isomorph-free enumeration of simple graphs by vertex extension.
//!
//! Graphs on k+1 vertices are produced by attaching a new last vertex to
//! every enumerated graph on k vertices with every neighbor mask. A child
//! survives only when deleting the last vertex of its canonical form leads
//! back to the parent it came from, so each isomorphism class is emitted by
//! exactly one parent; a per-parent seen-set removes mask collisions. All
//! returned graphs are canonical forms, in a deterministic order.

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::canonical_form;
use crate::graph::Graph;

/// Largest order the built-in generator accepts by default. Enumeration at
/// this cap already takes minutes; callers may raise it explicitly.
pub const DEFAULT_MAX_N: usize = 9;

/// Parent levels at least this large are expanded in parallel.
const PARALLEL_THRESHOLD: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration needs at least one vertex")]
    OrderZero,
    #[error("order {order} exceeds the generator cap {cap}")]
    BeyondCap { order: usize, cap: usize },
}

/// One representative per isomorphism class of simple graphs on n vertices,
/// under the default order cap.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    all_graphs_with_cap(n, DEFAULT_MAX_N)
}

/// One representative per isomorphism class of connected graphs.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    connected_graphs_with_cap(n, DEFAULT_MAX_N)
}

pub fn all_graphs_with_cap(n: usize, cap: usize) -> Result<Vec<Graph>, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::OrderZero);
    }
    if n > cap {
        return Err(EnumerateError::BeyondCap { order: n, cap });
    }
    let mut level = vec![Graph::empty(1).expect("one vertex is in range")];
    for _ in 1..n {
        level = next_level(&level);
    }
    Ok(level)
}

pub fn connected_graphs_with_cap(n: usize, cap: usize) -> Result<Vec<Graph>, EnumerateError> {
    let mut graphs = all_graphs_with_cap(n, cap)?;
    graphs.retain(Graph::is_connected);
    Ok(graphs)
}

/// Expands one enumerated level to the next. Order is parent-major with
/// children in mask order, independent of the parallel split.
fn next_level(parents: &[Graph]) -> Vec<Graph> {
    let expand = |parent: &Graph| -> Vec<Graph> {
        let k = parent.order();
        let mut children = Vec::new();
        let mut seen: Vec<Graph> = Vec::new();
        for mask in 0u64..(1 << k) {
            let child = canonical_form(&parent.extend_with_vertex(mask));
            if seen.contains(&child) {
                continue;
            }
            seen.push(child.clone());
            let trimmed = child.delete_vertex(k).expect("child has k+1 vertices");
            if canonical_form(&trimmed) == *parent {
                children.push(child);
            }
        }
        children
    };
    let nested: Vec<Vec<Graph>> = if parents.len() >= PARALLEL_THRESHOLD {
        parents.par_iter().map(expand).collect()
    } else {
        parents.iter().map(expand).collect()
    };
    nested.into_iter().flatten().collect()
}
