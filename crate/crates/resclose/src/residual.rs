/*!
Residual closeness under single edge or vertex deletion.

Link residual closeness is `R_L(G) = min over edges e of C(G - e)`, the
closeness left by the most damaging edge deletion; the vertex variant
deletes a vertex instead. Both come with the full set of minimizers, since
the extremal arguments care about which deletions are critical, not just
the value.
*/

use crate::dyadic::Dyadic;
use crate::graph::Graph;

/// Value of `min C(G - e)` together with every edge achieving it, in
/// ascending `(u, v)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkResidual {
    pub value: Dyadic,
    pub critical_edges: Vec<(usize, usize)>,
}

/// Value of `min C(G - v)` together with every vertex achieving it,
/// ascending. Vertex labels refer to the input graph; the minimum is over
/// the compacted deletions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexResidual {
    pub value: Dyadic,
    pub critical_vertices: Vec<usize>,
}

/// Link residual closeness. A graph with no edges has nothing to delete
/// and a graph with one edge is left with closeness zero, so the value is
/// zero exactly when the graph has at most one edge.
pub fn link_residual_closeness(g: &Graph) -> LinkResidual {
    let mut value: Option<Dyadic> = None;
    let mut critical_edges = Vec::new();
    for (u, v) in g.edges() {
        let c = g.delete_edge(u, v).expect("iterated edge exists").closeness();
        if value.is_none_or(|best| c < best) {
            value = Some(c);
            critical_edges.clear();
        }
        if value == Some(c) {
            critical_edges.push((u, v));
        }
    }
    LinkResidual { value: value.unwrap_or(Dyadic::zero()), critical_edges }
}

/// Vertex residual closeness, or `None` for the one-vertex graph, which has
/// no vertex deletion that leaves a graph.
pub fn vertex_residual_closeness(g: &Graph) -> Option<VertexResidual> {
    if g.order() < 2 {
        return None;
    }
    let mut value: Option<Dyadic> = None;
    let mut critical_vertices = Vec::new();
    for v in 0..g.order() {
        let c = g.delete_vertex(v).expect("order is at least two").closeness();
        if value.is_none_or(|best| c < best) {
            value = Some(c);
            critical_vertices.clear();
        }
        if value == Some(c) {
            critical_vertices.push(v);
        }
    }
    Some(VertexResidual { value: value.expect("at least one vertex was deleted"), critical_vertices })
}
