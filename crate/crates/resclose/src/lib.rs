/*!
Exact computation of link residual closeness for small graphs.

The closeness of a graph is `C(G) = sum over ordered pairs u != v of
2^-d(u,v)`, with unreachable pairs contributing zero. Deleting whichever
single edge hurts the most gives the link residual closeness
`R_L(G) = min over edges e of C(G - e)`; deleting a vertex instead gives the
vertex variant `R(G) = min over v of C(G - v)`.

Everything is computed in exact dyadic arithmetic (integer over a power of
two), so equality of two values is meaningful and closed-form bounds can be
checked verbatim against exhaustive enumeration. The crate provides:

* [`dyadic`]: the exact number type.
* [`graph`]: bitset graphs on up to 64 vertices, BFS, closeness.
* [`graph6`]: the graph6 interchange format.
* [`canon`]: canonical labeling, isomorphism testing.
* [`residual`]: link and vertex residual closeness with the critical edges.
* [`invariants`]: the classical parameters the bounds are conditioned on
  (connectivity, matching number, chromatic number, and friends).
* [`families`]: generators for the extremal families the bounds identify.
* [`formulas`]: closed-form bound evaluators, keyed by conditioned parameter.
* [`enumerate`]: isomorph-free exhaustive generation of small graphs.
* [`verify`]: the harness that checks each bound against every graph in its
  class and reports the maximizers.
*/

pub mod canon;
pub mod dyadic;
pub mod enumerate;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod residual;
pub mod verify;

pub use dyadic::Dyadic;
pub use graph::{DistanceRow, Graph, GraphError, MAX_ORDER, UNREACHABLE};
pub use residual::{link_residual_closeness, vertex_residual_closeness, LinkResidual, VertexResidual};
