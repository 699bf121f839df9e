/*!
Exhaustive checks of the closed-form bounds against real graph classes.

The flow is atlas-first: [`Atlas::build`] profiles every input graph once,
recording its link residual closeness together with every parameter a class
filter can condition on. A sweep over all theorems at one order then reuses
the same atlas, so enumeration and invariant costs are paid once per order.

Reports are deterministic. Atlas records keep their input order regardless
of the rayon pool shape, argmax and extremal sets are sorted graph6 strings,
and the serialized field order is fixed, so equal inputs give byte-equal
JSON.
*/

use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::canonical_form;
use crate::dyadic::Dyadic;
use crate::enumerate::{self, EnumerateError};
use crate::formulas::{self, TheoremCase, TheoremId};
use crate::graph::Graph;
use crate::graph6;
use crate::invariants::{self, InvariantError};
use crate::residual::link_residual_closeness;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("graph of order {got} in an atlas of order {expected}")]
    WrongOrder { expected: usize, got: usize },
}

/// Everything the class filters and verdicts need to know about one graph.
#[derive(Debug, Clone)]
struct Record {
    graph6: String,
    value: Dyadic,
    connected: bool,
    size: usize,
    kappa: usize,
    lambda: usize,
    delta: usize,
    alpha: usize,
    beta: usize,
    chi: usize,
    bipartiteness: usize,
    bridge_count: usize,
    cut_vertex_count: usize,
    pendant_edge_count: usize,
}

fn profile(g: &Graph) -> Result<Record, VerifyError> {
    Ok(Record {
        graph6: graph6::encode(g),
        value: link_residual_closeness(g).value,
        connected: g.is_connected(),
        size: g.size(),
        kappa: invariants::vertex_connectivity(g)?,
        lambda: invariants::edge_connectivity(g),
        delta: invariants::min_degree(g),
        alpha: invariants::independence_number(g)?,
        beta: invariants::matching_number(g)?,
        chi: invariants::chromatic_number(g)?,
        bipartiteness: invariants::vertex_bipartiteness(g)?,
        bridge_count: invariants::bridges(g).len(),
        cut_vertex_count: invariants::cut_vertices(g).len(),
        pendant_edge_count: invariants::pendant_edges(g).len(),
    })
}

/// Per-order table of profiled isomorphism-class representatives.
///
/// The caller's stream is trusted to be isomorph-free; duplicates would
/// inflate `graphs_checked` but cannot change a max, an argmax set, or a
/// verdict.
#[derive(Debug, Clone)]
pub struct Atlas {
    n: usize,
    records: Vec<Record>,
}

impl Atlas {
    /// Profiles caller-supplied graphs, canonicalizing each one so argmax
    /// labels do not depend on the input's vertex numbering.
    pub fn build(n: usize, graphs: &[Graph]) -> Result<Atlas, VerifyError> {
        if let Some(g) = graphs.iter().find(|g| g.order() != n) {
            return Err(VerifyError::WrongOrder { expected: n, got: g.order() });
        }
        let canonical: Vec<Graph> = graphs.par_iter().map(canonical_form).collect();
        Atlas::from_canonical(n, &canonical)
    }

    /// Profiles every isomorphism class on `n` vertices under the default
    /// enumerator cap.
    pub fn from_enumeration(n: usize) -> Result<Atlas, VerifyError> {
        Atlas::from_enumeration_with_cap(n, enumerate::DEFAULT_MAX_N)
    }

    pub fn from_enumeration_with_cap(n: usize, cap: usize) -> Result<Atlas, VerifyError> {
        let graphs = enumerate::all_graphs_with_cap(n, cap)?;
        Atlas::from_canonical(n, &graphs)
    }

    /// `graphs` must already be canonical forms of order `n`.
    fn from_canonical(n: usize, graphs: &[Graph]) -> Result<Atlas, VerifyError> {
        let records = graphs
            .par_iter()
            .map(profile)
            .collect::<Result<Vec<Record>, VerifyError>>()?;
        Ok(Atlas { n, records })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of profiled classes, before any case filter.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Membership test for the graph class a case bounds.
fn in_class(case: &TheoremCase, r: &Record) -> bool {
    use TheoremId::*;
    match (case.id(), case.param()) {
        (Connectivity, Some(k)) => r.kappa == k,
        (ConnectivityAtMost, Some(k)) => r.kappa <= k,
        (EdgeConnectivityAtMost, Some(k)) => r.lambda <= k,
        (MinDegreeAtMost, Some(k)) => r.delta <= k,
        (Bipartite, None) => r.bipartiteness == 0,
        (Bipartiteness, Some(k)) => r.bipartiteness == k,
        (Independence, Some(k)) => r.alpha == k,
        (Matching, Some(k)) => r.beta == k,
        (MatchingConnected, Some(k)) => r.connected && r.beta == k,
        (Chromatic, Some(k)) => r.chi == k,
        (CutEdges, Some(k)) => r.connected && r.bridge_count == k,
        (PendantEdges, Some(k)) => r.connected && r.pendant_edge_count == k,
        (CutVertices, Some(k)) => r.connected && r.cut_vertex_count == k,
        (Tree, None) => r.connected && r.size == case.n() - 1,
        (OneCutVertex, None) => r.connected && r.cut_vertex_count == 1,
        _ => unreachable!("TheoremCase::new enforces parameter presence"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Class max equals the bound and the argmax set equals the predicted
    /// extremal set.
    Match,
    /// Class max differs from the bound. Counterexamples list the graphs
    /// above it; an empty list means the bound is simply not attained.
    ValueMismatch,
    /// Right value, wrong attaining set. Counterexamples list the symmetric
    /// difference.
    ExtremalSetMismatch,
    /// No graph in the atlas satisfies the class filter.
    EmptyClass,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::ValueMismatch => "VALUE_MISMATCH",
            Verdict::ExtremalSetMismatch => "EXTREMAL_SET_MISMATCH",
            Verdict::EmptyClass => "EMPTY_CLASS",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of checking one case against one atlas.
///
/// All graph sets are sorted canonical graph6 strings. `max_value` and
/// `argmax` describe the filtered class and are empty or zero when the
/// class is; `predicted_*` restate the closed form being checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub case: TheoremCase,
    pub graphs_checked: usize,
    pub max_value: Dyadic,
    pub argmax: Vec<String>,
    pub predicted_bound: Dyadic,
    pub predicted_extremal: Vec<String>,
    pub verdict: Verdict,
    pub counterexamples: Vec<String>,
    pub note: String,
}

impl VerifyReport {
    pub const CSV_HEADER: &'static str = "id,n,param,classSize,max,bound,verdict";

    /// One summary row under [`Self::CSV_HEADER`]. Dyadic fields use the
    /// exact fraction rendering, which never contains a comma.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.case.id().name(),
            self.case.n(),
            self.case.param().map_or_else(String::new, |k| k.to_string()),
            self.graphs_checked,
            self.max_value.fraction(),
            self.predicted_bound.fraction(),
            self.verdict,
        )
    }
}

/// Checks one case against an atlas of the same order.
pub fn verify(case: &TheoremCase, atlas: &Atlas) -> VerifyReport {
    assert_eq!(atlas.n(), case.n(), "atlas order must match the case");
    let bound = formulas::bound(case);
    let mut predicted_extremal: Vec<String> = bound
        .extremal
        .iter()
        .map(|spec| graph6::encode(&canonical_form(&spec.instantiate())))
        .collect();
    predicted_extremal.sort();
    predicted_extremal.dedup();

    let class: Vec<&Record> = atlas.records.iter().filter(|r| in_class(case, r)).collect();
    let max_value = class.iter().map(|r| r.value).max().unwrap_or_else(Dyadic::zero);
    let mut argmax: Vec<String> = class
        .iter()
        .filter(|r| r.value == max_value)
        .map(|r| r.graph6.clone())
        .collect();
    argmax.sort();
    argmax.dedup();

    let (verdict, counterexamples) = if class.is_empty() {
        (Verdict::EmptyClass, Vec::new())
    } else if max_value != bound.value {
        let mut over: Vec<String> = class
            .iter()
            .filter(|r| r.value > bound.value)
            .map(|r| r.graph6.clone())
            .collect();
        over.sort();
        over.dedup();
        (Verdict::ValueMismatch, over)
    } else if argmax != predicted_extremal {
        let mut diff: Vec<String> = argmax
            .iter()
            .filter(|s| !predicted_extremal.contains(s))
            .chain(predicted_extremal.iter().filter(|s| !argmax.contains(s)))
            .cloned()
            .collect();
        diff.sort();
        (Verdict::ExtremalSetMismatch, diff)
    } else {
        (Verdict::Match, Vec::new())
    };

    VerifyReport {
        case: *case,
        graphs_checked: class.len(),
        max_value,
        argmax,
        predicted_bound: bound.value,
        predicted_extremal,
        verdict,
        counterexamples,
        note: bound.note,
    }
}

/// Enumerates the full universe at the case's order and checks against it.
pub fn verify_enumerated(case: &TheoremCase) -> Result<VerifyReport, VerifyError> {
    let atlas = Atlas::from_enumeration(case.n())?;
    Ok(verify(case, &atlas))
}

/// Every case of one theorem that exists at order `n`, in parameter order.
pub fn cases_for(id: TheoremId, n: usize) -> Vec<TheoremCase> {
    if id.takes_param() {
        match id.param_range(n) {
            Some((lo, hi)) => (lo..=hi)
                .filter_map(|k| TheoremCase::new(id, n, Some(k)).ok())
                .collect(),
            None => Vec::new(),
        }
    } else {
        TheoremCase::new(id, n, None).ok().into_iter().collect()
    }
}

/// Checks every in-range case of every listed theorem over a range of
/// orders, building one atlas per order. Report order is `(n, id, param)`
/// with ids in the caller's order.
pub fn sweep(ids: &[TheoremId], orders: RangeInclusive<usize>) -> Result<Vec<VerifyReport>, VerifyError> {
    sweep_with_cap(ids, orders, enumerate::DEFAULT_MAX_N)
}

/// [`sweep`] with an explicit enumerator cap in place of the default.
pub fn sweep_with_cap(
    ids: &[TheoremId],
    orders: RangeInclusive<usize>,
    cap: usize,
) -> Result<Vec<VerifyReport>, VerifyError> {
    let mut reports = Vec::new();
    for n in orders {
        let atlas = Atlas::from_enumeration_with_cap(n, cap)?;
        for &id in ids {
            for case in cases_for(id, n) {
                reports.push(verify(&case, &atlas));
            }
        }
    }
    Ok(reports)
}
