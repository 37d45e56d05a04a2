//! Geodesic words and lengths in free metabelian groups.
//!
//! A word's path flow determines it up to equality in `M_r`, so a
//! geodesic representative is a shortest walk realizing that flow: every
//! support edge must be crossed `|value|` times, and the walk must also
//! wander over enough zero-flow edges to keep moving between the
//! support's connected pieces. A minimal such set of zero-flow edges is
//! a minimal forest `Q`, each of its edges is walked exactly twice, and
//! the geodesic length is `sum |flow(e)| + 2 |Q|`. The word itself is
//! read off a directed Euler tour of the replicated support multigraph.
//!
//! Finding `Q` is a rectilinear Steiner problem over the support
//! components (NP-hard in general), so the exact solver is budgeted and
//! an MST approximation stands in when the budget is exceeded; results
//! carry an exactness flag. The bounded geodesic length decision is
//! three-valued for the same reason: yes, no, or undecided at the
//! configured budget.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::{euler_label, path_flow, support_component_sets, GridEdge, GridFlow};
use crate::steiner::{approximate_connector, exact_connector, ExactLimits};
use crate::words::{AbelianVector, Word};

/// One connected piece of the support graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<AbelianVector>,
    pub edges: Vec<GridEdge>,
}

/// The support graph of a flow split into connected components, with
/// the source and sink included as (possibly isolated) vertices.
/// Components are ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph {
    rank: usize,
    components: Vec<Component>,
}

impl SupportGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Splits the support of a geometric flow into connected components.
pub fn support_components(f: &GridFlow) -> SupportGraph {
    let sets = support_component_sets(f);
    let mut membership: BTreeMap<&AbelianVector, usize> = BTreeMap::new();
    for (i, set) in sets.iter().enumerate() {
        for v in set {
            membership.insert(v, i);
        }
    }
    let mut components: Vec<Component> = sets
        .iter()
        .map(|set| Component {
            vertices: set.iter().cloned().collect(),
            edges: Vec::new(),
        })
        .collect();
    for (edge, _) in f.iter() {
        components[membership[&edge.vertex]].edges.push(edge.clone());
    }
    SupportGraph {
        rank: f.rank(),
        components,
    }
}

/// How to search for a minimal forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForestMode {
    Exact,
    Approximate,
}

/// A set of zero-flow connector edges making the support graph
/// connected; `exact` records whether minimality was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    pub edges: Vec<GridEdge>,
    pub exact: bool,
}

impl Forest {
    pub fn empty_exact() -> Forest {
        Forest {
            edges: Vec::new(),
            exact: true,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Connects the support components with zero-flow edges: a certified
/// minimum set in exact mode (subject to `limits`), or an MST
/// realization within factor two otherwise.
pub fn minimal_forest(
    graph: &SupportGraph,
    mode: ForestMode,
    limits: &ExactLimits,
) -> Result<Forest> {
    if graph.component_count() <= 1 {
        return Ok(Forest::empty_exact());
    }
    let groups: Vec<Vec<AbelianVector>> = graph
        .components
        .iter()
        .map(|c| c.vertices.clone())
        .collect();
    let (edges, exact) = match mode {
        ForestMode::Exact => (exact_connector(&groups, graph.rank, limits)?, true),
        ForestMode::Approximate => (approximate_connector(&groups), false),
    };
    debug_assert!(
        {
            let support: BTreeSet<&GridEdge> =
                graph.components.iter().flat_map(|c| c.edges.iter()).collect();
            edges.iter().all(|e| !support.contains(e))
        },
        "connector edges must carry no flow"
    );
    Ok(Forest { edges, exact })
}

/// Label of a directed Euler tour (closed flow) or source-to-sink Euler
/// path of the replicated multigraph: `|value|` copies per support edge,
/// one copy in each direction per forest edge.
pub fn euler_word(f: &GridFlow, q: &Forest) -> Result<Word> {
    let doubled: BTreeSet<GridEdge> = q.edges.iter().cloned().collect();
    euler_label(f, &doubled)
}

/// A geodesic representative with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicResult {
    pub word: Word,
    pub length: usize,
    pub forest: Forest,
    pub exact: bool,
}

/// Geodesic representative of `w` in `M_r` under the given exactness
/// budget; falls back to the approximate forest (flagged) when the
/// budget is exceeded.
pub fn geodesic_with_limits(w: &Word, limits: &ExactLimits) -> GeodesicResult {
    let f = path_flow(w);
    let graph = support_components(&f);
    let forest = match minimal_forest(&graph, ForestMode::Exact, limits) {
        Ok(q) => q,
        Err(_) => minimal_forest(&graph, ForestMode::Approximate, limits)
            .expect("approximate mode has no budget"),
    };
    let word = euler_word(&f, &forest).expect("support plus forest is connected");
    // An Euler label over a forest of bridges cannot stutter; a
    // reducible word here would contradict the length formula.
    assert!(
        word.is_freely_reduced(),
        "euler label is not freely reduced"
    );
    let length = word.len();
    assert_eq!(
        length as u64,
        f.total_weight() + 2 * forest.len() as u64,
        "length formula violated"
    );
    GeodesicResult {
        word,
        length,
        exact: forest.exact,
        forest,
    }
}

/// Geodesic representative of `w` under the default budget.
pub fn geodesic(w: &Word) -> GeodesicResult {
    geodesic_with_limits(w, &ExactLimits::default())
}

pub fn geodesic_length_with_limits(w: &Word, limits: &ExactLimits) -> usize {
    geodesic_with_limits(w, limits).length
}

/// Geodesic length of `w` in `M_r` under the default budget.
pub fn geodesic_length(w: &Word) -> usize {
    geodesic(w).length
}

/// Bounded geodesic length: is the geodesic length of `w` at most `k`?
///
/// Exact whenever the forest budget allows; otherwise answers only when
/// the approximate upper bound or the support-weight lower bound
/// already decides, and reports `Undecided` with the bracket otherwise.
pub fn bglp_with_limits(w: &Word, k: usize, limits: &ExactLimits) -> Result<bool> {
    let f = path_flow(w);
    let lower = f.total_weight() as usize;
    if k < lower {
        return Ok(false);
    }
    let graph = support_components(&f);
    match minimal_forest(&graph, ForestMode::Exact, limits) {
        Ok(q) => Ok(lower + 2 * q.len() <= k),
        Err(Error::ExactLimitExceeded { .. }) => {
            let q = minimal_forest(&graph, ForestMode::Approximate, limits)
                .expect("approximate mode has no budget");
            let upper = lower + 2 * q.len();
            if upper <= k {
                Ok(true)
            } else {
                Err(Error::Undecided { lower, upper })
            }
        }
        Err(e) => Err(e),
    }
}

/// Bounded geodesic length under the default budget.
pub fn bglp(w: &Word, k: usize) -> Result<bool> {
    bglp_with_limits(w, k, &ExactLimits::default())
}
