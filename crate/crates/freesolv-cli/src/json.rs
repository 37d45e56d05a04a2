//! JSON wire formats for the solver outputs. Every structure re-parses
//! and converts back into the library's types.

use freesolv::magnus::{MagnusDiagonal, MagnusImage, MagnusRow};
use freesolv::solvable::PrefixSet;
use freesolv::{
    AbelianDerivativeMap, AbelianRingElement, AbelianVector, Forest, GeodesicResult, GridEdge,
    GridFlow, SolvableRingElement, SteinerTree, Word,
};
use serde::{Deserialize, Serialize};

/// One derivative-map entry: coefficient of `x^delta` in `dw/dx_gen`.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DerivEntryJson {
    pub delta: Vec<i64>,
    pub gen: usize,
    pub coeff: i64,
}

/// The derivative map serializes as a plain entry array in key order.
pub fn derivative_map_to_json(map: &AbelianDerivativeMap) -> Vec<DerivEntryJson> {
    map.iter()
        .map(|(key, coeff)| DerivEntryJson {
            delta: key.delta.coords().to_vec(),
            gen: key.gen,
            coeff,
        })
        .collect()
}

pub fn derivative_map_from_json(
    rank: usize,
    entries: &[DerivEntryJson],
) -> freesolv::Result<AbelianDerivativeMap> {
    AbelianDerivativeMap::from_entries(
        rank,
        entries
            .iter()
            .map(|e| (e.gen, AbelianVector::new(e.delta.clone()), e.coeff)),
    )
}

/// One group-ring term over the abelian base.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RingTermJson {
    pub delta: Vec<i64>,
    pub coeff: i64,
}

pub fn ring_element_to_json(e: &AbelianRingElement) -> Vec<RingTermJson> {
    e.iter()
        .map(|(delta, coeff)| RingTermJson {
            delta: delta.coords().to_vec(),
            coeff,
        })
        .collect()
}

pub fn ring_element_from_json(
    rank: usize,
    terms: &[RingTermJson],
) -> freesolv::Result<AbelianRingElement> {
    AbelianRingElement::from_terms(
        rank,
        terms
            .iter()
            .map(|t| (AbelianVector::new(t.delta.clone()), t.coeff)),
    )
}

/// One term of a group-ring element over a solvable base, with its
/// representative prefix resolved to a word.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolvableTermJson {
    pub coeff: i64,
    pub prefix_index: usize,
    pub prefix_word: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolvableElementJson {
    pub class: usize,
    pub terms: Vec<SolvableTermJson>,
}

pub fn solvable_element_to_json(e: &SolvableRingElement, word: &Word) -> SolvableElementJson {
    let prefixes = PrefixSet::new(word.clone());
    SolvableElementJson {
        class: e.klass(),
        terms: e
            .terms()
            .iter()
            .map(|&(coeff, prefix_index)| SolvableTermJson {
                coeff,
                prefix_index,
                prefix_word: word_text(&prefixes.prefix_word(prefix_index).expect("index in range")),
            })
            .collect(),
    }
}

pub fn solvable_element_from_json(e: &SolvableElementJson) -> SolvableRingElement {
    SolvableRingElement::from_terms(e.class, e.terms.iter().map(|t| (t.coeff, t.prefix_index)))
}

/// Magnus image diagonal: an exponent vector over the abelian base, or
/// the representative prefix of the word's class otherwise.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum MagnusDiagonalJson {
    Abelian(Vec<i64>),
    Solvable {
        prefix_index: usize,
        prefix_word: String,
    },
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum MagnusRowJson {
    Abelian(Vec<RingTermJson>),
    Solvable(SolvableElementJson),
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MagnusImageJson {
    pub class: usize,
    pub diagonal: MagnusDiagonalJson,
    pub rows: Vec<MagnusRowJson>,
}

pub fn magnus_to_json(image: &MagnusImage) -> MagnusImageJson {
    let word = image.word();
    let diagonal = match image.diagonal() {
        MagnusDiagonal::Abelian(v) => MagnusDiagonalJson::Abelian(v.coords().to_vec()),
        MagnusDiagonal::Solvable(p) => {
            let rep = p.rep(word.len());
            MagnusDiagonalJson::Solvable {
                prefix_index: rep,
                prefix_word: word_text(&word.prefix(rep)),
            }
        }
    };
    let rows = image
        .rows()
        .iter()
        .map(|row| match row {
            MagnusRow::Abelian(e) => MagnusRowJson::Abelian(ring_element_to_json(e)),
            MagnusRow::Solvable(e) => MagnusRowJson::Solvable(solvable_element_to_json(e, word)),
        })
        .collect();
    MagnusImageJson {
        class: image.class(),
        diagonal,
        rows,
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FlowEdgeJson {
    pub vertex: Vec<i64>,
    pub axis: usize,
    pub value: i64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FlowJson {
    pub rank: usize,
    pub source: Vec<i64>,
    pub sink: Vec<i64>,
    pub edges: Vec<FlowEdgeJson>,
}

pub fn flow_to_json(f: &GridFlow) -> FlowJson {
    FlowJson {
        rank: f.rank(),
        source: f.source().coords().to_vec(),
        sink: f.sink().coords().to_vec(),
        edges: f
            .iter()
            .map(|(e, value)| FlowEdgeJson {
                vertex: e.vertex.coords().to_vec(),
                axis: e.axis,
                value,
            })
            .collect(),
    }
}

pub fn flow_from_json(j: &FlowJson) -> freesolv::Result<GridFlow> {
    GridFlow::from_values(
        j.rank,
        AbelianVector::new(j.source.clone()),
        AbelianVector::new(j.sink.clone()),
        j.edges.iter().map(|e| {
            (
                GridEdge::new(AbelianVector::new(e.vertex.clone()), e.axis),
                e.value,
            )
        }),
    )
}

/// Unweighted grid edge (forest and Steiner tree members).
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BareEdgeJson {
    pub vertex: Vec<i64>,
    pub axis: usize,
}

fn bare_edges_to_json(edges: &[GridEdge]) -> Vec<BareEdgeJson> {
    edges
        .iter()
        .map(|e| BareEdgeJson {
            vertex: e.vertex.coords().to_vec(),
            axis: e.axis,
        })
        .collect()
}

pub fn bare_edges_from_json(edges: &[BareEdgeJson]) -> Vec<GridEdge> {
    edges
        .iter()
        .map(|e| GridEdge::new(AbelianVector::new(e.vertex.clone()), e.axis))
        .collect()
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeodesicJson {
    pub word: String,
    pub length: usize,
    pub forest_edges: Vec<BareEdgeJson>,
    pub exact: bool,
}

pub fn geodesic_to_json(g: &GeodesicResult) -> GeodesicJson {
    GeodesicJson {
        word: word_text(&g.word),
        length: g.length,
        forest_edges: bare_edges_to_json(&g.forest.edges),
        exact: g.exact,
    }
}

pub fn geodesic_from_json(j: &GeodesicJson, rank: usize) -> freesolv::Result<GeodesicResult> {
    Ok(GeodesicResult {
        word: Word::parse(&j.word, rank)?,
        length: j.length,
        forest: Forest {
            edges: bare_edges_from_json(&j.forest_edges),
            exact: j.exact,
        },
        exact: j.exact,
    })
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SteinerJson {
    pub size: usize,
    pub tree_edges: Vec<BareEdgeJson>,
}

pub fn steiner_to_json(t: &SteinerTree) -> SteinerJson {
    SteinerJson {
        size: t.size,
        tree_edges: bare_edges_to_json(&t.edges),
    }
}

pub fn steiner_from_json(j: &SteinerJson) -> SteinerTree {
    SteinerTree {
        size: j.size,
        edges: bare_edges_from_json(&j.tree_edges),
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecisionJson {
    pub answer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<usize>,
}

/// Compact word text: compact letters when the rank allows, explicit
/// tokens otherwise.
pub fn word_text(w: &Word) -> String {
    w.to_compact().unwrap_or_else(|| w.to_explicit())
}
