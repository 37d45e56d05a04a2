//! Geometric flows on the Cayley graph of the free abelian group (the
//! integer grid) and their realization as path words.
//!
//! Walking a word from the origin and counting signed traversals of each
//! grid edge yields the path flow: `+1` per positive crossing, `-1` per
//! negative one. Flows are stored on positively oriented edges only; a
//! negative value means net traversal against the orientation. A path
//! flow obeys the Kirchhoff law away from its endpoints, has net flow
//! `+1` at the source and `-1` at the sink (or is a circulation when the
//! path is closed), and has finite support. Flows with these properties
//! are called geometric, and every geometric flow is the path flow of
//! some word, recovered here by an Euler tour of the support multigraph.
//!
//! Two words are equal in the free metabelian group exactly when their
//! path flows coincide, which makes flow comparison an independent route
//! to the word problem, and the flow values coincide edge-by-edge with
//! the abelianized Fox derivative coefficients.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::words::{AbelianVector, Letter, Word};

/// A positively oriented grid edge: from `vertex` one step along `axis`.
///
/// The derived order is axis-major then vertex-lexicographic, matching
/// the derivative-map key order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridEdge {
    pub axis: usize,
    pub vertex: AbelianVector,
}

impl GridEdge {
    pub fn new(vertex: AbelianVector, axis: usize) -> GridEdge {
        GridEdge { axis, vertex }
    }

    /// Head of the positively oriented edge.
    pub fn head(&self) -> AbelianVector {
        self.vertex.stepped(self.axis, 1)
    }
}

/// An integer-valued flow with finite support on the grid of the given
/// rank. Zero-valued edges are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFlow {
    rank: usize,
    source: AbelianVector,
    sink: AbelianVector,
    values: BTreeMap<GridEdge, i64>,
}

impl GridFlow {
    /// The empty flow at the origin.
    pub fn empty(rank: usize) -> GridFlow {
        GridFlow {
            rank,
            source: AbelianVector::zero(rank),
            sink: AbelianVector::zero(rank),
            values: BTreeMap::new(),
        }
    }

    /// Assembles a flow from explicit edge values; zero entries are
    /// dropped, repeated edges accumulate.
    pub fn from_values(
        rank: usize,
        source: AbelianVector,
        sink: AbelianVector,
        values: impl IntoIterator<Item = (GridEdge, i64)>,
    ) -> Result<GridFlow> {
        if source.rank() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: source.rank(),
            });
        }
        if sink.rank() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: sink.rank(),
            });
        }
        let mut flow = GridFlow {
            rank,
            source,
            sink,
            values: BTreeMap::new(),
        };
        for (edge, value) in values {
            if edge.vertex.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: edge.vertex.rank(),
                });
            }
            if edge.axis == 0 || edge.axis > rank {
                return Err(Error::GeneratorOutOfRange {
                    gen: edge.axis,
                    rank,
                });
            }
            flow.bump(edge, value);
        }
        Ok(flow)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn source(&self) -> &AbelianVector {
        &self.source
    }

    pub fn sink(&self) -> &AbelianVector {
        &self.sink
    }

    /// Support entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&GridEdge, i64)> {
        self.values.iter().map(|(e, &v)| (e, v))
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, edge: &GridEdge) -> i64 {
        self.values.get(edge).copied().unwrap_or(0)
    }

    /// Total traversal weight `sum |f(e)|`; the support part of the
    /// geodesic length formula.
    pub fn total_weight(&self) -> u64 {
        self.values.values().map(|v| v.unsigned_abs()).sum()
    }

    fn bump(&mut self, edge: GridEdge, inc: i64) {
        if inc == 0 {
            return;
        }
        match self.values.entry(edge) {
            Entry::Vacant(e) => {
                e.insert(inc);
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v = v.checked_add(inc).expect("flow value overflow");
                if *v == 0 {
                    e.remove();
                }
            }
        }
    }

    /// Net flow at `v`: outgoing minus incoming over the support.
    pub fn net_flow(&self, v: &AbelianVector) -> i64 {
        let mut net = 0i64;
        for axis in 1..=self.rank {
            net += self.value(&GridEdge::new(v.clone(), axis));
            net -= self.value(&GridEdge::new(v.stepped(axis, -1), axis));
        }
        net
    }

    /// Vertices incident to the support, plus source and sink.
    pub fn vertices(&self) -> BTreeSet<AbelianVector> {
        let mut out = BTreeSet::new();
        out.insert(self.source.clone());
        out.insert(self.sink.clone());
        for edge in self.values.keys() {
            out.insert(edge.vertex.clone());
            out.insert(edge.head());
        }
        out
    }

    /// True when the Kirchhoff law holds everywhere, endpoints included.
    pub fn is_circulation(&self) -> bool {
        self.vertices().iter().all(|v| self.net_flow(v) == 0)
    }

    /// Checks the geometric-flow conditions: Kirchhoff law off the
    /// endpoints, and either a circulation with `source = sink` or net
    /// flow `+1` at the source and `-1` at the sink.
    pub fn validate_geometric(&self) -> Result<()> {
        let closed = self.source == self.sink;
        for v in self.vertices() {
            let net = self.net_flow(&v);
            let expected = if closed {
                0
            } else if v == self.source {
                1
            } else if v == self.sink {
                -1
            } else {
                0
            };
            if net != expected {
                return Err(Error::NotGeometric {
                    vertex: v.coords().to_vec(),
                });
            }
        }
        Ok(())
    }

    /// The flow shifted by `delta` (edges, source and sink alike).
    pub fn translated(&self, delta: &AbelianVector) -> GridFlow {
        GridFlow {
            rank: self.rank,
            source: self.source.add(delta),
            sink: self.sink.add(delta),
            values: self
                .values
                .iter()
                .map(|(e, &v)| (GridEdge::new(e.vertex.add(delta), e.axis), v))
                .collect(),
        }
    }

    /// The flow of the reversed path: endpoints swapped, values negated.
    pub fn reversed(&self) -> GridFlow {
        GridFlow {
            rank: self.rank,
            source: self.sink.clone(),
            sink: self.source.clone(),
            values: self.values.iter().map(|(e, &v)| (e.clone(), -v)).collect(),
        }
    }

    /// Groupoid composition: `other` is translated so its source meets
    /// this flow's sink, then the values are added.
    pub fn compose(&self, other: &GridFlow) -> Result<GridFlow> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let shift = self.sink.sub(&other.source);
        let translated = other.translated(&shift);
        let mut out = GridFlow {
            rank: self.rank,
            source: self.source.clone(),
            sink: translated.sink.clone(),
            values: self.values.clone(),
        };
        for (edge, value) in translated.values {
            out.bump(edge, value);
        }
        Ok(out)
    }

    /// Realizes a geometric flow as a word whose path flow (anchored at
    /// the flow's source) reproduces it, per the Euler-tour construction.
    ///
    /// Support components are joined to the source's component with
    /// axis-by-axis monotone grid connectors; each connector edge is
    /// walked once in each direction, so it leaves no trace in the flow.
    pub fn flow_to_path(&self) -> Result<Word> {
        self.validate_geometric()?;
        let components = support_component_sets(self);
        let mut doubled: BTreeSet<GridEdge> = BTreeSet::new();
        let source_component = components
            .iter()
            .position(|c| c.contains(&self.source))
            .expect("source is a support-graph vertex");
        for (i, component) in components.iter().enumerate() {
            if i == source_component {
                continue;
            }
            let start = component.iter().next().expect("components are nonempty");
            for edge in l_path_edges(start, &self.source) {
                if self.value(&edge) == 0 {
                    doubled.insert(edge);
                }
            }
        }
        euler_label(self, &doubled)
    }
}

/// Equality of flows: same endpoints and identical values. For path
/// flows this decides equality in the free metabelian group.
pub fn flow_equal(f: &GridFlow, g: &GridFlow) -> bool {
    f == g
}

/// The path flow of `w`: walk from the origin and count signed
/// traversals of every grid edge.
pub fn path_flow(w: &Word) -> GridFlow {
    let mut flow = GridFlow::empty(w.rank());
    let mut at = AbelianVector::zero(w.rank());
    for &letter in w.letters() {
        let axis = letter.gen();
        if letter.is_positive() {
            flow.bump(GridEdge::new(at.clone(), axis), 1);
            at = at.stepped(axis, 1);
        } else {
            at = at.stepped(axis, -1);
            flow.bump(GridEdge::new(at.clone(), axis), -1);
        }
    }
    flow.sink = at;
    flow
}

/// Connected components of the undirected support graph together with
/// the source and sink (possibly isolated), as vertex sets.
pub(crate) fn support_component_sets(f: &GridFlow) -> Vec<BTreeSet<AbelianVector>> {
    let vertices: Vec<AbelianVector> = f.vertices().into_iter().collect();
    let index: BTreeMap<&AbelianVector, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut dsu = DisjointSets::new(vertices.len());
    for edge in f.values.keys() {
        let a = index[&edge.vertex];
        let b = index[&edge.head()];
        dsu.union(a, b);
    }
    let mut groups: BTreeMap<usize, BTreeSet<AbelianVector>> = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        groups.entry(dsu.find(i)).or_default().insert(v.clone());
    }
    groups.into_values().collect()
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> DisjointSets {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Unit edges of the axis-by-axis monotone grid path from `from` to `to`.
pub(crate) fn l_path_edges(from: &AbelianVector, to: &AbelianVector) -> Vec<GridEdge> {
    let mut edges = Vec::new();
    let mut at = from.clone();
    for axis in 1..=from.rank() {
        while at.coord(axis) < to.coord(axis) {
            edges.push(GridEdge::new(at.clone(), axis));
            at = at.stepped(axis, 1);
        }
        while at.coord(axis) > to.coord(axis) {
            at = at.stepped(axis, -1);
            edges.push(GridEdge::new(at.clone(), axis));
        }
    }
    edges
}

/// Label of a directed Euler tour (or source-to-sink Euler path) of the
/// multigraph built from the flow: each support edge contributes
/// `|value|` parallel copies oriented by its sign, and each `doubled`
/// edge contributes one copy in each direction.
///
/// Successors are taken in `(axis, direction)` order with positive
/// before negative, from the source vertex, so the label is
/// deterministic.
pub(crate) fn euler_label(flow: &GridFlow, doubled: &BTreeSet<GridEdge>) -> Result<Word> {
    // Deterministic vertex ids in lexicographic order.
    let mut vertex_set = flow.vertices();
    for edge in doubled {
        vertex_set.insert(edge.vertex.clone());
        vertex_set.insert(edge.head());
    }
    let vertices: Vec<AbelianVector> = vertex_set.into_iter().collect();
    let index: BTreeMap<&AbelianVector, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();

    // Directed multigraph adjacency; entries later sorted by letter with
    // positive direction first.
    let mut adjacency: Vec<Vec<(Letter, usize)>> = alloc::vec![Vec::new(); vertices.len()];
    let mut in_degree = alloc::vec![0usize; vertices.len()];
    let mut total_edges = 0usize;
    let mut add = |from: usize, to: usize, letter: Letter| {
        adjacency[from].push((letter, to));
        in_degree[to] += 1;
        total_edges += 1;
    };
    for (edge, &value) in flow.values.iter() {
        let tail = index[&edge.vertex];
        let head = index[&edge.head()];
        let copies = value.unsigned_abs() as usize;
        for _ in 0..copies {
            if value > 0 {
                add(tail, head, Letter::positive(edge.axis));
            } else {
                add(head, tail, Letter::negative(edge.axis));
            }
        }
    }
    for edge in doubled {
        debug_assert_eq!(flow.value(edge), 0, "doubled edges carry no flow");
        let tail = index[&edge.vertex];
        let head = index[&edge.head()];
        add(tail, head, Letter::positive(edge.axis));
        add(head, tail, Letter::negative(edge.axis));
    }

    // Parity: interior vertices balanced; endpoints off by one on an
    // open path.
    let source = index[&flow.source];
    let sink = index[&flow.sink];
    let closed = source == sink;
    for (i, v) in vertices.iter().enumerate() {
        let out = adjacency[i].len() as i64;
        let inn = in_degree[i] as i64;
        let expected = if closed {
            0
        } else if i == source {
            1
        } else if i == sink {
            -1
        } else {
            0
        };
        if out - inn != expected {
            return Err(Error::DegreeParity {
                vertex: v.coords().to_vec(),
            });
        }
    }

    // Letter order (axis, positive-before-negative): positive(k) sorts
    // before negative(k) and both before axis k+1.
    for list in &mut adjacency {
        list.sort_by_key(|(letter, _)| (letter.gen(), !letter.is_positive()));
    }

    // Hierholzer with per-vertex cursors.
    let mut cursor = alloc::vec![0usize; vertices.len()];
    let mut stack: Vec<(usize, Option<Letter>)> = alloc::vec![(source, None)];
    let mut label_reversed: Vec<Letter> = Vec::with_capacity(total_edges);
    while let Some(&(v, _)) = stack.last() {
        if cursor[v] < adjacency[v].len() {
            let (letter, to) = adjacency[v][cursor[v]];
            cursor[v] += 1;
            stack.push((to, Some(letter)));
        } else {
            let (_, letter) = stack.pop().expect("stack nonempty");
            if let Some(letter) = letter {
                label_reversed.push(letter);
            }
        }
    }
    if label_reversed.len() != total_edges {
        return Err(Error::Disconnected);
    }
    label_reversed.reverse();
    Word::from_letters(flow.rank, label_reversed)
}
