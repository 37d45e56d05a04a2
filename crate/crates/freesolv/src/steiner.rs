//! Exact and approximate rectilinear Steiner connectors.
//!
//! The exact solver finds a minimum-edge grid subgraph connecting a
//! family of terminal groups (each group is contracted to one node and
//! reached for free at any of its vertices). In the plane the Steiner
//! candidates are restricted to the Hanan grid of all group vertices,
//! which contains an optimal tree; in higher rank the candidates are the
//! whole bounding box of the group vertices, which also contains an
//! optimal tree since clamping a connector to the box never lengthens
//! it. Either way the candidate graph is searched by terminal-subset
//! dynamic programming, so exact mode is budgeted by [`ExactLimits`].
//!
//! The approximate connector is a minimum spanning tree over pairwise
//! rectilinear group distances, realized by monotone grid paths; its
//! size is at most twice optimal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::flow::{l_path_edges, DisjointSets, GridEdge};
use crate::words::AbelianVector;

/// Budget for the exact Steiner search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    /// Maximum number of terminal groups given to the subset DP.
    pub max_terminals: usize,
    /// Maximum number of candidate lattice vertices.
    pub max_vertices: usize,
}

impl Default for ExactLimits {
    fn default() -> ExactLimits {
        ExactLimits {
            max_terminals: 10,
            max_vertices: 10_000,
        }
    }
}

/// An optimal rectilinear Steiner tree: its edge count and its unit
/// grid edges (sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerTree {
    pub size: usize,
    pub edges: Vec<GridEdge>,
}

/// Minimum number of grid edges connecting the points of `a`, with an
/// optimal tree. Duplicate points are collapsed.
pub fn steiner_size(a: &[(i64, i64)], limits: &ExactLimits) -> Result<SteinerTree> {
    if a.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let distinct: BTreeSet<(i64, i64)> = a.iter().copied().collect();
    let groups: Vec<Vec<AbelianVector>> = distinct
        .into_iter()
        .map(|(x, y)| alloc::vec![AbelianVector::new(alloc::vec![x, y])])
        .collect();
    let edges = exact_connector(&groups, 2, limits)?;
    Ok(SteinerTree {
        size: edges.len(),
        edges,
    })
}

/// Weighted candidate graph with contracted terminal groups. Each edge
/// remembers the lattice segment it stands for.
struct CandidateGraph {
    node_count: usize,
    edges: Vec<CandidateEdge>,
    /// node -> incident edge indices
    adjacency: Vec<Vec<usize>>,
    /// one contracted node per terminal group
    terminals: Vec<usize>,
}

struct CandidateEdge {
    a: usize,
    b: usize,
    weight: u64,
    ends: (AbelianVector, AbelianVector),
}

impl CandidateGraph {
    fn push_edge(&mut self, a: usize, b: usize, weight: u64, ends: (AbelianVector, AbelianVector)) {
        if a == b {
            return;
        }
        let idx = self.edges.len();
        self.edges.push(CandidateEdge { a, b, weight, ends });
        self.adjacency[a].push(idx);
        self.adjacency[b].push(idx);
    }
}

/// Exact minimum connector for the groups; errors when the candidate
/// graph exceeds the limits.
pub(crate) fn exact_connector(
    groups: &[Vec<AbelianVector>],
    rank: usize,
    limits: &ExactLimits,
) -> Result<Vec<GridEdge>> {
    if groups.len() <= 1 {
        return Ok(Vec::new());
    }
    let graph = if rank == 2 {
        hanan_graph(groups, limits)?
    } else {
        box_graph(groups, rank, limits)?
    };
    let chosen = dreyfus_wagner(&graph);
    let mut edges = BTreeSet::new();
    for idx in chosen {
        let e = &graph.edges[idx];
        edges.extend(l_path_edges(&e.ends.0, &e.ends.1));
    }
    Ok(edges.into_iter().collect())
}

/// MST connector over pairwise group distances, realized as monotone
/// grid paths and pruned back to a forest.
pub(crate) fn approximate_connector(groups: &[Vec<AbelianVector>]) -> Vec<GridEdge> {
    if groups.len() <= 1 {
        return Vec::new();
    }
    // Prim over the complete group graph; distances take the closest
    // vertex pair.
    let s = groups.len();
    let mut in_tree = alloc::vec![false; s];
    let mut best: Vec<(u64, (AbelianVector, AbelianVector))> = (0..s)
        .map(|i| group_distance(&groups[0], &groups[i]))
        .collect();
    in_tree[0] = true;
    let mut candidate_edges: BTreeSet<GridEdge> = BTreeSet::new();
    for _ in 1..s {
        let next = (0..s)
            .filter(|&i| !in_tree[i])
            .min_by_key(|&i| (best[i].0, i))
            .expect("some group is outside the tree");
        in_tree[next] = true;
        let (from, to) = best[next].1.clone();
        candidate_edges.extend(l_path_edges(&from, &to));
        for i in 0..s {
            if !in_tree[i] {
                let (d, pair) = group_distance(&groups[next], &groups[i]);
                if d < best[i].0 {
                    best[i] = (d, pair);
                }
            }
        }
    }
    prune_to_forest(groups, candidate_edges)
}

/// Keeps only candidate edges that join two still-disconnected parts,
/// with the groups pre-connected; the result is a forest of connector
/// edges with the same reach.
fn prune_to_forest(
    groups: &[Vec<AbelianVector>],
    candidate_edges: BTreeSet<GridEdge>,
) -> Vec<GridEdge> {
    let mut vertices: BTreeSet<AbelianVector> = BTreeSet::new();
    for group in groups {
        vertices.extend(group.iter().cloned());
    }
    for edge in &candidate_edges {
        vertices.insert(edge.vertex.clone());
        vertices.insert(edge.head());
    }
    let vertices: Vec<AbelianVector> = vertices.into_iter().collect();
    let index: BTreeMap<&AbelianVector, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut dsu = DisjointSets::new(vertices.len());
    for group in groups {
        let first = index[&group[0]];
        for v in group {
            dsu.union(first, index[v]);
        }
    }
    let mut kept = Vec::new();
    for edge in candidate_edges {
        let a = index[&edge.vertex];
        let b = index[&edge.head()];
        if dsu.find(a) != dsu.find(b) {
            dsu.union(a, b);
            kept.push(edge);
        }
    }
    kept
}

/// Closest vertex pair between two groups, as `(distance, (from, to))`
/// with `from` in `b` and `to` in `a`.
fn group_distance(a: &[AbelianVector], b: &[AbelianVector]) -> (u64, (AbelianVector, AbelianVector)) {
    let mut best: Option<(u64, (AbelianVector, AbelianVector))> = None;
    for u in a {
        for v in b {
            let d = u.sub(v).l1_norm();
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, (v.clone(), u.clone())));
            }
        }
    }
    best.expect("groups are nonempty")
}

fn hanan_graph(groups: &[Vec<AbelianVector>], limits: &ExactLimits) -> Result<CandidateGraph> {
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    for group in groups {
        for v in group {
            xs.insert(v.coord(1));
            ys.insert(v.coord(2));
        }
    }
    let xs: Vec<i64> = xs.into_iter().collect();
    let ys: Vec<i64> = ys.into_iter().collect();
    let vertex_count = xs.len() * ys.len();
    check_limits(groups.len(), vertex_count, limits)?;

    let point = |xi: usize, yj: usize| AbelianVector::new(alloc::vec![xs[xi], ys[yj]]);
    let raw = |xi: usize, yj: usize| xi * ys.len() + yj;
    let x_index: BTreeMap<i64, usize> = xs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let y_index: BTreeMap<i64, usize> = ys.iter().enumerate().map(|(j, &y)| (y, j)).collect();
    let raw_of = |v: &AbelianVector| raw(x_index[&v.coord(1)], y_index[&v.coord(2)]);

    let mut dsu = DisjointSets::new(vertex_count);
    for group in groups {
        for v in group {
            dsu.union(raw_of(&group[0]), raw_of(v));
        }
    }
    let (node_of_raw, node_count) = compress(&mut dsu, vertex_count);

    let mut graph = CandidateGraph {
        node_count,
        edges: Vec::new(),
        adjacency: alloc::vec![Vec::new(); node_count],
        terminals: Vec::new(),
    };
    for xi in 0..xs.len() {
        for yj in 0..ys.len() {
            if xi + 1 < xs.len() {
                graph.push_edge(
                    node_of_raw[raw(xi, yj)],
                    node_of_raw[raw(xi + 1, yj)],
                    (xs[xi + 1] - xs[xi]) as u64,
                    (point(xi, yj), point(xi + 1, yj)),
                );
            }
            if yj + 1 < ys.len() {
                graph.push_edge(
                    node_of_raw[raw(xi, yj)],
                    node_of_raw[raw(xi, yj + 1)],
                    (ys[yj + 1] - ys[yj]) as u64,
                    (point(xi, yj), point(xi, yj + 1)),
                );
            }
        }
    }
    graph.terminals = groups.iter().map(|g| node_of_raw[raw_of(&g[0])]).collect();
    Ok(graph)
}

fn box_graph(
    groups: &[Vec<AbelianVector>],
    rank: usize,
    limits: &ExactLimits,
) -> Result<CandidateGraph> {
    let mut lo = alloc::vec![i64::MAX; rank];
    let mut hi = alloc::vec![i64::MIN; rank];
    for group in groups {
        for v in group {
            for axis in 0..rank {
                lo[axis] = lo[axis].min(v.coords()[axis]);
                hi[axis] = hi[axis].max(v.coords()[axis]);
            }
        }
    }
    let mut extent = Vec::with_capacity(rank);
    let mut vertex_count: usize = 1;
    for axis in 0..rank {
        let e = (hi[axis] - lo[axis]) as usize + 1;
        extent.push(e);
        vertex_count = vertex_count.saturating_mul(e);
    }
    check_limits(groups.len(), vertex_count, limits)?;

    let raw = |coords: &[i64]| -> usize {
        let mut id = 0usize;
        for axis in 0..rank {
            id = id * extent[axis] + (coords[axis] - lo[axis]) as usize;
        }
        id
    };
    let point_of_raw = |mut id: usize| -> AbelianVector {
        let mut coords = alloc::vec![0i64; rank];
        for axis in (0..rank).rev() {
            coords[axis] = lo[axis] + (id % extent[axis]) as i64;
            id /= extent[axis];
        }
        AbelianVector::new(coords)
    };

    let mut dsu = DisjointSets::new(vertex_count);
    for group in groups {
        for v in group {
            dsu.union(raw(group[0].coords()), raw(v.coords()));
        }
    }
    let (node_of_raw, node_count) = compress(&mut dsu, vertex_count);

    let mut graph = CandidateGraph {
        node_count,
        edges: Vec::new(),
        adjacency: alloc::vec![Vec::new(); node_count],
        terminals: Vec::new(),
    };
    for id in 0..vertex_count {
        let p = point_of_raw(id);
        for axis in 1..=rank {
            if p.coord(axis) < hi[axis - 1] {
                let q = p.stepped(axis, 1);
                graph.push_edge(node_of_raw[id], node_of_raw[raw(q.coords())], 1, (p.clone(), q));
            }
        }
    }
    graph.terminals = groups
        .iter()
        .map(|g| node_of_raw[raw(g[0].coords())])
        .collect();
    Ok(graph)
}

/// Dense node ids per union-find root.
fn compress(dsu: &mut DisjointSets, raw_count: usize) -> (Vec<usize>, usize) {
    let mut node_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut node_of_raw = alloc::vec![0usize; raw_count];
    for (id, slot) in node_of_raw.iter_mut().enumerate() {
        let root = dsu.find(id);
        let next = node_of_root.len();
        *slot = *node_of_root.entry(root).or_insert(next);
    }
    (node_of_raw, node_of_root.len())
}

fn check_limits(terminals: usize, vertices: usize, limits: &ExactLimits) -> Result<()> {
    if terminals > limits.max_terminals || vertices > limits.max_vertices {
        return Err(Error::ExactLimitExceeded {
            terminals,
            vertices,
            max_terminals: limits.max_terminals,
            max_vertices: limits.max_vertices,
        });
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Provenance {
    None,
    /// Reached by walking an edge from another node with the same mask.
    Edge { edge: u32, from: u32 },
    /// Union of two subtrees rooted at this node.
    Merge { sub: u16 },
}

/// Terminal-subset dynamic programming for minimum Steiner trees
/// (Dreyfus-Wagner with Dijkstra relaxation). Returns chosen edge ids.
fn dreyfus_wagner(graph: &CandidateGraph) -> Vec<usize> {
    let t = graph.terminals.len();
    debug_assert!(t >= 2);
    assert!(t <= 16, "terminal masks are 16-bit");
    let n = graph.node_count;
    let full: usize = (1 << t) - 1;
    const INF: u64 = u64::MAX / 4;

    let mut cost = alloc::vec![alloc::vec![INF; n]; full + 1];
    let mut prov = alloc::vec![alloc::vec![Provenance::None; n]; full + 1];
    for (i, &term) in graph.terminals.iter().enumerate() {
        cost[1 << i][term] = 0;
    }

    let mut heap: alloc::collections::BinaryHeap<Reverse<(u64, usize)>> =
        alloc::collections::BinaryHeap::new();
    for mask in 1..=full {
        // Merge two complementary sub-masks at a common node; `sub < rest`
        // covers each split once.
        let mut sub = (mask - 1) & mask;
        while sub > 0 {
            let rest = mask ^ sub;
            if sub < rest {
                for v in 0..n {
                    let merged = cost[sub][v].saturating_add(cost[rest][v]);
                    if merged < cost[mask][v] {
                        cost[mask][v] = merged;
                        prov[mask][v] = Provenance::Merge { sub: sub as u16 };
                    }
                }
            }
            sub = (sub - 1) & mask;
        }
        // Dijkstra pass spreading the mask's trees along edges.
        heap.clear();
        for v in 0..n {
            if cost[mask][v] < INF {
                heap.push(Reverse((cost[mask][v], v)));
            }
        }
        while let Some(Reverse((c, v))) = heap.pop() {
            if c > cost[mask][v] {
                continue;
            }
            for &edge_idx in &graph.adjacency[v] {
                let e = &graph.edges[edge_idx];
                let to = if e.a == v { e.b } else { e.a };
                let nc = c.saturating_add(e.weight);
                if nc < cost[mask][to] {
                    cost[mask][to] = nc;
                    prov[mask][to] = Provenance::Edge {
                        edge: edge_idx as u32,
                        from: v as u32,
                    };
                    heap.push(Reverse((nc, to)));
                }
            }
        }
    }

    // Rebuild the chosen edge set from the provenance.
    let mut chosen = Vec::new();
    let mut stack = alloc::vec![(full, graph.terminals[0])];
    while let Some((mask, v)) = stack.pop() {
        match prov[mask][v] {
            Provenance::None => {}
            Provenance::Edge { edge, from } => {
                chosen.push(edge as usize);
                stack.push((mask, from as usize));
            }
            Provenance::Merge { sub } => {
                stack.push((sub as usize, v));
                stack.push((mask ^ sub as usize, v));
            }
        }
    }
    chosen
}
