//! Graph-to-graph constructions shared by the conversion machinery.

use super::{
    BipartiteMultiGraph, Hypergraph, MultiGraph, Partition, SimpleGraph, TessellationCover,
};
use crate::error::{Error, Result};

/// Bookkeeping for the duplicated multigraph of a base graph `H`.
///
/// Base edge `e = (u, v)` yields edge `2e = (u, v')` and edge `2e + 1 =
/// (v, u')`, so the duplicated graph is symmetric under the copy swap. The
/// same pairing identifies duplicated edges with arcs of `H`: the arc along
/// edge `e` into `u` corresponds to the duplicated edge whose plain end is
/// `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct DuplicateMap {
    base_edge_count: usize,
}

impl DuplicateMap {
    /// Source edge of a duplicated edge.
    pub fn source_edge(&self, e2: usize) -> usize {
        e2 / 2
    }

    /// Whether the duplicated edge is the `(u, v')` copy (rather than
    /// `(v, u')`).
    pub fn is_forward(&self, e2: usize) -> bool {
        e2 % 2 == 0
    }

    /// Copy-crossed partner: the other duplicated edge of the same base
    /// edge.
    pub fn partner(&self, e2: usize) -> usize {
        e2 ^ 1
    }

    /// Arc of the base graph matched to a duplicated edge: terminus is the
    /// plain end, origin is the preimage of the primed end.
    pub fn arc_of(&self, e2: usize) -> usize {
        e2 ^ 1
    }

    /// Inverse of [`DuplicateMap::arc_of`].
    pub fn edge2_of_arc(&self, arc: usize) -> usize {
        arc ^ 1
    }

    pub fn edge2_count(&self) -> usize {
        2 * self.base_edge_count
    }
}

/// Duplicated multigraph: `X` is the vertex set, `Y` its primed copy, and
/// every base edge appears once in each crossing direction, preserving
/// multiplicities.
pub fn duplicate(h: &MultiGraph) -> Result<(BipartiteMultiGraph, DuplicateMap)> {
    if !h.is_connected() {
        return Err(Error::Graph(
            "duplication requires a connected base graph".into(),
        ));
    }
    let x_names: Vec<String> = h.vertex_names().to_vec();
    let y_names: Vec<String> = h.vertex_names().iter().map(|n| format!("{n}'")).collect();
    let mut edges = Vec::with_capacity(2 * h.edge_count());
    for e in 0..h.edge_count() {
        let (u, v) = h.endpoints(e);
        edges.push((u, v)); // (u, v')
        edges.push((v, u)); // (v, u')
    }
    let g2 = BipartiteMultiGraph::new(x_names, y_names, edges)?;
    Ok((
        g2,
        DuplicateMap {
            base_edge_count: h.edge_count(),
        },
    ))
}

/// Generalized intersection graph of a partition pair: one part per class
/// of each partition, one edge per ground-set element. Edge `w` joins the
/// classes containing `w`, so edge ids coincide with element ids.
pub fn intersection_graph(pi1: &Partition, pi2: &Partition) -> Result<BipartiteMultiGraph> {
    if pi1.size() != pi2.size() {
        return Err(Error::Partition(format!(
            "partitions cover ground sets of sizes {} and {}",
            pi1.size(),
            pi2.size()
        )));
    }
    let x_names: Vec<String> = (0..pi1.class_count()).map(|i| format!("C{i}")).collect();
    let y_names: Vec<String> = (0..pi2.class_count()).map(|j| format!("D{j}")).collect();
    let edges: Vec<(usize, usize)> = (0..pi1.size())
        .map(|w| (pi1.class_of(w), pi2.class_of(w)))
        .collect();
    BipartiteMultiGraph::new(x_names, y_names, edges)
}

/// Recover the partition pair of a bipartite multigraph's edge set: classes
/// by shared X-end and by shared Y-end, ordered by vertex.
pub fn partitions_from_bipartite(g: &BipartiteMultiGraph) -> (Partition, Partition) {
    let by_x: Vec<usize> = g.edges().iter().map(|&(x, _)| x).collect();
    let by_y: Vec<usize> = g.edges().iter().map(|&(_, y)| y).collect();
    (Partition::from_keys(&by_x), Partition::from_keys(&by_y))
}

/// Simple graph on the ground set of a partition pair: vertices are the
/// elements, adjacency is sharing a class of either partition. The two
/// partitions become a valid tessellation cover of the result.
pub fn staggered_graph(
    pi1: &Partition,
    pi2: &Partition,
) -> Result<(SimpleGraph, TessellationCover)> {
    if pi1.size() != pi2.size() {
        return Err(Error::Partition(format!(
            "partitions cover ground sets of sizes {} and {}",
            pi1.size(),
            pi2.size()
        )));
    }
    let n = pi1.size();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if pi1.same_class(u, v) || pi2.same_class(u, v) {
                edges.push((u, v));
            }
        }
    }
    let graph = SimpleGraph::with_indices(n, edges)?;
    let cover = TessellationCover::new(graph.clone(), pi1.clone(), pi2.clone())?;
    let report = super::validate_tessellation_cover(&cover);
    if !report.valid() {
        return Err(Error::Internal(format!(
            "staggered graph construction produced an invalid cover: {report:?}"
        )));
    }
    Ok((graph, cover))
}

/// Line graph: one vertex per edge, adjacency iff the edges share an
/// endpoint. Parallel edges share both endpoints and become adjacent.
pub fn line_graph(g: &MultiGraph) -> SimpleGraph {
    let m = g.edge_count();
    let names: Vec<String> = (0..m).map(|e| format!("e{e}")).collect();
    let mut edges = Vec::new();
    for e in 0..m {
        let (a, b) = g.endpoints(e);
        for f in (e + 1)..m {
            let (c, d) = g.endpoints(f);
            if a == c || a == d || b == c || b == d {
                edges.push((e, f));
            }
        }
    }
    SimpleGraph::new(names, edges).expect("line graph is simple")
}

/// Incidence structure of a hypergraph: the ground set is the set of
/// `(hyperedge, vertex)` pairs, partitioned by vertex and by hyperedge.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergraphIncidence {
    /// `(hyperedge, vertex)` pairs in (hyperedge, vertex) order.
    pub pairs: Vec<(usize, usize)>,
    /// Classes grouped by vertex, ordered by vertex id.
    pub by_vertex: Partition,
    /// Classes grouped by hyperedge, ordered by hyperedge id.
    pub by_hyperedge: Partition,
    /// Display labels for the pairs.
    pub labels: Vec<String>,
}

pub fn hypergraph_incidence(h: &Hypergraph) -> HypergraphIncidence {
    let mut pairs = Vec::new();
    for e in 0..h.hyperedge_count() {
        for &u in h.hyperedge(e) {
            pairs.push((e, u));
        }
    }
    let vertex_keys: Vec<usize> = pairs.iter().map(|&(_, u)| u).collect();
    let edge_keys: Vec<usize> = pairs.iter().map(|&(e, _)| e).collect();
    let labels = pairs
        .iter()
        .map(|&(e, u)| format!("(h{e},{})", h.vertex_name(u)))
        .collect();
    HypergraphIncidence {
        by_vertex: Partition::from_keys(&vertex_keys),
        by_hyperedge: Partition::from_keys(&edge_keys),
        pairs,
        labels,
    }
}

impl HypergraphIncidence {
    /// For a 2-uniform hypergraph, the induced multigraph together with the
    /// pair-to-arc identification: pair `(e, u)` maps to the arc along edge
    /// `e` whose terminus is `u`.
    pub fn to_multigraph_with_arc_map(&self, h: &Hypergraph) -> Option<(MultiGraph, Vec<usize>)> {
        if !h.is_two_uniform() {
            return None;
        }
        let edges: Vec<(usize, usize)> = (0..h.hyperedge_count())
            .map(|e| {
                let he = h.hyperedge(e);
                (he[0], he[1])
            })
            .collect();
        let g = MultiGraph::new(
            (0..h.vertex_count())
                .map(|v| h.vertex_name(v).to_string())
                .collect(),
            edges,
        )
        .ok()?;
        // edge (a, b) stored with a < b: arc 2e has terminus b, arc 2e+1 has
        // terminus a
        let map = self
            .pairs
            .iter()
            .map(|&(e, u)| {
                let he = h.hyperedge(e);
                if u == he[1] {
                    2 * e
                } else {
                    2 * e + 1
                }
            })
            .collect();
        Some((g, map))
    }
}
