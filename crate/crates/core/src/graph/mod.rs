//! Combinatorial substrate: multigraphs, arcs, partitions, tessellation
//! covers, hypergraphs, and the graph-to-graph constructions the walk
//! families are built on.

mod ops;
mod partition;
mod tessellation;

pub use ops::{
    duplicate, hypergraph_incidence, intersection_graph, line_graph, partitions_from_bipartite,
    staggered_graph, DuplicateMap, HypergraphIncidence,
};
pub use partition::Partition;
pub use tessellation::{validate_tessellation_cover, TessellationCover, TessellationReport};

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Undirected multigraph: named vertices, edges as ordered endpoint pairs
/// with parallel edges permitted and self-loops rejected. Edge ids are the
/// positions in the construction order, which fixes every derived basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiGraph {
    vertex_names: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertex_names: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertex_names.len();
        let mut seen = BTreeSet::new();
        for name in &vertex_names {
            if !seen.insert(name.clone()) {
                return Err(Error::Graph(format!("duplicate vertex name {name:?}")));
            }
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Graph(format!(
                    "edge {i} references vertex out of range ({u}, {v})"
                )));
            }
            if u == v {
                // a loop would give the flip-flop involution a fixed point
                return Err(Error::Graph(format!(
                    "edge {i} is a self-loop at vertex {:?}",
                    vertex_names[u]
                )));
            }
        }
        Ok(MultiGraph {
            vertex_names,
            edges,
        })
    }

    /// Vertices named `0..n-1`.
    pub fn with_indices(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        MultiGraph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn path(n: usize) -> Self {
        MultiGraph::with_indices(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect())
            .expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        MultiGraph::with_indices(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
            .expect("cycle is valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        MultiGraph::with_indices(n, edges).expect("complete graph is valid")
    }

    pub fn star(leaves: usize) -> Self {
        MultiGraph::with_indices(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
            .expect("star is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree counting parallel edges.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, w)| u == v || w == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let next = if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                };
                if let Some(w) = next {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn arcs(&self) -> ArcSet {
        ArcSet::new(self)
    }
}

/// Symmetric arc set of a multigraph. Edge `e` with endpoints `(u, v)`
/// induces arc `2e` (from `u` to `v`) and arc `2e + 1` (from `v` to `u`);
/// reversal toggles the low bit, so it is an involution without fixed points.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSet {
    edge_endpoints: Vec<(usize, usize)>,
    vertex_names: Vec<String>,
}

impl ArcSet {
    fn new(g: &MultiGraph) -> Self {
        ArcSet {
            edge_endpoints: g.edges.clone(),
            vertex_names: g.vertex_names.clone(),
        }
    }

    pub fn len(&self) -> usize {
        2 * self.edge_endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_endpoints.is_empty()
    }

    pub fn origin(&self, a: usize) -> usize {
        let (u, v) = self.edge_endpoints[a / 2];
        if a % 2 == 0 {
            u
        } else {
            v
        }
    }

    pub fn terminus(&self, a: usize) -> usize {
        let (u, v) = self.edge_endpoints[a / 2];
        if a % 2 == 0 {
            v
        } else {
            u
        }
    }

    /// Reversed arc.
    pub fn reverse(&self, a: usize) -> usize {
        a ^ 1
    }

    /// Supporting edge id.
    pub fn edge(&self, a: usize) -> usize {
        a / 2
    }

    pub fn arcs_into(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.terminus(a) == v).collect()
    }

    pub fn arcs_out_of(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.origin(a) == v).collect()
    }

    pub fn label(&self, a: usize) -> String {
        format!(
            "{}>{}#{}",
            self.vertex_names[self.origin(a)],
            self.vertex_names[self.terminus(a)],
            self.edge(a)
        )
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|a| self.label(a)).collect()
    }
}

/// Bipartite multigraph with named sides. Each edge has exactly one end per
/// side; ids are construction positions.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteMultiGraph {
    x_names: Vec<String>,
    y_names: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl BipartiteMultiGraph {
    pub fn new(
        x_names: Vec<String>,
        y_names: Vec<String>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for name in x_names.iter().chain(y_names.iter()) {
            if !seen.insert(name.clone()) {
                return Err(Error::Graph(format!("duplicate vertex name {name:?}")));
            }
        }
        for (i, &(x, y)) in edges.iter().enumerate() {
            if x >= x_names.len() || y >= y_names.len() {
                return Err(Error::Graph(format!(
                    "edge {i} references vertex out of range ({x}, {y})"
                )));
            }
        }
        Ok(BipartiteMultiGraph {
            x_names,
            y_names,
            edges,
        })
    }

    pub fn x_count(&self) -> usize {
        self.x_names.len()
    }

    pub fn y_count(&self) -> usize {
        self.y_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn x_end(&self, e: usize) -> usize {
        self.edges[e].0
    }

    pub fn y_end(&self, e: usize) -> usize {
        self.edges[e].1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn x_name(&self, x: usize) -> &str {
        &self.x_names[x]
    }

    pub fn y_name(&self, y: usize) -> &str {
        &self.y_names[y]
    }

    pub fn degree_x(&self, x: usize) -> usize {
        self.edges.iter().filter(|&&(a, _)| a == x).count()
    }

    pub fn degree_y(&self, y: usize) -> usize {
        self.edges.iter().filter(|&&(_, b)| b == y).count()
    }

    pub fn edge_label(&self, e: usize) -> String {
        format!(
            "{}~{}#{}",
            self.x_names[self.edges[e].0], self.y_names[self.edges[e].1], e
        )
    }

    pub fn edge_labels(&self) -> Vec<String> {
        (0..self.edge_count()).map(|e| self.edge_label(e)).collect()
    }

    /// Forget the bipartition: vertices are `X` then `Y`, endpoint order of
    /// edge `e` is `(x, |X| + y)`, so arc `2e` runs from the X side.
    pub fn to_multigraph(&self) -> MultiGraph {
        let names: Vec<String> = self
            .x_names
            .iter()
            .chain(self.y_names.iter())
            .cloned()
            .collect();
        let offset = self.x_count();
        let edges = self.edges.iter().map(|&(x, y)| (x, offset + y)).collect();
        MultiGraph::new(names, edges).expect("bipartite graph forgets to a valid multigraph")
    }

    pub fn is_connected(&self) -> bool {
        self.to_multigraph().is_connected()
    }
}

/// Simple graph (no loops, no parallel edges); edges stored as `(min, max)`
/// pairs sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleGraph {
    vertex_names: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_names: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertex_names.len();
        let mut canon = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::Graph(format!(
                    "edge references vertex out of range ({u}, {v})"
                )));
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            canon.insert((u.min(v), u.max(v)));
        }
        Ok(SimpleGraph {
            vertex_names,
            edges: canon.into_iter().collect(),
        })
    }

    pub fn with_indices(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        SimpleGraph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        SimpleGraph::with_indices(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// All unordered pairs within `set` are edges.
    pub fn induces_clique(&self, set: &[usize]) -> bool {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// View as a multigraph on the same vertex set (edge order preserved).
    pub fn to_multigraph(&self) -> MultiGraph {
        MultiGraph::new(self.vertex_names.clone(), self.edges.clone())
            .expect("simple graph is a valid multigraph")
    }
}

/// Hypergraph: each hyperedge is a nonempty set of vertices, stored sorted;
/// a vertex may not repeat within one hyperedge.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    vertex_names: Vec<String>,
    hyperedges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertex_names: Vec<String>, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertex_names.len();
        let mut stored = Vec::with_capacity(hyperedges.len());
        for (i, he) in hyperedges.into_iter().enumerate() {
            if he.is_empty() {
                return Err(Error::Graph(format!("hyperedge {i} is empty")));
            }
            let mut sorted = he;
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::Graph(format!(
                        "hyperedge {i} repeats vertex {}",
                        w[0]
                    )));
                }
            }
            if *sorted.last().unwrap() >= n {
                return Err(Error::Graph(format!(
                    "hyperedge {i} references vertex out of range"
                )));
            }
            stored.push(sorted);
        }
        Ok(Hypergraph {
            vertex_names,
            hyperedges: stored,
        })
    }

    pub fn with_indices(n: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        Hypergraph::new((0..n).map(|i| i.to_string()).collect(), hyperedges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn hyperedge_count(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn hyperedge(&self, e: usize) -> &[usize] {
        &self.hyperedges[e]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn is_two_uniform(&self) -> bool {
        self.hyperedges.iter().all(|he| he.len() == 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops() {
        assert!(MultiGraph::with_indices(2, vec![(0, 0)]).is_err());
        assert!(SimpleGraph::with_indices(2, vec![(1, 1)]).is_err());
    }

    #[test]
    fn single_edge_arcs() {
        let g = MultiGraph::with_indices(2, vec![(0, 1)]).unwrap();
        let arcs = g.arcs();
        assert_eq!(arcs.len(), 2);
        assert_eq!(arcs.origin(0), 0);
        assert_eq!(arcs.terminus(0), 1);
        assert_eq!(arcs.terminus(arcs.reverse(0)), 0);
        assert_eq!(arcs.reverse(arcs.reverse(1)), 1);
    }

    #[test]
    fn parallel_edges_have_fixed_point_free_reversal() {
        let g = MultiGraph::with_indices(2, vec![(0, 1), (0, 1)]).unwrap();
        let arcs = g.arcs();
        assert_eq!(arcs.len(), 4);
        for a in 0..4 {
            assert_ne!(arcs.reverse(a), a);
            assert_eq!(arcs.edge(arcs.reverse(a)), arcs.edge(a));
            assert_eq!(arcs.origin(arcs.reverse(a)), arcs.terminus(a));
        }
    }

    #[test]
    fn cycle_arc_counts() {
        let g = MultiGraph::cycle(4);
        let arcs = g.arcs();
        assert_eq!(arcs.len(), 8);
        for v in 0..4 {
            assert_eq!(arcs.arcs_into(v).len(), 2);
        }
    }

    #[test]
    fn connectivity() {
        let g = MultiGraph::with_indices(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert!(MultiGraph::cycle(5).is_connected());
    }

    #[test]
    fn hypergraph_rejects_empty_and_repeats() {
        assert!(Hypergraph::with_indices(3, vec![vec![]]).is_err());
        assert!(Hypergraph::with_indices(3, vec![vec![1, 1]]).is_err());
        assert!(Hypergraph::with_indices(3, vec![vec![0, 1, 2]]).is_ok());
    }

    #[test]
    fn simple_graph_dedups_edges() {
        let g = SimpleGraph::with_indices(3, vec![(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(0, 2));
    }
}
