use super::{Partition, SimpleGraph};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Two vertex partitions of a simple graph into cliques (polygons) whose
/// internal edges jointly cover the edge set.
#[derive(Debug, Clone, PartialEq)]
pub struct TessellationCover {
    pub graph: SimpleGraph,
    pub tess1: Partition,
    pub tess2: Partition,
}

impl TessellationCover {
    pub fn new(graph: SimpleGraph, tess1: Partition, tess2: Partition) -> Result<Self> {
        let n = graph.vertex_count();
        if tess1.size() != n || tess2.size() != n {
            return Err(Error::Partition(format!(
                "tessellations partition {} / {} elements but the graph has {n} vertices",
                tess1.size(),
                tess2.size()
            )));
        }
        Ok(TessellationCover {
            graph,
            tess1,
            tess2,
        })
    }
}

/// Diagnostics from checking a tessellation cover; valid iff both lists are
/// empty.
#[derive(Debug, Clone, PartialEq)]
pub struct TessellationReport {
    /// `(tessellation number 1|2, polygon index)` of polygons that do not
    /// induce cliques.
    pub non_clique_polygons: Vec<(u8, usize)>,
    /// Edges covered by neither tessellation.
    pub uncovered_edges: Vec<(usize, usize)>,
}

impl TessellationReport {
    pub fn valid(&self) -> bool {
        self.non_clique_polygons.is_empty() && self.uncovered_edges.is_empty()
    }
}

/// Check every polygon induces a clique and the two tessellations cover all
/// edges. Diagnostics go in the report; nothing here errors.
pub fn validate_tessellation_cover(tc: &TessellationCover) -> TessellationReport {
    let mut non_clique_polygons = Vec::new();
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (which, tess) in [(1u8, &tc.tess1), (2u8, &tc.tess2)] {
        for (pi, polygon) in tess.classes().iter().enumerate() {
            if !tc.graph.induces_clique(polygon) {
                non_clique_polygons.push((which, pi));
            }
            for (i, &u) in polygon.iter().enumerate() {
                for &v in &polygon[i + 1..] {
                    if tc.graph.has_edge(u, v) {
                        covered.insert((u.min(v), u.max(v)));
                    }
                }
            }
        }
    }
    let uncovered_edges = tc
        .graph
        .edges()
        .iter()
        .copied()
        .filter(|e| !covered.contains(e))
        .collect();
    TessellationReport {
        non_clique_polygons,
        uncovered_edges,
    }
}
