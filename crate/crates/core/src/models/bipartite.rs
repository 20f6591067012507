use super::two_partition::{build_two_partition, TwoPartitionWalk};
use crate::error::{Error, Result};
use crate::graph::{partitions_from_bipartite, BipartiteMultiGraph};
use crate::linalg::CMatrix;
use crate::operator::IndexedBasis;

/// Walk on the edge set of a bipartite multigraph: the first factor mixes
/// edges sharing an X-end, the second edges sharing a Y-end. Blocks are
/// arbitrary unitaries; reflection blocks recover the Szegedy subclass.
#[derive(Debug, Clone)]
pub struct BipartiteWalk {
    pub graph: BipartiteMultiGraph,
    pub walk: TwoPartitionWalk,
}

/// Build a bipartite walk from per-X-vertex and per-Y-vertex blocks. Block
/// order follows vertex order restricted to vertices with incident edges.
pub fn build_bipartite(
    graph: BipartiteMultiGraph,
    x_blocks: Vec<CMatrix>,
    y_blocks: Vec<CMatrix>,
) -> Result<BipartiteWalk> {
    if graph.edge_count() == 0 {
        return Err(Error::Graph(
            "bipartite walk needs at least one edge".into(),
        ));
    }
    let (pi_x, pi_y) = partitions_from_bipartite(&graph);
    let basis = IndexedBasis::new(graph.edge_labels())?;
    let walk = build_two_partition(basis, pi_x, pi_y, x_blocks, y_blocks)?;
    Ok(BipartiteWalk { graph, walk })
}

impl BipartiteWalk {
    pub fn dim(&self) -> usize {
        self.walk.dim()
    }
}
