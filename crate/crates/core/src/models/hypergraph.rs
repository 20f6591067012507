use super::two_partition::{build_two_partition, TwoPartitionWalk};
use crate::error::{Error, Result};
use crate::graph::{hypergraph_incidence, Hypergraph};
use crate::linalg::CMatrix;
use crate::operator::IndexedBasis;

/// Walk on the incidence pairs of a hypergraph: the first factor mixes pairs
/// sharing a vertex, the second pairs sharing a hyperedge. On a 2-uniform
/// hypergraph with swap blocks on the hyperedge classes this reproduces the
/// coined walk under the pair-to-arc identification.
pub fn build_hypergraph_walk(
    h: &Hypergraph,
    vertex_blocks: Vec<CMatrix>,
    hyperedge_blocks: Vec<CMatrix>,
) -> Result<TwoPartitionWalk> {
    let incidence = hypergraph_incidence(h);
    if incidence.pairs.is_empty() {
        return Err(Error::Graph(
            "hypergraph walk needs at least one incidence pair".into(),
        ));
    }
    let basis = IndexedBasis::new(incidence.labels.clone())?;
    build_two_partition(
        basis,
        incidence.by_vertex,
        incidence.by_hyperedge,
        vertex_blocks,
        hyperedge_blocks,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;
    use crate::linalg::{cr, grover_block, max_abs_diff, CsMatrix};
    use crate::models::{build_coined, CoinSpec, ShiftSpec};

    #[test]
    fn single_triple_hyperedge_with_grover_blocks() {
        let h = Hypergraph::with_indices(3, vec![vec![0, 1, 2]]).unwrap();
        let vertex_blocks = vec![CMatrix::identity(1, 1); 3];
        let hyperedge_blocks = vec![grover_block(3)];
        let w = build_hypergraph_walk(&h, vertex_blocks, hyperedge_blocks).unwrap();
        assert_eq!(w.dim(), 3);
        // with identity vertex blocks the walk is exactly the Grover block
        let want = grover_block(3);
        assert!(max_abs_diff(&w.walk.to_dense(), &want) < 1e-14);
    }

    #[test]
    fn identity_blocks_give_identity() {
        let h = Hypergraph::with_indices(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        let inc = crate::graph::hypergraph_incidence(&h);
        let vblocks = inc
            .by_vertex
            .classes()
            .iter()
            .map(|c| CMatrix::identity(c.len(), c.len()))
            .collect();
        let eblocks = inc
            .by_hyperedge
            .classes()
            .iter()
            .map(|c| CMatrix::identity(c.len(), c.len()))
            .collect();
        let w = build_hypergraph_walk(&h, vblocks, eblocks).unwrap();
        assert_eq!(w.walk.matrix, CsMatrix::identity(5));
    }

    #[test]
    fn block_mismatch_is_rejected() {
        let h = Hypergraph::with_indices(3, vec![vec![0, 1, 2]]).unwrap();
        let vblocks = vec![CMatrix::identity(1, 1); 2];
        let eblocks = vec![grover_block(3)];
        assert!(build_hypergraph_walk(&h, vblocks, eblocks).is_err());
    }

    #[test]
    fn two_uniform_with_swap_blocks_matches_the_coined_walk() {
        let c4 = MultiGraph::cycle(4);
        let hyper =
            Hypergraph::with_indices(4, c4.edges().iter().map(|&(u, v)| vec![u, v]).collect())
                .unwrap();
        let inc = crate::graph::hypergraph_incidence(&hyper);
        let (g, arc_map) = inc.to_multigraph_with_arc_map(&hyper).unwrap();

        let vblocks: Vec<CMatrix> = inc
            .by_vertex
            .classes()
            .iter()
            .map(|c| grover_block(c.len()))
            .collect();
        let swap = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
        let eblocks = vec![swap; inc.by_hyperedge.class_count()];
        let hwalk = build_hypergraph_walk(&hyper, vblocks, eblocks).unwrap();

        let coined = build_coined(&g, CoinSpec::Grover, ShiftSpec::FlipFlop).unwrap();
        // relabel the hypergraph walk through the pair-to-arc map and compare
        let hw = hwalk.walk.to_dense();
        let cw = coined.walk.to_dense();
        let mut worst = 0.0f64;
        for (i, &ai) in arc_map.iter().enumerate() {
            for (j, &aj) in arc_map.iter().enumerate() {
                worst = worst.max((hw[(i, j)] - cw[(ai, aj)]).norm());
            }
        }
        assert!(worst <= 1e-14, "hypergraph/coined mismatch {worst}");
    }
}
