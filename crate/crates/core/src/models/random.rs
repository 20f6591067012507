//! Seeded random instances: partition pairs, multigraphs and walks with
//! Haar-random local blocks. Everything is driven by a caller-supplied RNG
//! so runs reproduce exactly under a fixed seed.

use super::two_partition::{build_two_partition, TwoPartitionWalk};
use crate::graph::{intersection_graph, MultiGraph, Partition};
use crate::linalg::random_unitary;
use crate::operator::IndexedBasis;
use rand::Rng;

pub fn random_partition<R: Rng>(n: usize, rng: &mut R) -> Partition {
    let k = rng.gen_range(1..=n);
    let keys: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    Partition::from_keys(&keys)
}

/// Partition pair whose intersection graph is connected, so every conversion
/// in the equivalence diagram applies.
pub fn random_connected_partition_pair<R: Rng>(n: usize, rng: &mut R) -> (Partition, Partition) {
    loop {
        let pi1 = random_partition(n, rng);
        let pi2 = random_partition(n, rng);
        let g = intersection_graph(&pi1, &pi2).expect("same ground set");
        if g.is_connected() {
            return (pi1, pi2);
        }
    }
}

/// Two-partition walk with Haar-random local blocks over a connected random
/// partition pair.
pub fn random_two_partition_walk<R: Rng>(n: usize, rng: &mut R) -> TwoPartitionWalk {
    let (pi1, pi2) = random_connected_partition_pair(n, rng);
    let blocks_e = pi1
        .classes()
        .iter()
        .map(|c| random_unitary(c.len(), rng))
        .collect();
    let blocks_f = pi2
        .classes()
        .iter()
        .map(|c| random_unitary(c.len(), rng))
        .collect();
    build_two_partition(IndexedBasis::indexed("w", n), pi1, pi2, blocks_e, blocks_f)
        .expect("random blocks conform to their classes")
}

/// Connected multigraph on `n` vertices: a random spanning tree plus `extra`
/// additional edges, parallel edges permitted.
pub fn random_connected_multigraph<R: Rng>(n: usize, extra: usize, rng: &mut R) -> MultiGraph {
    assert!(n >= 2);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n);
        while v == u {
            v = rng.gen_range(0..n);
        }
        edges.push((u, v));
    }
    MultiGraph::with_indices(n, edges).expect("loop-free by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_instances_are_valid_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(123);
        let mut b = ChaCha8Rng::seed_from_u64(123);
        for n in [3, 6, 11] {
            let wa = random_two_partition_walk(n, &mut a);
            let wb = random_two_partition_walk(n, &mut b);
            assert!(wa.walk.unitarity_residual() < 1e-12);
            assert_eq!(wa.pi1.classes(), wb.pi1.classes());
            assert_eq!(
                wa.walk.matrix.max_abs_diff(&wb.walk.matrix),
                0.0,
                "same seed, same walk"
            );
        }
        let g = random_connected_multigraph(8, 5, &mut a);
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 7 + 5);
    }
}
