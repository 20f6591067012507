use crate::error::Result;
use crate::graph::Partition;
use crate::linalg::CMatrix;
use crate::operator::{block_direct_sum, BlockLocalUnitary, IndexedBasis, WalkOperator};

/// Walk on an abstract partitioned set: two block-diagonal local unitaries
/// multiplied as `U = F E`, with `E` local to the first partition and `F`
/// to the second.
#[derive(Debug, Clone)]
pub struct TwoPartitionWalk {
    pub basis: IndexedBasis,
    pub pi1: Partition,
    pub pi2: Partition,
    pub e_op: BlockLocalUnitary,
    pub f_op: BlockLocalUnitary,
    pub walk: WalkOperator,
}

pub fn build_two_partition(
    basis: IndexedBasis,
    pi1: Partition,
    pi2: Partition,
    blocks_e: Vec<CMatrix>,
    blocks_f: Vec<CMatrix>,
) -> Result<TwoPartitionWalk> {
    let e_op = block_direct_sum(basis.clone(), pi1.clone(), blocks_e)?;
    let f_op = block_direct_sum(basis.clone(), pi2.clone(), blocks_f)?;
    let walk = WalkOperator::product(&f_op, &e_op, "two_partition")?;
    Ok(TwoPartitionWalk {
        basis,
        pi1,
        pi2,
        e_op,
        f_op,
        walk,
    })
}

impl TwoPartitionWalk {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}
