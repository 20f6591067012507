use crate::error::{Error, Result};
use crate::graph::Partition;
use crate::linalg::{cr, CMatrix, CsMatrix, C64};
use crate::operator::{block_direct_sum, BlockLocalUnitary, IndexedBasis, WalkOperator};

/// Coin and extended shift of the walk on a truncated half-line whose
/// transfer matrix is a CMV matrix, plus the matrix itself.
#[derive(Debug, Clone)]
pub struct CmvOperators {
    pub basis: IndexedBasis,
    pub coin: BlockLocalUnitary,
    pub shift: BlockLocalUnitary,
    /// Evolution operator `shift * coin`.
    pub walk: WalkOperator,
    /// The CMV matrix `(shift * coin)^T`.
    pub cmv: CsMatrix,
}

fn verblunsky_block(gamma: C64) -> CMatrix {
    let rho = (1.0 - gamma.norm_sqr()).max(0.0).sqrt();
    CMatrix::from_row_slice(2, 2, &[gamma.conj(), cr(rho), cr(rho), -gamma])
}

/// Build the half-line walk for a list of Verblunsky parameters
/// `|gamma_j| <= 1`. The basis is ordered `(0;-), (1;+), (1;-), (2;+), ...`;
/// the coin holds the odd-index blocks after a leading unit entry, the shift
/// holds the even-index blocks. Whichever operator runs past the truncated
/// dimension ends in a single unit entry, which keeps both factors unitary
/// while preserving the interior band structure.
pub fn build_cmv(gammas: &[C64]) -> Result<CmvOperators> {
    for (j, g) in gammas.iter().enumerate() {
        if g.norm() > 1.0 + 1e-12 {
            return Err(Error::Model(format!(
                "Verblunsky parameter {j} has modulus {} > 1",
                g.norm()
            )));
        }
    }
    let dim = gammas.len() + 1;
    let mut labels = vec!["(0;-)".to_string()];
    let mut site = 1usize;
    while labels.len() < dim {
        labels.push(format!("({site};+)"));
        if labels.len() < dim {
            labels.push(format!("({site};-)"));
        }
        site += 1;
    }
    let basis = IndexedBasis::new(labels)?;

    // coin: unit entry at 0, then odd-index blocks on (1,2), (3,4), ...
    let mut coin_classes = vec![vec![0usize]];
    let mut coin_blocks = vec![CMatrix::identity(1, 1)];
    let mut row = 1usize;
    let mut j = 1usize;
    while row < dim {
        if row + 1 < dim {
            coin_classes.push(vec![row, row + 1]);
            coin_blocks.push(verblunsky_block(gammas[j]));
        } else {
            coin_classes.push(vec![row]);
            coin_blocks.push(CMatrix::identity(1, 1));
        }
        row += 2;
        j += 2;
    }
    // shift: even-index blocks on (0,1), (2,3), ...
    let mut shift_classes = Vec::new();
    let mut shift_blocks = Vec::new();
    let mut row = 0usize;
    let mut j = 0usize;
    while row < dim {
        if row + 1 < dim {
            shift_classes.push(vec![row, row + 1]);
            shift_blocks.push(verblunsky_block(gammas[j]));
        } else {
            shift_classes.push(vec![row]);
            shift_blocks.push(CMatrix::identity(1, 1));
        }
        row += 2;
        j += 2;
    }

    let coin = block_direct_sum(
        basis.clone(),
        Partition::new(dim, coin_classes)?,
        coin_blocks,
    )?;
    let shift = block_direct_sum(
        basis.clone(),
        Partition::new(dim, shift_classes)?,
        shift_blocks,
    )?;
    let walk = WalkOperator::product(&shift, &coin, "cmv")?;
    let cmv = CsMatrix::from_triplets(dim, dim, walk.matrix.triplets().map(|(r, c, v)| (c, r, v)));
    Ok(CmvOperators {
        basis,
        coin,
        shift,
        walk,
        cmv,
    })
}
