//! Complex linear algebra over graph-indexed bases: block-diagonal local
//! unitaries, reflections, Hermitian exponentials, locality checks and the
//! dense eigensolver entry points.

use crate::error::{Error, Result};
use crate::graph::Partition;
use crate::linalg::eigen::{self, UnitarySpectrum};
use crate::linalg::{cr, CMatrix, CVector, CsMatrix, C64, TOL_CONSTRUCT, TOL_VERIFY};
use std::collections::HashMap;

/// Default dimension cap for dense eigendecompositions.
pub const EIG_DIM_CAP: usize = 512;

/// Ordered set of basis labels with a reverse lookup. The ordering is fixed
/// at creation and determines every matrix written against the basis.
#[derive(Debug, Clone)]
pub struct IndexedBasis {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for IndexedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl IndexedBasis {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Basis(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(IndexedBasis { labels, index })
    }

    pub fn indexed(prefix: &str, n: usize) -> Self {
        IndexedBasis::new((0..n).map(|i| format!("{prefix}{i}")).collect())
            .expect("indexed labels are unique")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// State vector over an indexed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub basis: IndexedBasis,
    pub amplitudes: CVector,
}

impl StateVector {
    pub fn new(basis: IndexedBasis, amplitudes: CVector) -> Result<Self> {
        if basis.len() != amplitudes.len() {
            return Err(Error::Dimension(format!(
                "basis has {} labels but amplitude vector has {}",
                basis.len(),
                amplitudes.len()
            )));
        }
        Ok(StateVector { basis, amplitudes })
    }

    /// Delta state concentrated on one label.
    pub fn delta(basis: IndexedBasis, position: usize) -> Self {
        let mut amplitudes = CVector::zeros(basis.len());
        amplitudes[position] = cr(1.0);
        StateVector { basis, amplitudes }
    }

    /// Uniform superposition over the whole basis.
    pub fn uniform(basis: IndexedBasis) -> Self {
        let n = basis.len();
        let amplitudes = CVector::from_element(n, cr(1.0 / (n as f64).sqrt()));
        StateVector { basis, amplitudes }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// Direct sum of per-class unitary blocks against a partition of the basis.
/// Cross-class entries are structurally zero.
#[derive(Debug, Clone)]
pub struct BlockLocalUnitary {
    pub basis: IndexedBasis,
    pub partition: Partition,
    pub blocks: Vec<CMatrix>,
}

/// Assemble a block-diagonal local unitary; each block must be unitary to
/// construction tolerance and match its class size.
pub fn block_direct_sum(
    basis: IndexedBasis,
    partition: Partition,
    blocks: Vec<CMatrix>,
) -> Result<BlockLocalUnitary> {
    if partition.size() != basis.len() {
        return Err(Error::Dimension(format!(
            "partition covers {} elements but basis has {}",
            partition.size(),
            basis.len()
        )));
    }
    if blocks.len() != partition.class_count() {
        return Err(Error::Dimension(format!(
            "{} blocks supplied for {} classes",
            blocks.len(),
            partition.class_count()
        )));
    }
    for (ci, block) in blocks.iter().enumerate() {
        let want = partition.class(ci).len();
        if block.nrows() != want || block.ncols() != want {
            return Err(Error::Dimension(format!(
                "block {ci} is {}x{} but its class has {want} members",
                block.nrows(),
                block.ncols()
            )));
        }
        let dev = crate::linalg::unitarity_residual(block);
        if dev > TOL_CONSTRUCT {
            return Err(Error::NonUnitaryBlock {
                class: ci,
                deviation: dev,
                tolerance: TOL_CONSTRUCT,
            });
        }
    }
    Ok(BlockLocalUnitary {
        basis,
        partition,
        blocks,
    })
}

impl BlockLocalUnitary {
    pub fn identity(basis: IndexedBasis, partition: Partition) -> Self {
        let blocks = partition
            .classes()
            .iter()
            .map(|c| CMatrix::identity(c.len(), c.len()))
            .collect();
        BlockLocalUnitary {
            basis,
            partition,
            blocks,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_sparse(&self) -> CsMatrix {
        let mut triplets = Vec::new();
        for (ci, block) in self.blocks.iter().enumerate() {
            let class = self.partition.class(ci);
            for (bi, &gi) in class.iter().enumerate() {
                for (bj, &gj) in class.iter().enumerate() {
                    let v = block[(bi, bj)];
                    if v != C64::new(0.0, 0.0) {
                        triplets.push((gi, gj, v));
                    }
                }
            }
        }
        CsMatrix::from_triplets(self.dim(), self.dim(), triplets)
    }

    pub fn to_walk_operator(&self, tag: &str) -> Result<WalkOperator> {
        WalkOperator::new(self.basis.clone(), self.to_sparse(), tag)
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.basis != self.basis {
            return Err(Error::Basis(
                "state basis differs from operator basis".into(),
            ));
        }
        let y = self.to_sparse().matvec(state.amplitudes.as_slice());
        StateVector::new(self.basis.clone(), CVector::from_vec(y))
    }
}

/// Evolution operator: a sparse unitary over an indexed basis, tagged with
/// the model family that produced it.
#[derive(Debug, Clone)]
pub struct WalkOperator {
    pub basis: IndexedBasis,
    pub matrix: CsMatrix,
    pub tag: String,
}

impl WalkOperator {
    pub fn new(basis: IndexedBasis, matrix: CsMatrix, tag: &str) -> Result<Self> {
        if matrix.nrows() != basis.len() || matrix.ncols() != basis.len() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but basis has {} labels",
                matrix.nrows(),
                matrix.ncols(),
                basis.len()
            )));
        }
        let dev = matrix.unitarity_residual();
        if dev > TOL_VERIFY {
            return Err(Error::NonUnitary {
                deviation: dev,
                tolerance: TOL_VERIFY,
            });
        }
        Ok(WalkOperator {
            basis,
            matrix,
            tag: tag.to_string(),
        })
    }

    /// Product `left * right` (applied right-to-left).
    pub fn product(left: &BlockLocalUnitary, right: &BlockLocalUnitary, tag: &str) -> Result<Self> {
        if left.basis != right.basis {
            return Err(Error::Basis(
                "factors are written against different bases".into(),
            ));
        }
        let m = left.to_sparse().matmul(&right.to_sparse());
        WalkOperator::new(left.basis.clone(), m, tag)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.basis != self.basis {
            return Err(Error::Basis(
                "state basis differs from operator basis".into(),
            ));
        }
        let y = self.matrix.matvec(state.amplitudes.as_slice());
        StateVector::new(self.basis.clone(), CVector::from_vec(y))
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.matrix.unitarity_residual()
    }

    pub fn to_dense(&self) -> CMatrix {
        self.matrix.to_dense()
    }

    /// Coordinate dump: `row,col,re,im` lines in row-major order.
    pub fn dump_csv(&self) -> String {
        let mut out = String::from("row,col,re,im\n");
        for (r, c, v) in self.matrix.triplets() {
            out.push_str(&format!("{r},{c},{},{}\n", v.re, v.im));
        }
        out
    }
}

/// Reflection about a unit axis: `2|a><a| - I`. The zero vector is the
/// cut-off (marked) case and yields `-I`; anything in between is rejected.
pub fn reflection(axis: &CVector) -> Result<CMatrix> {
    let n = axis.len();
    let norm = axis.norm();
    if (norm - 1.0).abs() <= TOL_CONSTRUCT {
        let mut m = axis * axis.adjoint() * cr(2.0);
        for i in 0..n {
            m[(i, i)] -= cr(1.0);
        }
        Ok(m)
    } else if norm <= TOL_CONSTRUCT {
        Ok(-CMatrix::identity(n, n))
    } else {
        Err(Error::BadReflectionAxis { norm })
    }
}

/// `exp(i theta h)` for Hermitian `h`, via eigendecomposition.
pub fn hermitian_exp(h: &CMatrix, theta: f64) -> Result<CMatrix> {
    let dev = crate::linalg::hermiticity_residual(h);
    if dev > TOL_CONSTRUCT * (1.0 + crate::linalg::max_abs(h)) {
        return Err(Error::NonHermitian(dev));
    }
    if theta == 0.0 {
        return Ok(CMatrix::identity(h.nrows(), h.ncols()));
    }
    let (vals, vecs) = eigen::hermitian_eigen(h)?;
    let phases = CVector::from_iterator(
        vals.len(),
        vals.iter().map(|&l| C64::new(0.0, theta * l).exp()),
    );
    Ok(&vecs * CMatrix::from_diagonal(&phases) * vecs.adjoint())
}

/// True iff every entry coupling different classes has modulus at most
/// `tol`.
pub fn is_local(matrix: &CsMatrix, partition: &Partition, tol: f64) -> bool {
    matrix
        .triplets()
        .all(|(r, c, v)| partition.same_class(r, c) || v.norm() <= tol)
}

/// Eigendecomposition of a unitary walk operator under the default
/// dimension cap.
pub fn eig_unitary(op: &WalkOperator) -> Result<UnitarySpectrum> {
    eig_unitary_capped(op, EIG_DIM_CAP)
}

pub fn eig_unitary_capped(op: &WalkOperator, cap: usize) -> Result<UnitarySpectrum> {
    if op.dim() > cap {
        return Err(Error::EigenCap { dim: op.dim(), cap });
    }
    eigen::unitary_eigen(&op.to_dense())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, grover_block, max_abs_diff, uniform_vector, unitarity_residual};

    fn basis(n: usize) -> IndexedBasis {
        IndexedBasis::indexed("w", n)
    }

    /// Series oracle: exp(m) by scaling and squaring of the Taylor series.
    fn matrix_exp_series(m: &CMatrix) -> CMatrix {
        let n = m.nrows();
        let norm = crate::linalg::max_abs(m) * n as f64;
        let squarings = norm.log2().ceil().max(0.0) as u32 + 4;
        let scaled = m / cr(2f64.powi(squarings as i32));
        let mut term = CMatrix::identity(n, n);
        let mut acc = CMatrix::identity(n, n);
        for k in 1..30 {
            term = &term * &scaled / cr(k as f64);
            acc += &term;
        }
        let mut result = acc;
        for _ in 0..squarings {
            result = &result * &result;
        }
        result
    }

    #[test]
    fn block_direct_sum_matches_worked_sparsity() {
        // classes {0} and {1,2} against classes {0,1} and {2}
        let pi1 = Partition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        let b1 = CMatrix::identity(1, 1);
        let b2 = grover_block(2);
        let e = block_direct_sum(basis(3), pi1.clone(), vec![b1, b2]).unwrap();
        let m = e.to_sparse();
        assert_eq!(m.get(0, 1), cr(0.0));
        assert_eq!(m.get(0, 2), cr(0.0));
        assert_eq!(m.get(1, 0), cr(0.0));
        assert!(is_local(&m, &pi1, 0.0));

        let pi2 = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert!(!is_local(&m, &pi2, 0.0));
    }

    #[test]
    fn block_direct_sum_identity_blocks() {
        let p = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let blocks = vec![CMatrix::identity(2, 2), CMatrix::identity(2, 2)];
        let op = block_direct_sum(basis(4), p, blocks).unwrap();
        assert_eq!(op.to_sparse(), CsMatrix::identity(4));
    }

    #[test]
    fn block_direct_sum_rejects_non_unitary() {
        let p = Partition::whole(2).unwrap();
        let bad = CMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(0.5)]);
        let err = block_direct_sum(basis(2), p, vec![bad]);
        assert!(matches!(err, Err(Error::NonUnitaryBlock { .. })));
    }

    #[test]
    fn block_direct_sum_rejects_dimension_mismatch() {
        let p = Partition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        let blocks = vec![CMatrix::identity(2, 2), CMatrix::identity(2, 2)];
        assert!(block_direct_sum(basis(3), p, blocks).is_err());
    }

    #[test]
    fn reflection_cases() {
        // axis [1, 0] -> diag(1, -1)
        let a = CVector::from_vec(vec![cr(1.0), cr(0.0)]);
        let r = reflection(&a).unwrap();
        let want = CMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]);
        assert!(max_abs_diff(&r, &want) < 1e-15);

        // uniform axis over three entries -> Grover diffusion (2/3)J - I
        let u = uniform_vector(3);
        let g = reflection(&u).unwrap();
        assert!(max_abs_diff(&g, &grover_block(3)) < 1e-15);

        // zero axis (marked class) -> -I
        let z = CVector::zeros(3);
        let m = reflection(&z).unwrap();
        assert!(max_abs_diff(&m, &(-CMatrix::identity(3, 3))) < 1e-15);

        // in-between norms are rejected
        let h = CVector::from_vec(vec![cr(0.5), cr(0.0)]);
        assert!(reflection(&h).is_err());
    }

    #[test]
    fn reflection_fixes_axis_and_negates_complement() {
        let axis = CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        let r = reflection(&axis).unwrap();
        assert!(((&r * &axis) - &axis).norm() < 1e-12);
        let perp = CVector::from_vec(vec![c(0.8, 0.0), c(0.0, -0.6)]);
        assert!(((&r * &perp) + &perp).norm() < 1e-12);
    }

    #[test]
    fn hermitian_exp_cases() {
        // theta = 0 -> identity
        let h = grover_block(3);
        let e0 = hermitian_exp(&h, 0.0).unwrap();
        assert!(max_abs_diff(&e0, &CMatrix::identity(3, 3)) < 1e-14);

        // reflection-form Hamiltonian at theta = pi/2 -> i * h
        let e = hermitian_exp(&h, std::f64::consts::FRAC_PI_2).unwrap();
        let want = &h * c(0.0, 1.0);
        assert!(max_abs_diff(&e, &want) < 1e-13);

        // random Hermitian vs series oracle
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                cr(0.3),
                c(0.1, 0.7),
                c(-0.2, 0.1),
                c(0.1, -0.7),
                cr(-1.1),
                c(0.4, 0.0),
                c(-0.2, -0.1),
                c(0.4, 0.0),
                cr(0.8),
            ],
        );
        let theta = 0.7;
        let fast = hermitian_exp(&m, theta).unwrap();
        let oracle = matrix_exp_series(&(&m * c(0.0, theta)));
        assert!(max_abs_diff(&fast, &oracle) < 1e-12);
        assert!(unitarity_residual(&fast) < 1e-12);
    }

    #[test]
    fn hermitian_exp_is_additive_in_theta() {
        let h = grover_block(4);
        let a = hermitian_exp(&h, 0.4).unwrap();
        let b = hermitian_exp(&h, 0.9).unwrap();
        let ab = hermitian_exp(&h, 1.3).unwrap();
        assert!(max_abs_diff(&(&a * &b), &ab) < 1e-11);
    }

    #[test]
    fn hermitian_exp_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        assert!(hermitian_exp(&m, 1.0).is_err());
    }

    #[test]
    fn walk_operator_rejects_non_unitary() {
        let m = CsMatrix::from_triplets(2, 2, vec![(0, 0, cr(0.5)), (1, 1, cr(1.0))]);
        assert!(matches!(
            WalkOperator::new(basis(2), m, "test"),
            Err(Error::NonUnitary { .. })
        ));
    }

    #[test]
    fn eig_unitary_flip_flop_on_one_edge() {
        let swap = CsMatrix::from_triplets(2, 2, vec![(0, 1, cr(1.0)), (1, 0, cr(1.0))]);
        let op = WalkOperator::new(basis(2), swap, "swap").unwrap();
        let s = eig_unitary(&op).unwrap();
        assert!((s.eigenvalues[0] - cr(1.0)).norm() < 1e-12);
        assert!((s.eigenvalues[1] - cr(-1.0)).norm() < 1e-12);
    }

    #[test]
    fn eig_unitary_respects_cap() {
        let op = WalkOperator::new(basis(3), CsMatrix::identity(3), "id").unwrap();
        assert!(matches!(
            eig_unitary_capped(&op, 2),
            Err(Error::EigenCap { dim: 3, cap: 2 })
        ));
        let s = eig_unitary(&op).unwrap();
        assert!(s.eigenvalues.iter().all(|l| (l - cr(1.0)).norm() < 1e-12));
    }

    #[test]
    fn dump_csv_is_row_major() {
        let m = CsMatrix::from_triplets(2, 2, vec![(1, 0, cr(1.0)), (0, 1, c(0.0, 1.0))]);
        let op = WalkOperator::new(basis(2), m, "perm").unwrap();
        let dump = op.dump_csv();
        assert_eq!(dump, "row,col,re,im\n0,1,0,1\n1,0,1,0\n");
    }
}
