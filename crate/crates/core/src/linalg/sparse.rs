//! Minimal row-compressed complex sparse matrix.
//!
//! Evolution operators are products of block-diagonal factors, so rows carry
//! only a handful of entries; desk-scale dimensions keep everything simple.

use super::{cr, CMatrix, C64};

/// Complex sparse matrix in compressed-row form. Entries within a row are
/// sorted by column and exact zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct CsMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl CsMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        CsMatrix {
            nrows,
            ncols,
            row_ptr: vec![0; nrows + 1],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        CsMatrix {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            cols: (0..n).collect(),
            vals: vec![cr(1.0); n],
        }
    }

    /// Build from coordinate triplets; duplicates are summed, zeros dropped.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, C64)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet out of bounds");
            per_row[r].push((c, v));
        }
        let mut row_ptr = Vec::with_capacity(nrows + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in &mut per_row {
            row.sort_by_key(|&(c, _)| c);
            let mut i = 0;
            while i < row.len() {
                let col = row[i].0;
                let mut acc = C64::new(0.0, 0.0);
                while i < row.len() && row[i].0 == col {
                    acc += row[i].1;
                    i += 1;
                }
                if acc != C64::new(0.0, 0.0) {
                    cols.push(col);
                    vals.push(acc);
                }
            }
            row_ptr.push(cols.len());
        }
        CsMatrix {
            nrows,
            ncols,
            row_ptr,
            cols,
            vals,
        }
    }

    /// Permutation matrix with `P[forward[i], i] = 1`.
    pub fn permutation(forward: &[usize]) -> Self {
        let n = forward.len();
        CsMatrix::from_triplets(
            n,
            n,
            forward.iter().enumerate().map(|(i, &r)| (r, i, cr(1.0))),
        )
    }

    pub fn from_dense(m: &CMatrix, drop_tol: f64) -> Self {
        CsMatrix::from_triplets(
            m.nrows(),
            m.ncols(),
            (0..m.nrows()).flat_map(|r| {
                (0..m.ncols()).filter_map(move |c| {
                    let v = m[(r, c)];
                    (v.norm() > drop_tol).then_some((r, c, v))
                })
            }),
        )
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.cols[k])] = self.vals[k];
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        match self.cols[lo..hi].binary_search(&c) {
            Ok(k) => self.vals[lo + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// Entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k]))
        })
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.ncols, "matvec dimension mismatch");
        let mut y = vec![C64::new(0.0, 0.0); self.nrows];
        for r in 0..self.nrows {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            y[r] = acc;
        }
        y
    }

    pub fn matmul(&self, rhs: &CsMatrix) -> CsMatrix {
        assert_eq!(self.ncols, rhs.nrows, "matmul dimension mismatch");
        let mut triplets = Vec::new();
        let mut scratch: Vec<C64> = vec![C64::new(0.0, 0.0); rhs.ncols];
        let mut touched: Vec<usize> = Vec::new();
        for r in 0..self.nrows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let a = self.vals[k];
                let mid = self.cols[k];
                for k2 in rhs.row_ptr[mid]..rhs.row_ptr[mid + 1] {
                    let c = rhs.cols[k2];
                    if scratch[c] == C64::new(0.0, 0.0) {
                        touched.push(c);
                    }
                    scratch[c] += a * rhs.vals[k2];
                }
            }
            for &c in &touched {
                if scratch[c] != C64::new(0.0, 0.0) {
                    triplets.push((r, c, scratch[c]));
                }
                scratch[c] = C64::new(0.0, 0.0);
            }
            touched.clear();
        }
        CsMatrix::from_triplets(self.nrows, rhs.ncols, triplets)
    }

    pub fn adjoint(&self) -> CsMatrix {
        CsMatrix::from_triplets(
            self.ncols,
            self.nrows,
            self.triplets().map(|(r, c, v)| (c, r, v.conj())),
        )
    }

    pub fn max_abs_diff(&self, other: &CsMatrix) -> f64 {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "shape mismatch"
        );
        let mut worst = 0.0f64;
        for r in 0..self.nrows {
            let mut a = self.row_ptr[r];
            let mut b = other.row_ptr[r];
            let (ae, be) = (self.row_ptr[r + 1], other.row_ptr[r + 1]);
            while a < ae || b < be {
                let ca = if a < ae { self.cols[a] } else { usize::MAX };
                let cb = if b < be { other.cols[b] } else { usize::MAX };
                let d = if ca == cb {
                    let d = (self.vals[a] - other.vals[b]).norm();
                    a += 1;
                    b += 1;
                    d
                } else if ca < cb {
                    let d = self.vals[a].norm();
                    a += 1;
                    d
                } else {
                    let d = other.vals[b].norm();
                    b += 1;
                    d
                };
                worst = worst.max(d);
            }
        }
        worst
    }

    /// `max |A' A - I|`, zero for exact unitaries.
    pub fn unitarity_residual(&self) -> f64 {
        assert_eq!(self.nrows, self.ncols, "unitarity needs a square matrix");
        let p = self.adjoint().matmul(self);
        p.max_abs_diff(&CsMatrix::identity(self.ncols))
    }

    /// True when every stored entry is exactly 0 or 1 and rows/columns hold a
    /// single unit entry each.
    pub fn is_exact_permutation(&self) -> bool {
        if self.nrows != self.ncols || self.nnz() != self.nrows {
            return false;
        }
        let mut col_seen = vec![false; self.ncols];
        for r in 0..self.nrows {
            if self.row_ptr[r + 1] - self.row_ptr[r] != 1 {
                return false;
            }
            let k = self.row_ptr[r];
            if self.vals[k] != cr(1.0) {
                return false;
            }
            if col_seen[self.cols[k]] {
                return false;
            }
            col_seen[self.cols[k]] = true;
        }
        true
    }

    /// Smallest band `b` such that all entries satisfy `|row - col| <= b`.
    pub fn bandwidth(&self) -> usize {
        self.triplets()
            .map(|(r, c, _)| r.abs_diff(c))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn triplets_sum_duplicates_and_drop_zeros() {
        let m = CsMatrix::from_triplets(
            2,
            2,
            vec![
                (0, 0, cr(1.0)),
                (0, 0, cr(2.0)),
                (1, 1, cr(1.0)),
                (1, 1, cr(-1.0)),
            ],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), cr(3.0));
        assert_eq!(m.get(1, 1), cr(0.0));
    }

    #[test]
    fn matmul_matches_dense() {
        let a = CsMatrix::from_triplets(
            2,
            3,
            vec![(0, 0, c(1.0, 1.0)), (0, 2, cr(2.0)), (1, 1, c(0.0, -1.0))],
        );
        let b = CsMatrix::from_triplets(
            3,
            2,
            vec![(0, 1, cr(1.0)), (1, 0, c(0.5, 0.5)), (2, 1, c(0.0, 3.0))],
        );
        let prod = a.matmul(&b).to_dense();
        let dense = a.to_dense() * b.to_dense();
        assert!(crate::linalg::max_abs_diff(&prod, &dense) < 1e-15);
    }

    #[test]
    fn adjoint_round_trip() {
        let a = CsMatrix::from_triplets(2, 3, vec![(0, 1, c(1.0, -2.0)), (1, 2, cr(4.0))]);
        let back = a.adjoint().adjoint();
        assert_eq!(a, back);
    }

    #[test]
    fn permutation_detection() {
        let p = CsMatrix::permutation(&[2, 0, 1]);
        assert!(p.is_exact_permutation());
        assert!(p.unitarity_residual() == 0.0);
        let not_p = CsMatrix::from_triplets(2, 2, vec![(0, 0, cr(0.5)), (1, 1, cr(1.0))]);
        assert!(!not_p.is_exact_permutation());
    }

    #[test]
    fn bandwidth_of_tridiagonal() {
        let m = CsMatrix::from_triplets(
            4,
            4,
            (0..4)
                .map(|i| (i, i, cr(1.0)))
                .chain((0..3).map(|i| (i, i + 1, cr(0.5)))),
        );
        assert_eq!(m.bandwidth(), 1);
    }
}
