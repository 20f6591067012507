//! Dense Hermitian and unitary eigendecompositions with deterministic output.

use super::{cr, hermiticity_residual, max_abs, phase_fix, CMatrix, CVector, C64};
use crate::error::{Error, Result};

/// Gap below which eigenvalues are treated as one degenerate cluster.
pub const CLUSTER_GAP: f64 = 1e-8;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The eigenvector matrix is an accumulated product of exact plane
/// rotations, so the columns stay orthonormal to machine precision even for
/// highly degenerate spectra. Eigenvalues ascend; eigenvectors are
/// phase-fixed so reruns are bit-identical.
pub fn hermitian_eigen(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let dev = hermiticity_residual(h);
    if dev > 1e-10 * (1.0 + max_abs(h)) {
        return Err(Error::NonHermitian(dev));
    }
    let n = h.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    let mut m = (h + h.adjoint()) * cr(0.5);
    let mut v = CMatrix::identity(n, n);
    let scale = m
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let g = m[(i, j)];
                let gn = g.norm();
                if gn <= 1e-18 * scale {
                    continue;
                }
                // zero the (i, j) entry: rotation angle from the real
                // symmetric reduction, phase absorbed into the off-diagonal
                let phase = g / cr(gn);
                let tau = (m[(j, j)].re - m[(i, i)].re) / (2.0 * gn);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase.conj() * cr(t * c);
                // columns: M <- M J with J = [[c, -conj(s)], [s, c]]
                for k in 0..n {
                    let aki = m[(k, i)];
                    let akj = m[(k, j)];
                    m[(k, i)] = aki * cr(c) + akj * s;
                    m[(k, j)] = akj * cr(c) - aki * s.conj();
                }
                // rows: M <- J' M
                for k in 0..n {
                    let aik = m[(i, k)];
                    let ajk = m[(j, k)];
                    m[(i, k)] = aik * cr(c) + ajk * s.conj();
                    m[(j, k)] = ajk * cr(c) - aik * s;
                }
                // accumulate V <- V J
                for k in 0..n {
                    let vki = v[(k, i)];
                    let vkj = v[(k, j)];
                    v[(k, i)] = vki * cr(c) + vkj * s;
                    v[(k, j)] = vkj * cr(c) - vki * s.conj();
                }
                m[(i, j)] = cr(0.0);
                m[(j, i)] = cr(0.0);
                m[(i, i)] = cr(m[(i, i)].re);
                m[(j, j)] = cr(m[(j, j)].re);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re));
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (j, &i) in order.iter().enumerate() {
        let mut col = v.column(i).into_owned();
        phase_fix(&mut col);
        vectors.set_column(j, &col);
    }
    Ok((values, vectors))
}

/// Spectrum of a unitary matrix grouped as parallel lists.
#[derive(Debug, Clone)]
pub struct UnitarySpectrum {
    /// Unit-modulus eigenvalues sorted by principal argument in `(-pi, pi]`.
    pub eigenvalues: Vec<C64>,
    /// Matching orthonormal eigenvectors as columns.
    pub vectors: CMatrix,
}

impl UnitarySpectrum {
    pub fn phases(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.arg()).collect()
    }

    /// Group equal eigenvalues: `(representative, column indices)`.
    pub fn clustered(&self, tol: f64) -> Vec<(C64, Vec<usize>)> {
        let mut groups: Vec<(C64, Vec<usize>)> = Vec::new();
        for (k, &ev) in self.eigenvalues.iter().enumerate() {
            match groups.last_mut() {
                Some((rep, cols)) if (ev - *rep).norm() < tol => cols.push(k),
                _ => groups.push((ev, vec![k])),
            }
        }
        // the circle wraps: merge a trailing phase-pi group into a leading
        // phase-(-pi+eps) group only when the values actually coincide
        if groups.len() > 1 {
            let first = groups[0].0;
            let last = groups.last().unwrap().0;
            if (first - last).norm() < tol {
                let (_, cols) = groups.pop().unwrap();
                groups[0].1.extend(cols);
            }
        }
        groups
    }
}

/// Eigendecomposition of a unitary (hence normal) matrix.
///
/// Splits `U = H + iK` into commuting Hermitian parts, diagonalizes `H`,
/// then resolves each degenerate cluster with the restriction of `K`. The
/// eigenvalue reported per vector is the Rayleigh quotient of `U` itself.
pub fn unitary_eigen(u: &CMatrix) -> Result<UnitarySpectrum> {
    let n = u.nrows();
    if n != u.ncols() {
        return Err(Error::Dimension(format!(
            "unitary eigendecomposition needs a square matrix, got {}x{}",
            n,
            u.ncols()
        )));
    }
    let res = super::unitarity_residual(u);
    if res > 1e-8 {
        return Err(Error::NonUnitary {
            deviation: res,
            tolerance: 1e-8,
        });
    }
    let h = (u + u.adjoint()) * cr(0.5);
    let k = (u - u.adjoint()) * C64::new(0.0, -0.5);
    let (hvals, hvecs) = hermitian_eigen(&h)?;

    let mut pairs: Vec<(C64, CVector)> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && hvals[end] - hvals[end - 1] < CLUSTER_GAP {
            end += 1;
        }
        let m = end - start;
        let cluster = hvecs.columns(start, m).into_owned();
        if m == 1 {
            let v = cluster.column(0).into_owned();
            let ev = v.dotc(&(u * &v));
            pairs.push((ev, v));
        } else {
            let restricted = cluster.adjoint() * (&k * &cluster);
            let (_, w) = hermitian_eigen(&restricted)?;
            let rotated = &cluster * w;
            for j in 0..m {
                let v = rotated.column(j).into_owned();
                let ev = v.dotc(&(u * &v));
                pairs.push((ev, v));
            }
        }
        start = end;
    }

    pairs.sort_by(|a, b| a.0.arg().total_cmp(&b.0.arg()));
    let eigenvalues: Vec<C64> = pairs.iter().map(|(ev, _)| *ev).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (j, (_, v)) in pairs.iter().enumerate() {
        let mut col = v.clone();
        phase_fix(&mut col);
        vectors.set_column(j, &col);
    }

    // post-conditions: unit-circle eigenvalues and small eigen residuals
    for (j, ev) in eigenvalues.iter().enumerate() {
        if (ev.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Internal(format!(
                "computed eigenvalue {ev} strays from the unit circle"
            )));
        }
        let v = vectors.column(j).into_owned();
        let r = (u * &v - &v * *ev).norm();
        if r > 1e-9 {
            return Err(Error::Internal(format!(
                "eigenpair residual {r:.3e} exceeds 1e-9"
            )));
        }
    }
    Ok(UnitarySpectrum {
        eigenvalues,
        vectors,
    })
}

/// Multiset equality of complex values within a tolerance, by greedy
/// nearest matching. Quadratic, meant for desk-scale spectra.
pub fn same_multiset(a: &[C64], b: &[C64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let mut best: Option<(usize, f64)> = None;
        for (j, y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (x - y).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Orthonormal basis (columns) of the null space of `m`, using a singular
/// value threshold.
pub fn null_space(m: &CMatrix, tol: f64) -> CMatrix {
    let ncols = m.ncols();
    if ncols == 0 {
        return CMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let mut null_cols: Vec<CVector> = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s < tol {
            null_cols.push(vt.row(i).adjoint());
        }
    }
    // rows beyond the singular value count (rank-deficient wide case)
    for i in svd.singular_values.len()..vt.nrows() {
        null_cols.push(vt.row(i).adjoint());
    }
    let mut out = CMatrix::zeros(ncols, null_cols.len());
    for (j, v) in null_cols.iter().enumerate() {
        let mut col = v.clone();
        phase_fix(&mut col);
        out.set_column(j, &col);
    }
    out
}
