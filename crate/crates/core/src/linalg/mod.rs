//! Dense and sparse complex linear algebra shared by all walk families.

pub mod eigen;
pub mod sparse;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::Rng;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub use sparse::CsMatrix;

/// Construction-time tolerance for local blocks.
pub const TOL_CONSTRUCT: f64 = 1e-12;
/// Verification tolerance for assembled evolution operators.
pub const TOL_VERIFY: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest entry modulus of a dense matrix.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |m - n|` entrywise.
pub fn max_abs_diff(m: &CMatrix, n: &CMatrix) -> f64 {
    assert_eq!(m.shape(), n.shape(), "shape mismatch in max_abs_diff");
    m.iter()
        .zip(n.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// `max |m' m - I|`, zero for exactly unitary matrices.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let p = m.adjoint() * m;
    let id = CMatrix::identity(m.ncols(), m.ncols());
    max_abs_diff(&p, &id)
}

/// `max |m - m'|`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Rotate a vector so its largest-modulus entry is real positive.
/// Ties are broken by the lowest index, keeping the output deterministic.
pub fn phase_fix(v: &mut CVector) {
    let mut best = 0usize;
    let mut best_mod = -1.0f64;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best_mod + 1e-14 {
            best_mod = m;
            best = i;
        }
    }
    if best_mod <= 0.0 {
        return;
    }
    let pivot = v[best];
    let phase = pivot / pivot.norm();
    let correction = phase.conj();
    for z in v.iter_mut() {
        *z *= correction;
    }
}

/// Orthonormalize `vectors` in place order, dropping members whose residual
/// after projection falls below `drop_tol`.
pub fn gram_schmidt(vectors: &[CVector], drop_tol: f64) -> Vec<CVector> {
    let mut basis: Vec<CVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let overlap = b.dotc(&w);
            w -= b * overlap;
        }
        // second pass stabilizes nearly dependent inputs
        for b in &basis {
            let overlap = b.dotc(&w);
            w -= b * overlap;
        }
        let n = w.norm();
        if n > drop_tol {
            w /= cr(n);
            basis.push(w);
        }
    }
    basis
}

/// Standard complex Gaussian via Box-Muller, driven by the supplied RNG.
fn standard_complex<R: Rng>(rng: &mut R) -> C64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    C64::new(r * t.cos(), r * t.sin()) / C64::new(std::f64::consts::SQRT_2, 0.0)
}

/// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
/// R diagonal phases absorbed into Q.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| standard_complex(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            cr(1.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Grover diffusion block: `2|s><s| - I` with `s` the uniform unit vector.
pub fn grover_block(dim: usize) -> CMatrix {
    let off = 2.0 / dim as f64;
    CMatrix::from_fn(
        dim,
        dim,
        |i, j| {
            if i == j {
                cr(off - 1.0)
            } else {
                cr(off)
            }
        },
    )
}

/// Uniform unit vector of a given dimension.
pub fn uniform_vector(dim: usize) -> CVector {
    CVector::from_element(dim, cr(1.0 / (dim as f64).sqrt()))
}
