//! Spectral machinery for coined walks with involutive coins: the boundary
//! operator onto the coin fixed modes, the discriminant it induces on the
//! underlying graph, and the reconstruction of the full walk spectrum from
//! the discriminant spectrum plus the birth eigenspaces.

use crate::error::{Error, Result};
use crate::graph::ArcSet;
use crate::linalg::eigen::{hermitian_eigen, null_space, CLUSTER_GAP};
use crate::linalg::{c, cr, gram_schmidt, CMatrix, CVector, CsMatrix, C64};
use crate::models::CoinedWalk;
use crate::operator::IndexedBasis;

/// Map from the arc space onto the coin fixed modes: one row per `(vertex,
/// level)` pair spanning the +1 eigenspace of that vertex's coin block.
/// Rows are orthonormal by construction, so `B B* = I` and `B* B` is the
/// orthogonal projection onto the fixed subspace, and the coin operator is
/// `2 B* B - I`.
#[derive(Debug, Clone)]
pub struct BoundaryOperator {
    pub arc_basis: IndexedBasis,
    /// `(vertex, level)` pairs indexing the rows.
    pub modes: Vec<(usize, usize)>,
    pub mode_basis: IndexedBasis,
    /// Dense `modes x arcs` matrix whose row `(u, l)` holds the conjugated
    /// fixed vector.
    pub matrix: CMatrix,
}

impl BoundaryOperator {
    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_basis.len()
    }

    /// `B*`, mapping modes back into the arc space.
    pub fn adjoint(&self) -> CMatrix {
        self.matrix.adjoint()
    }

    /// The orthogonal projection `B* B` onto the coin fixed subspace.
    pub fn projection(&self) -> CMatrix {
        self.adjoint() * &self.matrix
    }

    /// Fixed vector (full arc space) of a mode row.
    pub fn mode_vector(&self, row: usize) -> CVector {
        self.matrix.row(row).adjoint()
    }
}

/// Extract the boundary operator of a coined walk. Every coin block must be
/// an involution (spectrum inside `{+1, -1}` to `1e-10`); vertices whose
/// blocks have no +1 eigenvalue contribute no modes.
pub fn boundary_of(u: &CoinedWalk) -> Result<BoundaryOperator> {
    let n_arcs = u.arcs.len();
    let mut modes = Vec::new();
    let mut rows: Vec<CVector> = Vec::new();
    for (ci, class) in u.pi1.classes().iter().enumerate() {
        let vertex = u.arcs.terminus(class[0]);
        let block = &u.coin.blocks[ci];
        let spec = crate::linalg::eigen::unitary_eigen(block)?;
        let worst = spec
            .eigenvalues
            .iter()
            .map(|l| (l - cr(1.0)).norm().min((l + cr(1.0)).norm()))
            .fold(0.0f64, f64::max);
        if worst > 1e-10 {
            return Err(Error::CoinSpectrum {
                vertex: u.graph.vertex_name(vertex).to_string(),
                deviation: worst,
            });
        }
        let fixed: Vec<CVector> = spec
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, l)| (*l - cr(1.0)).norm() <= 1e-10)
            .map(|(k, _)| spec.vectors.column(k).into_owned())
            .collect();
        let ortho = gram_schmidt(&fixed, 1e-10);
        if ortho.len() != fixed.len() {
            return Err(Error::Internal(format!(
                "fixed subspace at vertex {vertex} lost rank during orthonormalization"
            )));
        }
        for (level, vec) in ortho.into_iter().enumerate() {
            let mut full = CVector::zeros(n_arcs);
            for (k, &arc) in class.iter().enumerate() {
                full[arc] = vec[k];
            }
            let mut fixed_full = full;
            crate::linalg::phase_fix(&mut fixed_full);
            modes.push((vertex, level + 1));
            rows.push(fixed_full);
        }
    }
    let mode_basis = IndexedBasis::new(
        modes
            .iter()
            .map(|&(v, l)| format!("({};{l})", u.graph.vertex_name(v)))
            .collect(),
    )?;
    let mut matrix = CMatrix::zeros(modes.len(), n_arcs);
    for (r, vec) in rows.iter().enumerate() {
        for a in 0..n_arcs {
            matrix[(r, a)] = vec[a].conj();
        }
    }
    let b = BoundaryOperator {
        arc_basis: u.basis.clone(),
        modes,
        mode_basis,
        matrix,
    };

    // structural relations
    let k = b.mode_count();
    let gram = &b.matrix * b.adjoint();
    if crate::linalg::max_abs_diff(&gram, &CMatrix::identity(k, k)) > 1e-12 {
        return Err(Error::Internal("boundary rows are not orthonormal".into()));
    }
    let proj = b.projection();
    if crate::linalg::max_abs_diff(&(&proj * &proj), &proj) > 1e-12 {
        return Err(Error::Internal(
            "boundary projection is not idempotent".into(),
        ));
    }
    let coin = u.coin.to_sparse().to_dense();
    let recon = &proj * cr(2.0) - CMatrix::identity(n_arcs, n_arcs);
    if crate::linalg::max_abs_diff(&coin, &recon) > 1e-12 {
        return Err(Error::Internal(
            "coin does not match twice the boundary projection minus identity".into(),
        ));
    }
    Ok(b)
}

/// Arc of the underlying graph: one copy of each base arc per mode pair at
/// its two ends, weighted by the fixed-vector amplitude at the terminus.
#[derive(Debug, Clone)]
pub struct UnderlyingArc {
    pub base_arc: usize,
    /// Row index of the terminus mode `(t(a), l)`.
    pub t_mode: usize,
    /// Row index of the origin mode `(o(a), l')`.
    pub o_mode: usize,
    pub weight: C64,
}

/// Weighted symmetric directed graph on the modes; the arc multiset between
/// two modes matches the base arc count between their vertices.
#[derive(Debug, Clone)]
pub struct UnderlyingGraph {
    pub modes: Vec<(usize, usize)>,
    pub arcs: Vec<UnderlyingArc>,
}

pub fn underlying_graph(b: &BoundaryOperator, arcs: &ArcSet) -> UnderlyingGraph {
    let mut mode_rows_of_vertex: Vec<Vec<usize>> = Vec::new();
    let max_vertex = b.modes.iter().map(|&(v, _)| v).max().map_or(0, |v| v + 1);
    mode_rows_of_vertex.resize(max_vertex, Vec::new());
    for (row, &(v, _)) in b.modes.iter().enumerate() {
        mode_rows_of_vertex[v].push(row);
    }
    let mut out = Vec::new();
    for a in 0..arcs.len() {
        let t = arcs.terminus(a);
        let o = arcs.origin(a);
        if t >= mode_rows_of_vertex.len() || o >= mode_rows_of_vertex.len() {
            continue;
        }
        for &t_mode in &mode_rows_of_vertex[t] {
            for &o_mode in &mode_rows_of_vertex[o] {
                out.push(UnderlyingArc {
                    base_arc: a,
                    t_mode,
                    o_mode,
                    // row (u, l) stores the conjugated fixed vector
                    weight: b.matrix[(t_mode, a)].conj(),
                });
            }
        }
    }
    UnderlyingGraph {
        modes: b.modes.clone(),
        arcs: out,
    }
}

impl UnderlyingGraph {
    /// The walk-on-modes sum `(T f)(u~) = sum over arcs into u~ of
    /// conj(w(arc)) w(reversed arc) f(origin)` as a matrix.
    pub fn transfer_matrix(&self, arcs: &ArcSet) -> CMatrix {
        let k = self.modes.len();
        let mut weight_of: std::collections::HashMap<(usize, usize, usize), C64> =
            std::collections::HashMap::new();
        for ua in &self.arcs {
            weight_of.insert((ua.base_arc, ua.t_mode, ua.o_mode), ua.weight);
        }
        let mut t = CMatrix::zeros(k, k);
        for ua in &self.arcs {
            // reversal swaps the mode endpoints along the reversed base arc
            let rev = weight_of[&(arcs.reverse(ua.base_arc), ua.o_mode, ua.t_mode)];
            t[(ua.t_mode, ua.o_mode)] += ua.weight.conj() * rev;
        }
        t
    }
}

/// Discriminant `B S B*` of a boundary operator and the flip-flop shift.
pub fn discriminant(b: &BoundaryOperator, flip_flop: &CsMatrix) -> CMatrix {
    let shift = flip_flop.to_dense();
    &b.matrix * shift * b.adjoint()
}

/// One inherited eigenvalue cluster of the walk, lifted from a discriminant
/// eigenvalue `cos(theta)`.
#[derive(Debug, Clone)]
pub struct InheritedEigen {
    pub eigenvalue: C64,
    pub phase: f64,
    pub cos_theta: f64,
    /// Orthonormal eigenvector columns in the arc space.
    pub vectors: CMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectralDims {
    pub total: usize,
    pub inherited: usize,
    pub birth_plus: usize,
    pub birth_minus: usize,
}

/// Full spectral reconstruction of a coined walk from its discriminant.
#[derive(Debug, Clone)]
pub struct SpectralMapResult {
    pub boundary: BoundaryOperator,
    pub underlying: UnderlyingGraph,
    pub discriminant: CMatrix,
    /// Discriminant eigenvalues, ascending, with multiplicity.
    pub t_eigenvalues: Vec<f64>,
    pub inherited: Vec<InheritedEigen>,
    /// Basis of `ker B` intersected with the antisymmetric arc subspace;
    /// walk eigenvalue +1.
    pub birth_plus: CMatrix,
    /// Basis of `ker B` intersected with the symmetric arc subspace; walk
    /// eigenvalue -1.
    pub birth_minus: CMatrix,
    pub dims: SpectralDims,
}

impl SpectralMapResult {
    /// The reconstructed walk spectrum as a flat multiset of length `|A|`.
    pub fn eigenvalue_multiset(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.dims.total);
        for inh in &self.inherited {
            out.extend(std::iter::repeat(inh.eigenvalue).take(inh.vectors.ncols()));
        }
        out.extend(std::iter::repeat(cr(1.0)).take(self.dims.birth_plus));
        out.extend(std::iter::repeat(cr(-1.0)).take(self.dims.birth_minus));
        out
    }
}

/// Spectral map of a flip-flop coined walk with involutive coins.
///
/// Discriminant eigenvalues strictly inside `(-1, 1)` lift to conjugate
/// eigenvalue pairs `exp(±i theta)` through `(1 - e^{i theta} S) B* f`
/// normalized by `sqrt(2) |sin theta|`; eigenvalues at `±1` lift directly
/// through `B*`. The orthogonal complement of the inherited subspace
/// contributes `±1` eigenvalues supported on `ker B`.
pub fn spectral_map(u: &CoinedWalk) -> Result<SpectralMapResult> {
    if !u.flip_flop {
        return Err(Error::Model(
            "the spectral map requires the flip-flop shift".into(),
        ));
    }
    let boundary = boundary_of(u)?;
    let shift = u.shift.to_sparse();
    let disc = discriminant(&boundary, &shift);
    let underlying = underlying_graph(&boundary, &u.arcs);

    // dual route: the mode-walk sum formula must agree entrywise
    let via_sum = underlying.transfer_matrix(&u.arcs);
    if crate::linalg::max_abs_diff(&disc, &via_sum) > 1e-12 {
        return Err(Error::Internal(
            "discriminant disagrees with the underlying-graph sum formula".into(),
        ));
    }

    let (tvals, tvecs) = hermitian_eigen(&disc)?;
    if let Some(worst) = tvals
        .iter()
        .map(|v| v.abs())
        .fold(None, |acc: Option<f64>, x| {
            Some(acc.map_or(x, |a| a.max(x)))
        })
    {
        if worst > 1.0 + 1e-10 {
            return Err(Error::Internal(format!(
                "discriminant spectrum leaves [-1, 1]: |cos| = {worst}"
            )));
        }
    }

    let shift_dense = shift.to_dense();
    let adjoint = boundary.adjoint();
    let n_arcs = u.arcs.len();
    let k = boundary.mode_count();
    let mut inherited = Vec::new();
    let mut start = 0usize;
    while start < k {
        let mut end = start + 1;
        while end < k && tvals[end] - tvals[end - 1] < CLUSTER_GAP {
            end += 1;
        }
        let m = end - start;
        let cos_theta = tvals[start..end].iter().sum::<f64>() / m as f64;
        let cluster = tvecs.columns(start, m).into_owned();
        let sin_sq = (1.0 - cos_theta * cos_theta).max(0.0);
        // eigenvalues at ±1 reach the branch through rounding of cos, so a
        // machine-precision cushion on |cos| backs the sine threshold
        if sin_sq.sqrt() < 1e-8 || cos_theta.abs() >= 1.0 - 1e-12 {
            // eigenvalue at ±1: lift directly; B B* = I keeps these unit
            let sign = if cos_theta >= 0.0 { 1.0 } else { -1.0 };
            let lifted = &adjoint * &cluster;
            inherited.push(InheritedEigen {
                eigenvalue: cr(sign),
                phase: if sign > 0.0 {
                    0.0
                } else {
                    std::f64::consts::PI
                },
                cos_theta,
                vectors: lifted,
            });
        } else {
            let theta = cos_theta.clamp(-1.0, 1.0).acos();
            let scale = cr(1.0 / (2.0f64.sqrt() * theta.sin().abs()));
            for sign in [1.0f64, -1.0] {
                let ev = c(0.0, sign * theta).exp();
                let base = &adjoint * &cluster;
                let shifted = &shift_dense * &base * ev;
                let lifted = (base - shifted) * scale;
                inherited.push(InheritedEigen {
                    eigenvalue: ev,
                    phase: sign * theta,
                    cos_theta,
                    vectors: lifted,
                });
            }
        }
        start = end;
    }

    // birth eigenspaces: joint kernels of the boundary with the symmetric /
    // antisymmetric shift eigenspaces, via rank-revealing null spaces of the
    // stacked constraints
    let identity = CMatrix::identity(n_arcs, n_arcs);
    let stack = |with: &CMatrix| -> CMatrix {
        let mut m = CMatrix::zeros(k + n_arcs, n_arcs);
        m.view_mut((0, 0), (k, n_arcs)).copy_from(&boundary.matrix);
        m.view_mut((k, 0), (n_arcs, n_arcs)).copy_from(with);
        m
    };
    // ker(1 - S) hosts walk eigenvalue -1, ker(1 + S) hosts +1
    let birth_minus = null_space(&stack(&(&identity - &shift_dense)), 1e-10);
    let birth_plus = null_space(&stack(&(&identity + &shift_dense)), 1e-10);

    let inherited_dim: usize = inherited.iter().map(|i| i.vectors.ncols()).sum();
    let dims = SpectralDims {
        total: n_arcs,
        inherited: inherited_dim,
        birth_plus: birth_plus.ncols(),
        birth_minus: birth_minus.ncols(),
    };
    if dims.inherited + dims.birth_plus + dims.birth_minus != dims.total {
        return Err(Error::Internal(format!(
            "multiplicity accounting failed: {} inherited + {} + {} birth != {} arcs",
            dims.inherited, dims.birth_plus, dims.birth_minus, dims.total
        )));
    }

    // eigen residuals of everything we return
    let walk_dense = u.walk.to_dense();
    for inh in &inherited {
        for col in 0..inh.vectors.ncols() {
            let v = inh.vectors.column(col).into_owned();
            if ((&walk_dense * &v) - &v * inh.eigenvalue).norm() > 1e-9 {
                return Err(Error::Internal(format!(
                    "lifted vector misses its eigenvalue {} beyond 1e-9",
                    inh.eigenvalue
                )));
            }
            if (v.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::Internal("lifted vector is not unit".into()));
            }
        }
    }
    for (basis, ev) in [(&birth_plus, cr(1.0)), (&birth_minus, cr(-1.0))] {
        for col in 0..basis.ncols() {
            let v = basis.column(col).into_owned();
            if ((&walk_dense * &v) - &v * ev).norm() > 1e-9 {
                return Err(Error::Internal(
                    "birth vector misses its eigenvalue beyond 1e-9".into(),
                ));
            }
        }
    }

    Ok(SpectralMapResult {
        boundary,
        underlying,
        discriminant: disc,
        t_eigenvalues: tvals,
        inherited,
        birth_plus,
        birth_minus,
        dims,
    })
}

/// Spectrum of the squared walk: inherited phases double, both birth spaces
/// land on +1. Returns eigenvalue clusters with orthonormal kernel bases.
pub struct SquareSpectrum {
    pub base: SpectralMapResult,
    pub kernels: Vec<(C64, CMatrix)>,
}

pub fn spectrum_of_square(u: &CoinedWalk) -> Result<SquareSpectrum> {
    let base = spectral_map(u)?;
    let n = base.dims.total;
    let mut groups: Vec<(C64, Vec<CVector>)> = Vec::new();
    let mut push = |ev: C64, cols: Vec<CVector>| {
        for (rep, bucket) in groups.iter_mut() {
            if (*rep - ev).norm() < 1e-9 {
                bucket.extend(cols);
                return;
            }
        }
        groups.push((ev, cols));
    };
    for inh in &base.inherited {
        let squared = inh.eigenvalue * inh.eigenvalue;
        let cols = (0..inh.vectors.ncols())
            .map(|j| inh.vectors.column(j).into_owned())
            .collect();
        push(squared, cols);
    }
    let birth_cols = |m: &CMatrix| -> Vec<CVector> {
        (0..m.ncols()).map(|j| m.column(j).into_owned()).collect()
    };
    if base.dims.birth_plus > 0 {
        push(cr(1.0), birth_cols(&base.birth_plus));
    }
    if base.dims.birth_minus > 0 {
        push(cr(1.0), birth_cols(&base.birth_minus));
    }
    let mut kernels = Vec::new();
    for (ev, cols) in groups {
        let mut m = CMatrix::zeros(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            m.set_column(j, v);
        }
        kernels.push((ev, m));
    }
    kernels.sort_by(|a, b| a.0.arg().total_cmp(&b.0.arg()));
    Ok(SquareSpectrum { base, kernels })
}

/// For a coined walk on a bipartite graph, the squared walk preserves the
/// arcs into each side, so its eigenspaces project onto the X-side block,
/// giving the kernels of the off-diagonal block product `U_XY U_YX` inside
/// that block. Returns `(eigenvalue, orthonormal projected basis)` per
/// squared eigenvalue.
///
/// Unlike the spectral map this holds for arbitrary coin blocks; the
/// squared-walk eigenspaces come from the dense unitary eigendecomposition.
pub fn bipartite_block_kernels(u: &CoinedWalk, x_side: &[usize]) -> Result<Vec<(C64, CMatrix)>> {
    let n_vertices = u.graph.vertex_count();
    let mut in_x = vec![false; n_vertices];
    for &v in x_side {
        if v >= n_vertices {
            return Err(Error::Model(format!("vertex {v} does not exist")));
        }
        in_x[v] = true;
    }
    for e in 0..u.graph.edge_count() {
        let (a, b) = u.graph.endpoints(e);
        if in_x[a] == in_x[b] {
            return Err(Error::Graph(format!(
                "edge {e} does not cross the claimed bipartition"
            )));
        }
    }
    let squared = u.squared()?;
    let spec = crate::linalg::eigen::unitary_eigen(&squared.to_dense())?;
    let n_arcs = u.arcs.len();
    let mut out = Vec::new();
    for (ev, cols) in spec.clustered(1e-9) {
        let mut projected: Vec<CVector> = Vec::new();
        for &k in &cols {
            let mut v = spec.vectors.column(k).into_owned();
            for a in 0..n_arcs {
                if !in_x[u.arcs.terminus(a)] {
                    v[a] = cr(0.0);
                }
            }
            projected.push(v);
        }
        let ortho = gram_schmidt(&projected, 1e-9);
        if !ortho.is_empty() {
            let mut m = CMatrix::zeros(n_arcs, ortho.len());
            for (j, v) in ortho.iter().enumerate() {
                m.set_column(j, v);
            }
            out.push((ev, m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;
    use crate::models::{build_coined, CaseOneStyle, CoinSpec, SearchCase, ShiftSpec};
    use crate::operator::eig_unitary;

    fn grover_walk(g: &MultiGraph) -> CoinedWalk {
        build_coined(g, CoinSpec::Grover, ShiftSpec::FlipFlop).unwrap()
    }

    fn multisets_match(a: Vec<C64>, b: Vec<C64>, tol: f64) -> bool {
        crate::linalg::eigen::same_multiset(&a, &b, tol)
    }

    #[test]
    fn single_edge_boundary_is_a_trivial_pairing() {
        let g = MultiGraph::with_indices(2, vec![(0, 1)]).unwrap();
        let w = build_coined(&g, CoinSpec::Identity, ShiftSpec::FlipFlop).unwrap();
        let b = boundary_of(&w).unwrap();
        assert_eq!(b.mode_count(), 2);
        // one unit-weight mode per vertex, supported on its incoming arc
        for (row, &(v, _)) in b.modes.iter().enumerate() {
            for a in 0..2 {
                let want = if w.arcs.terminus(a) == v { 1.0 } else { 0.0 };
                assert!((b.matrix[(row, a)] - cr(want)).norm() < 1e-14);
            }
        }
        let t = discriminant(&b, &w.shift.to_sparse());
        let want = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
        assert!(crate::linalg::max_abs_diff(&t, &want) < 1e-14);
    }

    #[test]
    fn grover_boundary_rows_are_uniform_indicators() {
        let g = MultiGraph::cycle(4);
        let w = grover_walk(&g);
        let b = boundary_of(&w).unwrap();
        assert_eq!(b.mode_count(), 4);
        let inv = 1.0 / 2.0f64.sqrt();
        for (row, &(v, _)) in b.modes.iter().enumerate() {
            for a in 0..8 {
                let want = if w.arcs.terminus(a) == v { inv } else { 0.0 };
                assert!((b.matrix[(row, a)] - cr(want)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn marked_vertex_contributes_no_modes() {
        let g = MultiGraph::cycle(3);
        let w = build_coined(
            &g,
            CoinSpec::Search {
                case: SearchCase::One,
                marked: vec![2],
                style: CaseOneStyle::FlipMarked,
            },
            ShiftSpec::FlipFlop,
        )
        .unwrap();
        let b = boundary_of(&w).unwrap();
        assert_eq!(b.mode_count(), 2);
        assert!(b.modes.iter().all(|&(v, _)| v != 2));
    }

    #[test]
    fn non_involutive_coins_are_rejected_by_name() {
        let g = MultiGraph::cycle(3);
        let phase = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0, 1.0), cr(1.0)]));
        let blocks = vec![phase, CMatrix::identity(2, 2), CMatrix::identity(2, 2)];
        let w = build_coined(&g, CoinSpec::Custom(blocks), ShiftSpec::FlipFlop).unwrap();
        match boundary_of(&w) {
            Err(Error::CoinSpectrum { vertex, .. }) => assert_eq!(vertex, "0"),
            other => panic!("expected a coin spectrum error, got {other:?}"),
        }
    }

    #[test]
    fn grover_c4_discriminant_is_half_adjacency() {
        let g = MultiGraph::cycle(4);
        let w = grover_walk(&g);
        let map = spectral_map(&w).unwrap();
        // T = A(C4)/2 has eigenvalues {-1, 0, 0, 1}
        let want: Vec<f64> = vec![-1.0, 0.0, 0.0, 1.0];
        for (got, want) in map.t_eigenvalues.iter().zip(&want) {
            assert!((got - want).abs() < 1e-12);
        }
        for r in 0..4 {
            for s in 0..4 {
                let adj = if (r + 1) % 4 == s || (s + 1) % 4 == r {
                    0.5
                } else {
                    0.0
                };
                assert!((map.discriminant[(r, s)] - cr(adj)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn grover_k3_discriminant_is_half_adjacency() {
        let g = MultiGraph::complete(3);
        let w = grover_walk(&g);
        let map = spectral_map(&w).unwrap();
        let want = [-0.5, -0.5, 1.0];
        for (got, want) in map.t_eigenvalues.iter().zip(&want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn single_edge_spectrum_has_no_birth_part() {
        let g = MultiGraph::with_indices(2, vec![(0, 1)]).unwrap();
        let w = build_coined(&g, CoinSpec::Identity, ShiftSpec::FlipFlop).unwrap();
        let map = spectral_map(&w).unwrap();
        assert_eq!(map.dims.birth_plus, 0);
        assert_eq!(map.dims.birth_minus, 0);
        let evs = map.eigenvalue_multiset();
        assert!(multisets_match(evs, vec![cr(1.0), cr(-1.0)], 1e-12));
    }

    #[test]
    fn grover_c4_reconstruction_matches_dense_oracle() {
        let g = MultiGraph::cycle(4);
        let w = grover_walk(&g);
        let map = spectral_map(&w).unwrap();
        assert_eq!(map.dims.total, 8);
        assert_eq!(
            map.dims.inherited + map.dims.birth_plus + map.dims.birth_minus,
            8
        );
        let reconstructed = map.eigenvalue_multiset();
        let dense = eig_unitary(&w.walk).unwrap().eigenvalues;
        assert!(multisets_match(reconstructed.clone(), dense, 1e-9));
        // the inherited part alone contains {1, -1, ±i twice}
        let count = |target: C64| {
            reconstructed
                .iter()
                .filter(|l| (**l - target).norm() < 1e-9)
                .count()
        };
        assert!(count(c(0.0, 1.0)) >= 2);
        assert!(count(c(0.0, -1.0)) >= 2);
        assert!(count(cr(1.0)) >= 1);
        assert!(count(cr(-1.0)) >= 1);
    }

    #[test]
    fn case_one_search_on_c3_reconstructs() {
        let g = MultiGraph::cycle(3);
        let w = build_coined(
            &g,
            CoinSpec::Search {
                case: SearchCase::One,
                marked: vec![0],
                style: CaseOneStyle::FlipMarked,
            },
            ShiftSpec::FlipFlop,
        )
        .unwrap();
        let map = spectral_map(&w).unwrap();
        assert_eq!(map.boundary.mode_count(), 2);
        let dense = eig_unitary(&w.walk).unwrap().eigenvalues;
        assert!(multisets_match(map.eigenvalue_multiset(), dense, 1e-9));
    }

    #[test]
    fn inherited_vectors_are_orthonormal_across_phases() {
        let g = MultiGraph::complete(3);
        let w = grover_walk(&g);
        let map = spectral_map(&w).unwrap();
        let mut all: Vec<CVector> = Vec::new();
        for inh in &map.inherited {
            for j in 0..inh.vectors.ncols() {
                all.push(inh.vectors.column(j).into_owned());
            }
        }
        for i in 0..all.len() {
            for j in 0..all.len() {
                let overlap = all[i].dotc(&all[j]).norm();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (overlap - want).abs() < 1e-9,
                    "overlap({i},{j}) = {overlap}"
                );
            }
        }
    }

    #[test]
    fn single_edge_square_spectrum_is_all_ones() {
        let g = MultiGraph::with_indices(2, vec![(0, 1)]).unwrap();
        let w = build_coined(&g, CoinSpec::Identity, ShiftSpec::FlipFlop).unwrap();
        let sq = spectrum_of_square(&w).unwrap();
        assert_eq!(sq.kernels.len(), 1);
        let (ev, basis) = &sq.kernels[0];
        assert!((ev - cr(1.0)).norm() < 1e-12);
        assert_eq!(basis.ncols(), 2);
    }

    #[test]
    fn square_spectrum_doubles_phases() {
        // C4: doubling {1, -1, ±i x2} plus squared birth; K3: doubled
        // phases of arccos {1, -1/2, -1/2} plus birth
        for g in [MultiGraph::cycle(4), MultiGraph::complete(3)] {
            let w = grover_walk(&g);
            let sq = spectrum_of_square(&w).unwrap();
            let mut multiset = Vec::new();
            for (ev, basis) in &sq.kernels {
                multiset.extend(std::iter::repeat(*ev).take(basis.ncols()));
            }
            let dense = eig_unitary(&w.squared().unwrap()).unwrap().eigenvalues;
            assert!(multisets_match(multiset, dense, 1e-9));
            // kernels really are eigenspaces of the square
            let sq_dense = w.squared().unwrap().to_dense();
            for (ev, basis) in &sq.kernels {
                for j in 0..basis.ncols() {
                    let v = basis.column(j).into_owned();
                    assert!(((&sq_dense * &v) - &v * *ev).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn single_edge_square_has_unit_kernel_on_each_side() {
        let g = MultiGraph::with_indices(2, vec![(0, 1)]).unwrap();
        let w = build_coined(&g, CoinSpec::Identity, ShiftSpec::FlipFlop).unwrap();
        let kernels = bipartite_block_kernels(&w, &[0]).unwrap();
        assert_eq!(kernels.len(), 1);
        let (ev, basis) = &kernels[0];
        assert!((ev - cr(1.0)).norm() < 1e-12);
        assert_eq!(basis.ncols(), 1);
    }

    #[test]
    fn block_kernel_dims_match_dense_oracle() {
        // coined realization of a random-block walk on the worked
        // three-element partition pair, then on a larger random instance;
        // the coin blocks are arbitrary unitaries here
        use crate::equivalence::{bipartite_to_twostep_coined, partition_to_bipartite};
        use crate::graph::Partition;
        use crate::linalg::random_unitary;
        use crate::models::build_two_partition;
        use crate::operator::IndexedBasis;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);

        let worked = {
            let pi1 = Partition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
            let pi2 = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
            build_two_partition(
                IndexedBasis::indexed("w", 3),
                pi1,
                pi2,
                vec![random_unitary(1, &mut rng), random_unitary(2, &mut rng)],
                vec![random_unitary(2, &mut rng), random_unitary(1, &mut rng)],
            )
            .unwrap()
        };
        let larger = crate::models::random::random_two_partition_walk(8, &mut rng);

        for w in [worked, larger] {
            let (bip, _, _) = partition_to_bipartite(&w).unwrap();
            let (coined, to_x_arcs, _) = bipartite_to_twostep_coined(&bip).unwrap();
            let x: Vec<usize> = (0..bip.graph.x_count()).collect();
            let kernels = bipartite_block_kernels(&coined, &x).unwrap();
            let total: usize = kernels.iter().map(|(_, b)| b.ncols()).sum();
            assert_eq!(total, bip.graph.edge_count());

            // dense oracle: eigen dims of the squared walk restricted to the
            // X-arc block, which is the off-diagonal block product
            let sq = coined.squared().unwrap().to_dense();
            let m = bip.graph.edge_count();
            let mut restricted = CMatrix::zeros(m, m);
            for e in 0..m {
                for f in 0..m {
                    restricted[(e, f)] = sq[(to_x_arcs.forward(e), to_x_arcs.forward(f))];
                }
            }
            let oracle = crate::linalg::eigen::unitary_eigen(&restricted).unwrap();
            for (ev, basis) in &kernels {
                let dense_dim = oracle
                    .eigenvalues
                    .iter()
                    .filter(|l| (**l - ev).norm() < 1e-8)
                    .count();
                assert_eq!(
                    basis.ncols(),
                    dense_dim,
                    "kernel dimension mismatch at eigenvalue {ev}"
                );
            }
        }
    }

    #[test]
    fn szegedy_stationary_vector_lies_in_the_phase_zero_kernel() {
        use crate::equivalence::bipartite_to_twostep_coined;
        let h = MultiGraph::cycle(3);
        let sz = crate::models::build_szegedy(&h, None, None).unwrap();
        let bip = crate::models::BipartiteWalk {
            graph: sz.graph.clone(),
            walk: sz.walk.clone(),
        };
        let (coined, to_x_arcs, _) = bipartite_to_twostep_coined(&bip).unwrap();
        let kernels = bipartite_block_kernels(&coined, &(0..3).collect::<Vec<_>>()).unwrap();
        // push the stationary vector through the edge-to-arc injection
        let mut target = CVector::zeros(coined.arcs.len());
        for e in 0..sz.graph.edge_count() {
            target[to_x_arcs.forward(e)] = sz.initial.amplitudes[e];
        }
        let at_one = kernels
            .iter()
            .find(|(ev, _)| (ev - cr(1.0)).norm() < 1e-9)
            .expect("phase-zero kernel");
        // residual of projecting the stationary vector onto the kernel
        let basis = &at_one.1;
        let coeffs = basis.adjoint() * &target;
        let recon = basis * coeffs;
        assert!(
            (&recon - &target).norm() < 1e-9,
            "stationary vector not contained in the phase-zero kernel"
        );
    }

    #[test]
    fn non_bipartite_input_is_rejected() {
        let g = MultiGraph::cycle(3);
        let w = grover_walk(&g);
        assert!(bipartite_block_kernels(&w, &[0]).is_err());
    }

    #[test]
    fn spectral_map_requires_flip_flop() {
        let g = MultiGraph::with_indices(2, vec![(0, 1)]).unwrap();
        let rot = CMatrix::from_row_slice(2, 2, &[cr(0.6), cr(0.8), cr(-0.8), cr(0.6)]);
        let w = build_coined(&g, CoinSpec::Identity, ShiftSpec::Extended(vec![rot])).unwrap();
        assert!(spectral_map(&w).is_err());
    }
}
