//! Conversions between the walk families as executable basis relabelings,
//! each paired with a numerical certificate. Conversion never trusts the
//! underlying theory silently: every converter returns the residual of the
//! conjugation identity it claims.

use crate::error::{Error, Result};
use crate::graph::{duplicate, intersection_graph, staggered_graph, Partition, TessellationCover};
use crate::linalg::{cr, CMatrix, CVector, CsMatrix};
use crate::models::{
    build_bipartite, build_coined, build_szegedy_search, BipartiteWalk, CaseOneStyle, CoinSpec,
    CoinedWalk, LatticeWalk, ShiftSpec, StaggeredSearch, StaggeredWalk, SzegedyWalk,
    TwoPartitionWalk,
};
use crate::models::{build_two_partition, SearchCase};
use crate::operator::{block_direct_sum, IndexedBasis, WalkOperator};

/// Index map from a source basis into a target basis. Total and injective;
/// bijective when the bases have equal size, otherwise an injection onto a
/// declared image (conversions into arc spaces land on half the arcs).
#[derive(Debug, Clone)]
pub struct BasisBijection {
    pub source: IndexedBasis,
    pub target: IndexedBasis,
    forward: Vec<usize>,
    pub name: String,
}

impl BasisBijection {
    pub fn new(
        source: IndexedBasis,
        target: IndexedBasis,
        forward: Vec<usize>,
        name: &str,
    ) -> Result<Self> {
        if forward.len() != source.len() {
            return Err(Error::Bijection(format!(
                "{name}: map covers {} of {} source labels",
                forward.len(),
                source.len()
            )));
        }
        let mut hit = vec![false; target.len()];
        for &t in &forward {
            if t >= target.len() {
                return Err(Error::Bijection(format!(
                    "{name}: image index {t} outside the target basis"
                )));
            }
            if hit[t] {
                return Err(Error::Bijection(format!(
                    "{name}: target index {t} hit twice"
                )));
            }
            hit[t] = true;
        }
        Ok(BasisBijection {
            source,
            target,
            forward,
            name: name.to_string(),
        })
    }

    pub fn identity(basis: IndexedBasis) -> Self {
        let forward = (0..basis.len()).collect();
        BasisBijection {
            source: basis.clone(),
            target: basis,
            forward,
            name: "identity".into(),
        }
    }

    pub fn forward(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn forward_map(&self) -> &[usize] {
        &self.forward
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len()
    }

    pub fn inverse(&self) -> Result<BasisBijection> {
        if !self.is_bijective() {
            return Err(Error::Bijection(format!(
                "{}: cannot invert an injection onto a proper image",
                self.name
            )));
        }
        let mut back = vec![0usize; self.forward.len()];
        for (i, &t) in self.forward.iter().enumerate() {
            back[t] = i;
        }
        BasisBijection::new(
            self.target.clone(),
            self.source.clone(),
            back,
            &format!("{}^-1", self.name),
        )
    }

    /// `self` then `then`.
    pub fn compose(&self, then: &BasisBijection) -> Result<BasisBijection> {
        if self.target != then.source {
            return Err(Error::Bijection(format!(
                "cannot compose {} with {}: bases differ",
                self.name, then.name
            )));
        }
        let forward = self.forward.iter().map(|&t| then.forward(t)).collect();
        BasisBijection::new(
            self.source.clone(),
            then.target.clone(),
            forward,
            &format!("{};{}", self.name, then.name),
        )
    }

    /// The relabeling unitary `(U psi)(a) = psi(map^-1(a))` as a permutation
    /// matrix; requires a bijection.
    pub fn relabel_unitary(&self) -> Result<WalkOperator> {
        if !self.is_bijective() {
            return Err(Error::Bijection(format!(
                "{}: relabeling unitary needs a bijection",
                self.name
            )));
        }
        WalkOperator::new(
            self.target.clone(),
            CsMatrix::permutation(&self.forward),
            &format!("relabel:{}", self.name),
        )
    }
}

/// Outcome of checking `Theta = U^-1 Theta' U` for a basis relabeling `U`:
/// the worst entrywise deviation between the source operator and the pulled
/// back target operator, plus any coupling the target operator has between
/// the image subspace and its complement.
#[derive(Debug, Clone)]
pub struct EquivalenceCertificate {
    pub lhs: String,
    pub rhs: String,
    pub bijection: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl EquivalenceCertificate {
    pub fn verdict(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Certify that `target_op` restricted through the bijection equals
/// `source_op`. For proper injections the target operator must also leave
/// the image subspace invariant; leakage counts toward the residual.
pub fn certify(
    source_op: &WalkOperator,
    target_op: &WalkOperator,
    bijection: &BasisBijection,
    tolerance: f64,
) -> Result<EquivalenceCertificate> {
    if source_op.basis != bijection.source {
        return Err(Error::Bijection(format!(
            "{}: source operator basis does not match",
            bijection.name
        )));
    }
    if target_op.basis != bijection.target {
        return Err(Error::Bijection(format!(
            "{}: target operator basis does not match",
            bijection.name
        )));
    }
    let s = source_op.to_dense();
    let t = target_op.to_dense();
    let n = bijection.source.len();
    let mut residual = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let d = (s[(i, j)] - t[(bijection.forward(i), bijection.forward(j))]).norm();
            residual = residual.max(d);
        }
    }
    if !bijection.is_bijective() {
        let mut in_image = vec![false; bijection.target.len()];
        for &t_idx in bijection.forward_map() {
            in_image[t_idx] = true;
        }
        for k in 0..bijection.target.len() {
            if in_image[k] {
                continue;
            }
            for &f in bijection.forward_map() {
                residual = residual.max(t[(k, f)].norm());
                residual = residual.max(t[(f, k)].norm());
            }
        }
    }
    Ok(EquivalenceCertificate {
        lhs: source_op.tag.clone(),
        rhs: target_op.tag.clone(),
        bijection: bijection.name.clone(),
        residual,
        tolerance,
    })
}

/// Reduce a two-step coined walk to a two-partition walk on the arcs:
/// classes by terminus and by origin, second factor `S C_u S` per vertex.
/// Requires the flip-flop shift.
pub fn twostep_as_two_partition(u: &CoinedWalk) -> Result<TwoPartitionWalk> {
    if !u.flip_flop {
        return Err(Error::Model(
            "two-step reduction requires the flip-flop shift".into(),
        ));
    }
    let arcs = &u.arcs;
    let n = arcs.len();
    let origin_keys: Vec<usize> = (0..n).map(|a| arcs.origin(a)).collect();
    let pi2 = Partition::from_keys(&origin_keys);

    // position of each arc within its terminus class
    let mut pos_in_coin_class = vec![0usize; n];
    for ci in 0..u.pi1.class_count() {
        for (k, &a) in u.pi1.class(ci).iter().enumerate() {
            pos_in_coin_class[a] = k;
        }
    }
    let coin_class_of_vertex = |v: usize| -> usize {
        u.pi1.class_of(
            *u.pi1
                .classes()
                .iter()
                .flatten()
                .find(|&&a| arcs.terminus(a) == v)
                .expect("vertex with arcs"),
        )
    };

    let mut f_blocks = Vec::with_capacity(pi2.class_count());
    for class in pi2.classes() {
        let v = arcs.origin(class[0]);
        let coin_block = &u.coin.blocks[coin_class_of_vertex(v)];
        let m = class.len();
        let mut block = CMatrix::zeros(m, m);
        for (i, &a) in class.iter().enumerate() {
            for (j, &b) in class.iter().enumerate() {
                block[(i, j)] = coin_block[(
                    pos_in_coin_class[arcs.reverse(a)],
                    pos_in_coin_class[arcs.reverse(b)],
                )];
            }
        }
        f_blocks.push(block);
    }
    let walk = build_two_partition(
        u.basis.clone(),
        u.pi1.clone(),
        pi2,
        u.coin.blocks.clone(),
        f_blocks,
    )?;

    // contract: the factored product reproduces the squared walk entrywise
    let squared = u.squared()?;
    let diff = walk.walk.matrix.max_abs_diff(&squared.matrix);
    if diff > 1e-14 {
        return Err(Error::Internal(format!(
            "two-step factorization misses the squared walk by {diff:.3e}"
        )));
    }
    Ok(walk)
}

/// Hermitian principal logarithm of a unitary block (phases in `(-pi, pi]`),
/// used to express converted blocks in exponential form.
fn principal_log(block: &CMatrix) -> Result<CMatrix> {
    let spec = crate::linalg::eigen::unitary_eigen(block)?;
    let mut h = CMatrix::zeros(block.nrows(), block.ncols());
    for (k, ev) in spec.eigenvalues.iter().enumerate() {
        let v = spec.vectors.column(k);
        h += v * v.adjoint() * cr(ev.arg());
    }
    Ok(h)
}

/// Relabel a two-partition walk onto the vertices of its staggered graph.
/// The relabeling is the identity on indices, so the certificate residual is
/// zero up to floating point.
pub fn partition_to_staggered(
    w: &TwoPartitionWalk,
) -> Result<(StaggeredWalk, BasisBijection, EquivalenceCertificate)> {
    let (graph, cover) = staggered_graph(&w.pi1, &w.pi2)?;
    let vertex_basis = IndexedBasis::new(graph.vertex_names().to_vec())?;
    let to_vertices = BasisBijection::new(
        w.basis.clone(),
        vertex_basis.clone(),
        (0..w.basis.len()).collect(),
        "element_to_vertex",
    )?;
    let e_op = block_direct_sum(
        vertex_basis.clone(),
        cover.tess1.clone(),
        w.e_op.blocks.clone(),
    )?;
    let f_op = block_direct_sum(
        vertex_basis.clone(),
        cover.tess2.clone(),
        w.f_op.blocks.clone(),
    )?;
    let walk = WalkOperator::product(&f_op, &e_op, "staggered")?;
    let hamiltonians1 = w
        .e_op
        .blocks
        .iter()
        .map(principal_log)
        .collect::<Result<Vec<_>>>()?;
    let hamiltonians2 = w
        .f_op
        .blocks
        .iter()
        .map(principal_log)
        .collect::<Result<Vec<_>>>()?;
    let staggered = StaggeredWalk {
        cover: TessellationCover {
            graph,
            tess1: cover.tess1,
            tess2: cover.tess2,
        },
        basis: vertex_basis,
        hamiltonians1,
        hamiltonians2,
        theta1: 1.0,
        theta2: 1.0,
        e_op,
        f_op,
        search: StaggeredSearch::None,
        marked: Vec::new(),
        walk,
    };
    let certificate = certify(&w.walk, &staggered.walk, &to_vertices, 1e-12)?;
    Ok((staggered, to_vertices, certificate))
}

/// Relabel a two-partition walk onto the edges of its generalized
/// intersection graph.
pub fn partition_to_bipartite(
    w: &TwoPartitionWalk,
) -> Result<(BipartiteWalk, BasisBijection, EquivalenceCertificate)> {
    let graph = intersection_graph(&w.pi1, &w.pi2)?;
    let bipartite = build_bipartite(graph, w.e_op.blocks.clone(), w.f_op.blocks.clone())?;
    let to_edges = BasisBijection::new(
        w.basis.clone(),
        bipartite.walk.basis.clone(),
        (0..w.basis.len()).collect(),
        "element_to_edge",
    )?;
    let certificate = certify(&w.walk, &bipartite.walk.walk, &to_edges, 1e-12)?;
    Ok((bipartite, to_edges, certificate))
}

/// Realize a bipartite walk as the square of a flip-flop coined walk on the
/// same graph: edges inject onto the arcs pointing into the X side, and the
/// coin carries the X blocks on those arcs and the Y blocks on the rest.
pub fn bipartite_to_twostep_coined(
    w: &BipartiteWalk,
) -> Result<(CoinedWalk, BasisBijection, EquivalenceCertificate)> {
    if !w.graph.is_connected() {
        return Err(Error::Graph(
            "two-step realization requires a connected bipartite graph".into(),
        ));
    }
    let g = w.graph.to_multigraph();
    let x_count = w.graph.x_count();
    // terminus classes: X vertices then Y vertices; arc 2e+1 points into X,
    // arc 2e into Y, both ordered by edge id inside each class, matching
    // the edge order inside the bipartite classes
    let mut coin_blocks = Vec::new();
    let mut x_seen = 0usize;
    let mut y_seen = 0usize;
    let arcs = g.arcs();
    let terminus_keys: Vec<usize> = (0..arcs.len()).map(|a| arcs.terminus(a)).collect();
    let pi1 = Partition::from_keys(&terminus_keys);
    for class in pi1.classes() {
        let v = arcs.terminus(class[0]);
        if v < x_count {
            coin_blocks.push(w.walk.e_op.blocks[x_seen].clone());
            x_seen += 1;
        } else {
            coin_blocks.push(w.walk.f_op.blocks[y_seen].clone());
            y_seen += 1;
        }
    }
    let coined = build_coined(&g, CoinSpec::Custom(coin_blocks), ShiftSpec::FlipFlop)?;
    let to_x_arcs = BasisBijection::new(
        w.walk.basis.clone(),
        coined.basis.clone(),
        (0..w.graph.edge_count()).map(|e| 2 * e + 1).collect(),
        "edge_to_x_arc",
    )?;
    let squared = coined.squared()?;
    let certificate = certify(&w.walk.walk, &squared, &to_x_arcs, 1e-10)?;
    Ok((coined, to_x_arcs, certificate))
}

/// Realize the square of a flip-flop coined walk as a bipartite walk on the
/// duplicated graph. The edge-to-arc pairing sends each duplicated edge to
/// the arc into its plain end.
pub fn coined_square_to_bipartite(
    u: &CoinedWalk,
) -> Result<(BipartiteWalk, BasisBijection, EquivalenceCertificate)> {
    if !u.flip_flop {
        return Err(Error::Model(
            "duplication realization requires the flip-flop shift".into(),
        ));
    }
    let (g2, dup) = duplicate(&u.graph)?;
    let arcs = &u.arcs;

    // crossing relation of the pairing: the partner of a duplicated edge
    // corresponds to the reversed arc
    for e2 in 0..g2.edge_count() {
        debug_assert_eq!(dup.arc_of(dup.partner(e2)), arcs.reverse(dup.arc_of(e2)));
        let a = dup.arc_of(e2);
        if g2.x_end(e2) != arcs.terminus(a) || g2.y_end(e2) != arcs.origin(a) {
            return Err(Error::Internal(
                "duplicated-edge pairing does not respect endpoints".into(),
            ));
        }
    }

    let mut pos_in_coin_class = vec![0usize; arcs.len()];
    for ci in 0..u.pi1.class_count() {
        for (k, &a) in u.pi1.class(ci).iter().enumerate() {
            pos_in_coin_class[a] = k;
        }
    }
    let coin_class_of_vertex = |v: usize| -> Option<usize> {
        (0..u.pi1.class_count()).find(|&ci| arcs.terminus(u.pi1.class(ci)[0]) == v)
    };

    let m = g2.edge_count();
    let pi_x = Partition::from_keys(&(0..m).map(|e| g2.x_end(e)).collect::<Vec<_>>());
    let pi_y = Partition::from_keys(&(0..m).map(|e| g2.y_end(e)).collect::<Vec<_>>());
    // X blocks: the coin pulled back through the pairing
    let mut x_blocks = Vec::new();
    for class in pi_x.classes() {
        let v = g2.x_end(class[0]);
        let coin_block = &u.coin.blocks[coin_class_of_vertex(v).expect("incident vertex")];
        let k = class.len();
        let mut block = CMatrix::zeros(k, k);
        for (i, &e2a) in class.iter().enumerate() {
            for (j, &e2b) in class.iter().enumerate() {
                block[(i, j)] = coin_block[(
                    pos_in_coin_class[dup.arc_of(e2a)],
                    pos_in_coin_class[dup.arc_of(e2b)],
                )];
            }
        }
        x_blocks.push(block);
    }
    // Y blocks: the shifted coin `S C_u S` pulled back the same way
    let mut y_blocks = Vec::new();
    for class in pi_y.classes() {
        let v = g2.y_end(class[0]);
        let coin_block = &u.coin.blocks[coin_class_of_vertex(v).expect("incident vertex")];
        let k = class.len();
        let mut block = CMatrix::zeros(k, k);
        for (i, &e2a) in class.iter().enumerate() {
            for (j, &e2b) in class.iter().enumerate() {
                block[(i, j)] = coin_block[(
                    pos_in_coin_class[arcs.reverse(dup.arc_of(e2a))],
                    pos_in_coin_class[arcs.reverse(dup.arc_of(e2b))],
                )];
            }
        }
        y_blocks.push(block);
    }
    let bipartite = build_bipartite(g2, x_blocks, y_blocks)?;
    let pairing = BasisBijection::new(
        bipartite.walk.basis.clone(),
        u.basis.clone(),
        (0..m).map(|e2| dup.arc_of(e2)).collect(),
        "dup_edge_to_arc",
    )?;
    let squared = u.squared()?;
    let certificate = certify(&bipartite.walk.walk, &squared, &pairing, 1e-10)?;
    Ok((bipartite, pairing, certificate))
}

/// Intertwine a vertex-based lattice walk with the arc-based coined walk on
/// the torus graph. The arc coin at each site is the site coin with the
/// forward and backward rows swapped per axis, conjugated into arc order.
pub fn vertex_arc_intertwine(
    lw: &LatticeWalk,
) -> Result<(CoinedWalk, BasisBijection, EquivalenceCertificate)> {
    let g = lw.torus_graph();
    let arcs = g.arcs();
    let d = lw.axis_count();
    let comp = lw.component_count();

    // component (x; -j) is the arc from x + e_j; (x; +j) the arc from
    // x - e_j; edge v*d + j runs from v forward along axis j
    let component_to_arc = |v: usize, k: usize| -> usize {
        let axis = k / 2;
        if k % 2 == 0 {
            2 * (v * d + axis) + 1
        } else {
            let back = lw.neighbor(v, axis, -1);
            2 * (back * d + axis)
        }
    };
    let forward: Vec<usize> = (0..lw.dim())
        .map(|i| component_to_arc(i / comp, i % comp))
        .collect();

    let arc_basis = IndexedBasis::new(arcs.labels())?;
    let gamma = BasisBijection::new(lw.basis.clone(), arc_basis, forward, "component_to_arc")?;

    // arc coin blocks per site
    let terminus_keys: Vec<usize> = (0..arcs.len()).map(|a| arcs.terminus(a)).collect();
    let pi1 = Partition::from_keys(&terminus_keys);
    let mut pos_in_class = vec![0usize; arcs.len()];
    for ci in 0..pi1.class_count() {
        for (k, &a) in pi1.class(ci).iter().enumerate() {
            pos_in_class[a] = k;
        }
    }
    let mut coin_blocks = Vec::with_capacity(pi1.class_count());
    for class in pi1.classes() {
        let v = arcs.terminus(class[0]);
        let site_coin = &lw.coins[v];
        // swap the -j / +j rows of the site coin
        let mut swapped = CMatrix::zeros(comp, comp);
        for j in 0..d {
            for col in 0..comp {
                swapped[(2 * j, col)] = site_coin[(2 * j + 1, col)];
                swapped[(2 * j + 1, col)] = site_coin[(2 * j, col)];
            }
        }
        // conjugate into arc positions
        let mut block = CMatrix::zeros(comp, comp);
        for k1 in 0..comp {
            for k2 in 0..comp {
                let a1 = pos_in_class[component_to_arc(v, k1)];
                let a2 = pos_in_class[component_to_arc(v, k2)];
                block[(a1, a2)] = swapped[(k1, k2)];
            }
        }
        coin_blocks.push(block);
    }
    let coined = build_coined(&g, CoinSpec::Custom(coin_blocks), ShiftSpec::FlipFlop)?;
    let certificate = certify(&lw.walk, &coined.walk, &gamma, 1e-12)?;
    Ok((coined, gamma, certificate))
}

/// Certify the search-model correspondence: the reduced sink-based Szegedy
/// walk on the duplicated graph equals the pulled-back square of the Case-I
/// coined search on the base graph. Only the marked-inverts coin convention
/// satisfies the identity; the other style is rejected with a diagnostic.
pub fn szegedy_search_equivalence(
    h: &crate::graph::MultiGraph,
    p: Option<Vec<f64>>,
    marked: &[usize],
    style: CaseOneStyle,
) -> Result<(EquivalenceCertificate, SzegedyWalk, CoinedWalk)> {
    if style != CaseOneStyle::FlipMarked {
        return Err(Error::Convention(
            "the literal cut-off convention negates unmarked coins and breaks the \
             search correspondence; use the marked-inverts style"
                .into(),
        ));
    }
    let sz = build_szegedy_search(h, p, None, marked)?;
    let arcs = h.arcs();
    let terminus_keys: Vec<usize> = (0..arcs.len()).map(|a| arcs.terminus(a)).collect();
    let pi1 = Partition::from_keys(&terminus_keys);
    let mut coin_blocks = Vec::new();
    for class in pi1.classes() {
        let v = arcs.terminus(class[0]);
        let axis = CVector::from_iterator(
            class.len(),
            class
                .iter()
                .map(|&a| cr(sz.p[sz.dup.edge2_of_arc(a)].sqrt())),
        );
        coin_blocks.push(crate::models::search_coin(
            sz.marked.binary_search(&v).is_ok(),
            &axis,
            SearchCase::One,
            style,
        )?);
    }
    let coined = build_coined(h, CoinSpec::Custom(coin_blocks), ShiftSpec::FlipFlop)?;
    let pairing = BasisBijection::new(
        sz.reduced.basis.clone(),
        coined.basis.clone(),
        (0..sz.reduced.dim()).map(|e2| sz.dup.arc_of(e2)).collect(),
        "dup_edge_to_arc",
    )?;
    let squared = coined.squared()?;
    let certificate = certify(&sz.reduced.walk, &squared, &pairing, 1e-10)?;
    Ok((certificate, sz, coined))
}
