use super::two_partition::{build_two_partition, TwoPartitionWalk};
use crate::error::{Error, Result};
use crate::graph::{duplicate, BipartiteMultiGraph, DuplicateMap, MultiGraph, Partition};
use crate::linalg::{cr, CMatrix, CVector};
use crate::operator::{reflection, IndexedBasis, StateVector, WalkOperator};

/// Extended Szegedy walk: a bipartite walk on the duplicated multigraph of a
/// base graph, with reflection blocks built from lifted transition weights.
///
/// With marked vertices, each one is linked to its copy by a sink edge that
/// the evolution fixes pointwise; the dynamics of interest is the reduced
/// operator on the plain duplicated edges.
#[derive(Debug, Clone)]
pub struct SzegedyWalk {
    pub base: MultiGraph,
    /// Duplicated graph, extended by one sink edge per marked vertex.
    pub graph: BipartiteMultiGraph,
    pub dup: DuplicateMap,
    pub marked: Vec<usize>,
    /// Original weights, indexed by duplicated edge.
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    /// Weights after sink conversion, indexed over all edges of `graph`.
    pub p_modified: Vec<f64>,
    pub q_modified: Vec<f64>,
    /// Edge ids (in `graph`) linking marked vertices to their copies.
    pub sink_edges: Vec<usize>,
    /// Full evolution on the whole edge set.
    pub walk: TwoPartitionWalk,
    /// Reduced evolution on the plain duplicated edges; equals the full walk
    /// when nothing is marked.
    pub reduced: TwoPartitionWalk,
    /// Reflection axes per X class and per Y class of the full walk.
    pub x_axes: Vec<CVector>,
    pub y_axes: Vec<CVector>,
    /// Uniform-over-vertices initial state on the reduced basis.
    pub initial: StateVector,
}

/// Uniform lift of the base graph: every duplicated edge departing a vertex
/// carries equal weight.
pub fn uniform_weights(h: &MultiGraph, dup_edge_count: usize) -> Vec<f64> {
    (0..dup_edge_count)
        .map(|e2| {
            let base_edge = e2 / 2;
            let (u, v) = h.endpoints(base_edge);
            let plain_end = if e2 % 2 == 0 { u } else { v };
            1.0 / h.degree(plain_end) as f64
        })
        .collect()
}

pub fn build_szegedy(
    h: &MultiGraph,
    p: Option<Vec<f64>>,
    q: Option<Vec<f64>>,
) -> Result<SzegedyWalk> {
    build_szegedy_search(h, p, q, &[])
}

pub fn build_szegedy_search(
    h: &MultiGraph,
    p: Option<Vec<f64>>,
    q: Option<Vec<f64>>,
    marked: &[usize],
) -> Result<SzegedyWalk> {
    if h.edge_count() == 0 {
        return Err(Error::Graph("Szegedy walk needs at least one edge".into()));
    }
    let (g2, dup) = duplicate(h)?;
    let m = g2.edge_count();
    let p = p.unwrap_or_else(|| uniform_weights(h, m));
    let q = q.unwrap_or_else(|| {
        // mirror across the copy pairing
        (0..m).map(|e2| p[dup.partner(e2)]).collect()
    });
    if p.len() != m || q.len() != m {
        return Err(Error::Dimension(format!(
            "weights must cover all {m} duplicated edges"
        )));
    }
    for w in p.iter().chain(q.iter()) {
        if !(0.0..=1.0 + 1e-12).contains(w) {
            return Err(Error::Model(format!("weight {w} outside [0, 1]")));
        }
    }

    let mut marked = marked.to_vec();
    marked.sort_unstable();
    marked.dedup();
    if let Some(&bad) = marked.iter().find(|&&v| v >= h.vertex_count()) {
        return Err(Error::Model(format!("marked vertex {bad} does not exist")));
    }
    if !marked.is_empty() && marked.len() == h.vertex_count() {
        return Err(Error::Model(
            "marking every vertex leaves no dynamics to search".into(),
        ));
    }
    let is_marked = |v: usize| marked.binary_search(&v).is_ok();

    // lift-up: departure weights sum to one per vertex on each side
    for x in 0..h.vertex_count() {
        let sum: f64 = (0..m).filter(|&e2| g2.x_end(e2) == x).map(|e2| p[e2]).sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Stochasticity {
                vertex: h.vertex_name(x).to_string(),
                sum,
            });
        }
        let sum_q: f64 = (0..m).filter(|&e2| g2.y_end(e2) == x).map(|e2| q[e2]).sum();
        if (sum_q - 1.0).abs() > 1e-12 {
            return Err(Error::Stochasticity {
                vertex: format!("{}'", h.vertex_name(x)),
                sum: sum_q,
            });
        }
    }
    // the lifted chain must look the same from both sides of each vertex
    // pair: p over the edges from u to v' matches q over their partners
    {
        use std::collections::BTreeMap;
        let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for e2 in 0..m {
            groups
                .entry((g2.x_end(e2), g2.y_end(e2)))
                .or_default()
                .push(e2);
        }
        for (&(u, v), edges) in &groups {
            let mut ps: Vec<f64> = edges.iter().map(|&e| p[e]).collect();
            let mut qs: Vec<f64> = edges.iter().map(|&e| q[dup.partner(e)]).collect();
            ps.sort_by(f64::total_cmp);
            qs.sort_by(f64::total_cmp);
            if ps.iter().zip(&qs).any(|(a, b)| (a - b).abs() > 1e-12) {
                return Err(Error::Model(format!(
                    "weights between {} and {}' are not lifted consistently",
                    h.vertex_name(u),
                    h.vertex_name(v)
                )));
            }
        }
    }

    // extend the graph with one sink edge per marked vertex
    let mut edges = g2.edges().to_vec();
    let mut sink_edges = Vec::new();
    for &v in &marked {
        sink_edges.push(edges.len());
        edges.push((v, v));
    }
    let x_names: Vec<String> = (0..g2.x_count())
        .map(|x| g2.x_name(x).to_string())
        .collect();
    let y_names: Vec<String> = (0..g2.y_count())
        .map(|y| g2.y_name(y).to_string())
        .collect();
    let graph = BipartiteMultiGraph::new(x_names, y_names, edges)?;
    let total = graph.edge_count();

    // sink conversion of the weights
    let mut p_modified = vec![0.0; total];
    let mut q_modified = vec![0.0; total];
    for e in 0..total {
        let in_sink = e >= m;
        if in_sink {
            p_modified[e] = 1.0;
            q_modified[e] = 1.0;
        } else {
            if !is_marked(graph.x_end(e)) {
                p_modified[e] = p[e];
            }
            if !is_marked(graph.y_end(e)) {
                q_modified[e] = q[e];
            }
        }
    }

    // full walk: reflections about sqrt-weight axes, class order by vertex
    let pi_x = Partition::from_keys(&(0..total).map(|e| graph.x_end(e)).collect::<Vec<_>>());
    let pi_y = Partition::from_keys(&(0..total).map(|e| graph.y_end(e)).collect::<Vec<_>>());
    let mut x_axes = Vec::new();
    let mut blocks_x = Vec::new();
    for class in pi_x.classes() {
        let axis =
            CVector::from_iterator(class.len(), class.iter().map(|&e| cr(p_modified[e].sqrt())));
        blocks_x.push(reflection(&axis)?);
        x_axes.push(axis);
    }
    let mut y_axes = Vec::new();
    let mut blocks_y = Vec::new();
    for class in pi_y.classes() {
        let axis =
            CVector::from_iterator(class.len(), class.iter().map(|&e| cr(q_modified[e].sqrt())));
        blocks_y.push(reflection(&axis)?);
        y_axes.push(axis);
    }
    let basis = IndexedBasis::new(graph.edge_labels())?;
    let walk = build_two_partition(basis, pi_x, pi_y, blocks_x, blocks_y)?;

    // reduced walk on the plain duplicated edges: marked classes get the
    // cut-off (zero axis = negated identity)
    let red_pi_x = Partition::from_keys(&(0..m).map(|e| g2.x_end(e)).collect::<Vec<_>>());
    let red_pi_y = Partition::from_keys(&(0..m).map(|e| g2.y_end(e)).collect::<Vec<_>>());
    let mut red_blocks_x = Vec::new();
    for class in red_pi_x.classes() {
        let x = g2.x_end(class[0]);
        let axis = if is_marked(x) {
            CVector::zeros(class.len())
        } else {
            CVector::from_iterator(class.len(), class.iter().map(|&e| cr(p[e].sqrt())))
        };
        red_blocks_x.push(reflection(&axis)?);
    }
    let mut red_blocks_y = Vec::new();
    for class in red_pi_y.classes() {
        let y = g2.y_end(class[0]);
        let axis = if is_marked(y) {
            CVector::zeros(class.len())
        } else {
            CVector::from_iterator(class.len(), class.iter().map(|&e| cr(q[e].sqrt())))
        };
        red_blocks_y.push(reflection(&axis)?);
    }
    let reduced_basis = IndexedBasis::new(g2.edge_labels())?;
    let reduced = build_two_partition(
        reduced_basis.clone(),
        red_pi_x,
        red_pi_y,
        red_blocks_x,
        red_blocks_y,
    )?;

    let scale = 1.0 / (h.vertex_count() as f64).sqrt();
    let initial = StateVector::new(
        reduced_basis,
        CVector::from_iterator(m, (0..m).map(|e| cr(scale * p[e].sqrt()))),
    )?;

    Ok(SzegedyWalk {
        base: h.clone(),
        graph,
        dup,
        marked,
        p,
        q,
        p_modified,
        q_modified,
        sink_edges,
        walk,
        reduced,
        x_axes,
        y_axes,
        initial,
    })
}

impl SzegedyWalk {
    /// Residual of the sink fixed-point property over all sink edges:
    /// `max_e |W delta_e - delta_e|`.
    pub fn sink_fixed_point_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for &e in &self.sink_edges {
            let delta = StateVector::delta(self.walk.basis.clone(), e);
            let image = self.walk.walk.apply(&delta).expect("same basis");
            let diff = (&image.amplitudes - &delta.amplitudes).norm();
            worst = worst.max(diff);
        }
        worst
    }

    /// The full operator restricted to the plain duplicated edges; the sink
    /// construction keeps this block closed under the evolution.
    pub fn full_restricted_to_reduced(&self) -> CMatrix {
        let m = self.reduced.dim();
        let dense = self.walk.walk.to_dense();
        dense.view((0, 0), (m, m)).into_owned()
    }

    pub fn reduced_operator(&self) -> &WalkOperator {
        &self.reduced.walk
    }
}
