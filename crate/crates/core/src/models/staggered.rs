use crate::error::{Error, Result};
use crate::graph::{validate_tessellation_cover, TessellationCover};
use crate::linalg::{cr, uniform_vector, CMatrix, CsMatrix};
use crate::operator::{
    block_direct_sum, hermitian_exp, reflection, BlockLocalUnitary, IndexedBasis, WalkOperator,
};

/// Staggered walk on a 2-tessellable graph: per-polygon Hermitian operators
/// exponentiated into local unitaries, one factor per tessellation.
#[derive(Debug, Clone)]
pub struct StaggeredWalk {
    pub cover: TessellationCover,
    pub basis: IndexedBasis,
    pub hamiltonians1: Vec<CMatrix>,
    pub hamiltonians2: Vec<CMatrix>,
    pub theta1: f64,
    pub theta2: f64,
    pub e_op: BlockLocalUnitary,
    pub f_op: BlockLocalUnitary,
    pub search: StaggeredSearch,
    pub marked: Vec<usize>,
    pub walk: WalkOperator,
}

/// Per-polygon Hermitian generators.
#[derive(Debug, Clone)]
pub enum HamiltonianSpec {
    /// Rows and columns of the graph adjacency matrix restricted to each
    /// polygon.
    Adjacency,
    /// Reflection form `2|a><a| - 1` about the uniform unit vector of each
    /// polygon.
    Reflection,
    /// Explicit Hermitian blocks, one list per tessellation in polygon
    /// order.
    Custom(Vec<CMatrix>, Vec<CMatrix>),
}

/// Query-operator search variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StaggeredSearch {
    #[default]
    None,
    /// `U = F E Q` with the query `Q = 2 sum_marked |u><u| - 1`.
    Query,
    /// `U = F Q E Q`.
    QuerySandwich,
}

fn adjacency_block(cover: &TessellationCover, polygon: &[usize]) -> CMatrix {
    CMatrix::from_fn(polygon.len(), polygon.len(), |i, j| {
        if cover.graph.has_edge(polygon[i], polygon[j]) {
            cr(1.0)
        } else {
            cr(0.0)
        }
    })
}

pub fn build_staggered(
    cover: TessellationCover,
    hamiltonians: HamiltonianSpec,
    theta1: f64,
    theta2: f64,
    search: StaggeredSearch,
    marked: &[usize],
) -> Result<StaggeredWalk> {
    let report = validate_tessellation_cover(&cover);
    if !report.valid() {
        return Err(Error::Graph(format!(
            "invalid tessellation cover: {} non-clique polygons, {} uncovered edges",
            report.non_clique_polygons.len(),
            report.uncovered_edges.len()
        )));
    }
    let n = cover.graph.vertex_count();
    if let Some(&bad) = marked.iter().find(|&&v| v >= n) {
        return Err(Error::Model(format!("marked vertex {bad} does not exist")));
    }
    if search == StaggeredSearch::None && !marked.is_empty() {
        return Err(Error::Model(
            "marked vertices supplied without a query search variant".into(),
        ));
    }

    let (hams1, hams2) = match hamiltonians {
        HamiltonianSpec::Adjacency => (
            cover
                .tess1
                .classes()
                .iter()
                .map(|p| adjacency_block(&cover, p))
                .collect(),
            cover
                .tess2
                .classes()
                .iter()
                .map(|p| adjacency_block(&cover, p))
                .collect(),
        ),
        HamiltonianSpec::Reflection => {
            let refl = |len: usize| reflection(&uniform_vector(len)).expect("unit axis");
            (
                cover
                    .tess1
                    .classes()
                    .iter()
                    .map(|p| refl(p.len()))
                    .collect::<Vec<_>>(),
                cover
                    .tess2
                    .classes()
                    .iter()
                    .map(|p| refl(p.len()))
                    .collect::<Vec<_>>(),
            )
        }
        HamiltonianSpec::Custom(h1, h2) => (h1, h2),
    };
    if hams1.len() != cover.tess1.class_count() || hams2.len() != cover.tess2.class_count() {
        return Err(Error::Dimension(
            "one Hermitian block required per polygon".into(),
        ));
    }

    let blocks1: Vec<CMatrix> = hams1
        .iter()
        .map(|h| hermitian_exp(h, theta1))
        .collect::<Result<_>>()?;
    let blocks2: Vec<CMatrix> = hams2
        .iter()
        .map(|h| hermitian_exp(h, theta2))
        .collect::<Result<_>>()?;

    let names: Vec<String> = cover.graph.vertex_names().to_vec();
    let basis = IndexedBasis::new(names)?;
    let e_op = block_direct_sum(basis.clone(), cover.tess1.clone(), blocks1)?;
    let f_op = block_direct_sum(basis.clone(), cover.tess2.clone(), blocks2)?;

    let query = CsMatrix::from_triplets(
        n,
        n,
        (0..n).map(|v| {
            let sign = if marked.contains(&v) { 1.0 } else { -1.0 };
            (v, v, cr(sign))
        }),
    );
    let product = match search {
        StaggeredSearch::None => f_op.to_sparse().matmul(&e_op.to_sparse()),
        StaggeredSearch::Query => f_op.to_sparse().matmul(&e_op.to_sparse()).matmul(&query),
        StaggeredSearch::QuerySandwich => f_op
            .to_sparse()
            .matmul(&query)
            .matmul(&e_op.to_sparse())
            .matmul(&query),
    };
    let walk = WalkOperator::new(basis.clone(), product, "staggered")?;

    Ok(StaggeredWalk {
        cover,
        basis,
        hamiltonians1: hams1,
        hamiltonians2: hams2,
        theta1,
        theta2,
        e_op,
        f_op,
        search,
        marked: marked.to_vec(),
        walk,
    })
}

impl StaggeredWalk {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}
