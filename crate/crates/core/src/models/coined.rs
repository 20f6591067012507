use crate::error::{Error, Result};
use crate::graph::{ArcSet, MultiGraph, Partition};
use crate::linalg::{cr, grover_block, uniform_vector, CMatrix, CVector};
use crate::operator::{
    block_direct_sum, reflection, BlockLocalUnitary, IndexedBasis, WalkOperator,
};

/// Coined walk on the symmetric arcs of a multigraph: the coin mixes arcs
/// sharing a terminus, the shift mixes the two arcs of each edge, and the
/// evolution is `shift * coin`.
#[derive(Debug, Clone)]
pub struct CoinedWalk {
    pub graph: MultiGraph,
    pub arcs: ArcSet,
    pub basis: IndexedBasis,
    /// Arcs grouped by terminus, one class per vertex.
    pub pi1: Partition,
    /// Arcs grouped by supporting edge.
    pub pi2: Partition,
    pub coin: BlockLocalUnitary,
    pub shift: BlockLocalUnitary,
    pub flip_flop: bool,
    pub walk: WalkOperator,
}

/// Per-vertex coin choice.
#[derive(Debug, Clone)]
pub enum CoinSpec {
    Identity,
    /// Grover diffusion about the uniform superposition of incoming arcs.
    Grover,
    /// Explicit blocks in vertex order, one per vertex with incident arcs.
    Custom(Vec<CMatrix>),
    /// Search coin with marked vertices; unmarked vertices diffuse about
    /// the uniform axis.
    Search {
        case: SearchCase,
        marked: Vec<usize>,
        style: CaseOneStyle,
    },
}

/// The two marked-coin conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchCase {
    /// Reflection about a per-vertex axis that is cut off at marked
    /// vertices.
    One,
    /// Per-vertex reflection, negated at marked vertices.
    Two,
}

/// Which vertices get the sign flip in the Case-I coin. `FlipMarked` gives
/// marked vertices the negated identity and keeps the reflection elsewhere,
/// which is the convention the search analysis relies on. `FlipUnmarked` is
/// the other literal reading and is exposed for comparison only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CaseOneStyle {
    #[default]
    FlipMarked,
    FlipUnmarked,
}

/// Shift choice: the involutive flip-flop, or one general 2x2 unitary per
/// edge acting on the ordered pair (forward arc, backward arc).
#[derive(Debug, Clone)]
pub enum ShiftSpec {
    FlipFlop,
    Extended(Vec<CMatrix>),
}

/// Search coin block for a single vertex. `axis` must be a unit vector over
/// the incoming arcs of the vertex.
pub fn search_coin(
    marked: bool,
    axis: &CVector,
    case: SearchCase,
    style: CaseOneStyle,
) -> Result<CMatrix> {
    let norm = axis.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::BadReflectionAxis { norm });
    }
    let dim = axis.len();
    match case {
        SearchCase::One => {
            let cut = match style {
                CaseOneStyle::FlipMarked => marked,
                CaseOneStyle::FlipUnmarked => !marked,
            };
            if cut {
                Ok(-CMatrix::identity(dim, dim))
            } else {
                reflection(axis)
            }
        }
        SearchCase::Two => {
            let r = reflection(axis)?;
            Ok(if marked { -r } else { r })
        }
    }
}

pub fn build_coined(g: &MultiGraph, coins: CoinSpec, shift: ShiftSpec) -> Result<CoinedWalk> {
    if g.edge_count() == 0 {
        return Err(Error::Graph("coined walk needs at least one edge".into()));
    }
    let arcs = g.arcs();
    let n_arcs = arcs.len();
    let basis = IndexedBasis::new(arcs.labels())?;
    let terminus_keys: Vec<usize> = (0..n_arcs).map(|a| arcs.terminus(a)).collect();
    let edge_keys: Vec<usize> = (0..n_arcs).map(|a| arcs.edge(a)).collect();
    let pi1 = Partition::from_keys(&terminus_keys);
    let pi2 = Partition::from_keys(&edge_keys);

    let coin_blocks: Vec<CMatrix> = match coins {
        CoinSpec::Identity => pi1
            .classes()
            .iter()
            .map(|c| CMatrix::identity(c.len(), c.len()))
            .collect(),
        CoinSpec::Grover => pi1
            .classes()
            .iter()
            .map(|c| grover_block(c.len()))
            .collect(),
        CoinSpec::Custom(blocks) => blocks,
        CoinSpec::Search {
            case,
            marked,
            style,
        } => {
            if let Some(&bad) = marked.iter().find(|&&v| v >= g.vertex_count()) {
                return Err(Error::Model(format!("marked vertex {bad} does not exist")));
            }
            let mut blocks = Vec::with_capacity(pi1.class_count());
            for class in pi1.classes() {
                let u = arcs.terminus(class[0]);
                let axis = uniform_vector(class.len());
                blocks.push(search_coin(marked.contains(&u), &axis, case, style)?);
            }
            blocks
        }
    };
    let coin = block_direct_sum(basis.clone(), pi1.clone(), coin_blocks)?;

    let flip_flop = matches!(shift, ShiftSpec::FlipFlop);
    let shift_blocks: Vec<CMatrix> = match shift {
        ShiftSpec::FlipFlop => pi2
            .classes()
            .iter()
            .map(|_| CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]))
            .collect(),
        ShiftSpec::Extended(blocks) => {
            if blocks.iter().any(|b| b.nrows() != 2 || b.ncols() != 2) {
                return Err(Error::Dimension(
                    "extended shift blocks must be 2x2 unitaries".into(),
                ));
            }
            blocks
        }
    };
    let shift = block_direct_sum(basis.clone(), pi2.clone(), shift_blocks)?;
    let walk = WalkOperator::product(&shift, &coin, "coined")?;
    Ok(CoinedWalk {
        graph: g.clone(),
        arcs,
        basis,
        pi1,
        pi2,
        coin,
        shift,
        flip_flop,
        walk,
    })
}

impl CoinedWalk {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `walk^2`, the two-step evolution operator.
    pub fn squared(&self) -> Result<WalkOperator> {
        let m = self.walk.matrix.matmul(&self.walk.matrix);
        WalkOperator::new(self.basis.clone(), m, "coined^2")
    }

    /// Coin block for a vertex, if it has incident arcs.
    pub fn coin_block_of(&self, vertex: usize) -> Option<&CMatrix> {
        (0..self.pi1.class_count())
            .find(|&ci| self.arcs.terminus(self.pi1.class(ci)[0]) == vertex)
            .map(|ci| &self.coin.blocks[ci])
    }
}
