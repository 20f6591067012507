use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Partition};
use crate::linalg::{grover_block, CMatrix, CVector, CsMatrix, C64};
use crate::operator::{block_direct_sum, BlockLocalUnitary, IndexedBasis, WalkOperator};

/// Vertex-based coined walk on a d-dimensional torus: each site carries a
/// 2d-dimensional internal space ordered `(-1, +1, -2, +2, ...)`, the moving
/// shift transports the `+j` component forward and the `-j` component
/// backward along axis `j`, and the evolution is `shift * coin`.
#[derive(Debug, Clone)]
pub struct LatticeWalk {
    pub dims: Vec<usize>,
    pub basis: IndexedBasis,
    /// One 2d x 2d unitary per site, in site order.
    pub coins: Vec<CMatrix>,
    pub coin_op: BlockLocalUnitary,
    pub shift: CsMatrix,
    pub walk: WalkOperator,
}

/// Per-site coin choice.
#[derive(Debug, Clone)]
pub enum CoinField {
    Identity,
    Grover,
    Uniform(CMatrix),
    PerSite(Vec<CMatrix>),
}

pub fn build_lattice_walk(dims: &[usize], coin_field: CoinField) -> Result<LatticeWalk> {
    if dims.is_empty() {
        return Err(Error::Model("lattice needs at least one axis".into()));
    }
    // a two-site axis collapses the forward and backward steps onto the
    // same neighbor, leaving the shift ill-defined
    if let Some(&n) = dims.iter().find(|&&n| n < 3) {
        return Err(Error::Model(format!(
            "axis length {n} rejected: torus axes need at least 3 sites"
        )));
    }
    let d = dims.len();
    let comp = 2 * d;
    let sites: usize = dims.iter().product();
    let dim = sites * comp;

    let coords = |v: usize| -> Vec<usize> {
        let mut rest = v;
        let mut out = vec![0usize; d];
        for j in (0..d).rev() {
            out[j] = rest % dims[j];
            rest /= dims[j];
        }
        out
    };
    let index = |c: &[usize]| -> usize {
        let mut idx = 0usize;
        for j in 0..d {
            idx = idx * dims[j] + c[j];
        }
        idx
    };
    let neighbor = |v: usize, axis: usize, step: isize| -> usize {
        let mut c = coords(v);
        let n = dims[axis] as isize;
        c[axis] = ((c[axis] as isize + step).rem_euclid(n)) as usize;
        index(&c)
    };

    let labels: Vec<String> = (0..dim)
        .map(|i| {
            let (v, k) = (i / comp, i % comp);
            let axis = k / 2 + 1;
            let sign = if k % 2 == 0 { "-" } else { "+" };
            let cs: Vec<String> = coords(v).iter().map(|x| x.to_string()).collect();
            format!("({};{sign}{axis})", cs.join(","))
        })
        .collect();
    let basis = IndexedBasis::new(labels)?;

    let coins: Vec<CMatrix> = match coin_field {
        CoinField::Identity => vec![CMatrix::identity(comp, comp); sites],
        CoinField::Grover => vec![grover_block(comp); sites],
        CoinField::Uniform(c) => {
            if c.nrows() != comp || c.ncols() != comp {
                return Err(Error::Dimension(format!(
                    "coin must be {comp}x{comp} for a {d}-dimensional lattice"
                )));
            }
            vec![c; sites]
        }
        CoinField::PerSite(cs) => {
            if cs.len() != sites {
                return Err(Error::Dimension(format!(
                    "{} coins supplied for {sites} sites",
                    cs.len()
                )));
            }
            cs
        }
    };

    let site_partition = Partition::new(
        dim,
        (0..sites)
            .map(|v| (0..comp).map(|k| v * comp + k).collect())
            .collect(),
    )?;
    let coin_op = block_direct_sum(basis.clone(), site_partition, coins.clone())?;

    // moving shift: the +j component at x comes from x - e_j, the -j
    // component from x + e_j
    let shift = CsMatrix::from_triplets(
        dim,
        dim,
        (0..dim).map(|i| {
            let (v, k) = (i / comp, i % comp);
            let axis = k / 2;
            let source = if k % 2 == 1 {
                neighbor(v, axis, -1)
            } else {
                neighbor(v, axis, 1)
            };
            (i, source * comp + k, C64::new(1.0, 0.0))
        }),
    );
    let walk = WalkOperator::new(basis.clone(), shift.matmul(&coin_op.to_sparse()), "lattice")?;
    Ok(LatticeWalk {
        dims: dims.to_vec(),
        basis,
        coins,
        coin_op,
        shift,
        walk,
    })
}

impl LatticeWalk {
    pub fn axis_count(&self) -> usize {
        self.dims.len()
    }

    pub fn component_count(&self) -> usize {
        2 * self.dims.len()
    }

    pub fn site_count(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn dim(&self) -> usize {
        self.site_count() * self.component_count()
    }

    pub fn site_coords(&self, v: usize) -> Vec<usize> {
        let d = self.axis_count();
        let mut rest = v;
        let mut out = vec![0usize; d];
        for j in (0..d).rev() {
            out[j] = rest % self.dims[j];
            rest /= self.dims[j];
        }
        out
    }

    pub fn site_index(&self, coords: &[usize]) -> usize {
        let mut idx = 0usize;
        for j in 0..self.axis_count() {
            idx = idx * self.dims[j] + coords[j];
        }
        idx
    }

    pub fn neighbor(&self, v: usize, axis: usize, step: isize) -> usize {
        let mut c = self.site_coords(v);
        let n = self.dims[axis] as isize;
        c[axis] = ((c[axis] as isize + step).rem_euclid(n)) as usize;
        self.site_index(&c)
    }

    /// The transport expression `sum_j P_j(x - e_j) psi(x - e_j) +
    /// P_-j(x + e_j) psi(x + e_j)` with `P_{±j}(x) = |±j><±j| C'(x)` — an
    /// independent route to one walk step used for cross-checking.
    pub fn apply_transport_form(&self, psi: &CVector) -> CVector {
        let comp = self.component_count();
        let mut out = CVector::zeros(self.dim());
        for v in 0..self.site_count() {
            for j in 0..self.axis_count() {
                let back = self.neighbor(v, j, -1);
                let fwd = self.neighbor(v, j, 1);
                // +j component sourced from x - e_j
                let plus_row = 2 * j + 1;
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..comp {
                    acc += self.coins[back][(plus_row, k)] * psi[back * comp + k];
                }
                out[v * comp + plus_row] = acc;
                // -j component sourced from x + e_j
                let minus_row = 2 * j;
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..comp {
                    acc += self.coins[fwd][(minus_row, k)] * psi[fwd * comp + k];
                }
                out[v * comp + minus_row] = acc;
            }
        }
        out
    }

    /// Torus multigraph: one edge per site and axis toward the next site.
    /// Edge `v * d + j` joins `v` to its forward neighbor along axis `j`,
    /// stored in that endpoint order.
    pub fn torus_graph(&self) -> MultiGraph {
        let d = self.axis_count();
        let names: Vec<String> = (0..self.site_count())
            .map(|v| {
                let cs: Vec<String> = self.site_coords(v).iter().map(|x| x.to_string()).collect();
                format!("({})", cs.join(","))
            })
            .collect();
        let edges: Vec<(usize, usize)> = (0..self.site_count())
            .flat_map(|v| (0..d).map(move |j| (v, j)))
            .map(|(v, j)| (v, self.neighbor(v, j, 1)))
            .collect();
        MultiGraph::new(names, edges).expect("torus is a valid multigraph")
    }
}
