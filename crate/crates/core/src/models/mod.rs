//! Builders for the walk families and their search variants.

mod bipartite;
mod cmv;
mod coined;
mod hypergraph;
mod lattice;
pub mod random;
mod staggered;
mod szegedy;
mod two_partition;

pub use bipartite::{build_bipartite, BipartiteWalk};
pub use cmv::{build_cmv, CmvOperators};
pub use coined::{
    build_coined, search_coin, CaseOneStyle, CoinSpec, CoinedWalk, SearchCase, ShiftSpec,
};
pub use hypergraph::build_hypergraph_walk;
pub use lattice::{build_lattice_walk, CoinField, LatticeWalk};
pub use staggered::{build_staggered, HamiltonianSpec, StaggeredSearch, StaggeredWalk};
pub use szegedy::{build_szegedy, build_szegedy_search, SzegedyWalk};
pub use two_partition::{build_two_partition, TwoPartitionWalk};
