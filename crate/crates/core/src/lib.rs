//! Partition-based discrete-time quantum walks.
//!
//! Discrete-time quantum walks driven by two block-diagonal local unitaries
//! come in several guises — walks on the elements of an abstract partitioned
//! set, on the edges of a bipartite multigraph, on the arcs of a multigraph
//! (coined), on the vertices of a 2-tessellable graph (staggered), and on
//! hypergraph incidences. This crate builds the evolution operators of all
//! of these families, converts between them through explicit basis
//! relabelings with numerical certificates, and reduces coined walks to a
//! small discriminant operator whose spectrum reconstructs the full walk
//! spectrum.
//!
//! Organization:
//! - [`graph`]: multigraphs, arcs, partitions, tessellation covers,
//!   hypergraphs, and the derived constructions (duplication, intersection
//!   graph, line graph).
//! - [`operator`]: indexed bases, block-local unitaries, sparse walk
//!   operators, reflections, Hermitian exponentials.
//! - [`models`]: builders for each walk family, including search variants
//!   with marked vertices and sinks, CMV chains, and torus lattices.
//! - [`equivalence`]: basis bijections, relabeling unitaries, model-to-model
//!   converters, and residual certificates.
//! - [`spectral`]: boundary operator, discriminant, spectral mapping and
//!   eigenspace reconstruction.
//! - [`sim`]: time evolution, probability traces and search experiments.
//! - [`config`]: JSON descriptions of graphs and models shared with the CLI.

pub mod config;
pub mod equivalence;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod models;
pub mod operator;
pub mod sim;
pub mod spectral;

pub use error::{Error, Result};
