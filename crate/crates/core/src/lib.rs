//! Exact solvers, certified deciders, and finite-inheritance experiments for
//! matching and covering properties of finite hypergraphs.
//!
//! The library decides four properties of a hypergraph `H = (V, E)`:
//!
//! * **König's property** — some matching admits one representative vertex
//!   per matched edge such that the representatives cover every edge.
//! * **König's weak property** — some matching has size equal to the
//!   covering number.
//! * **Bipartiteness** — some vertex set splits every edge with more than
//!   one vertex.
//! * **Choosability (exact transversal)** — some vertex set meets every edge
//!   in exactly one vertex.
//!
//! Every decision is backed by a checkable witness or an exhaustive search,
//! and the [`heritability`] module measures how each property behaves on
//! small edge subsets versus the whole family: several of the built-in
//! families ([`generators`]) satisfy a property on every small subfamily
//! while the whole family fails it.

pub mod certificate;
pub mod cli;
pub mod generators;
pub mod heritability;
pub mod hypergraph;
pub mod instance;
pub mod properties;
pub mod solvers;

mod bitset;

pub use hypergraph::{
    Bipartition, CoverSolution, EdgeSubset, ExactTransversal, Hypergraph, HypergraphError,
    KonigCertificate, Matching, VertexId,
};
pub use properties::PropertyKind;
pub use solvers::{Budget, SolveStats, SolverError};
