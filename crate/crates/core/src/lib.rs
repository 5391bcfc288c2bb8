//! Exact construction and certification of nut graphs with a prescribed number
//! of vertex, edge and arc orbits.
//!
//! A nut graph is a graph on at least two vertices whose adjacency matrix has a
//! one-dimensional kernel spanned by a vector with no zero entry. This crate
//! builds the circulant and Cayley families that realise every admissible
//! `(vertex orbits, edge orbits)` pair with odd vertex-orbit count, and checks
//! each claim with exact arithmetic:
//!
//! - [`linalg`] computes rational kernels, characteristic polynomials and the
//!   cartesian-product spectral identities;
//! - [`cyclotomic`] decides circulant singularity by exact division by
//!   cyclotomic polynomials;
//! - [`automorphism`] computes automorphism groups from scratch and the orbit
//!   census `(o_v, o_e, o_a)`;
//! - [`constructions`] ties these together into certified builders.

pub mod automorphism;
pub mod constructions;
pub mod cyclotomic;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod poly;

pub use automorphism::{orbit_census, OrbitCensus, Permutation, PermutationGroup};
pub use constructions::{ConstructionError, ConstructionParams, VerifiedNut};
pub use graph::{Graph, GraphError};
pub use linalg::{is_nut, NutVerdict};
pub use poly::IntPolynomial;
