//! Constructive weighted-list and oriented quasi-antimagic edge labelings.
//!
//! The crate builds labelings through the classic reduction: while the graph
//! has a vertex of degree at least three, three of its edges are removed and
//! later re-inserted through a Combinatorial Nullstellensatz extension; the
//! residual graph of maximum degree two is labeled by a greedy stage on the
//! complement of a maximum matching followed by a Nullstellensatz stage on the
//! matching edges. Every Nullstellensatz step is backed by an exact
//! coefficient certificate computed with [`poly`].
//!
//! All arithmetic is exact. The labeling, verification, search and pipeline
//! code is generic over [`Scalar`]; [`Rational`] is the default instantiation.

pub mod error;
pub mod graph;
pub mod io;
pub mod labeling;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexId};
pub use labeling::{Labeling, ListAssignment, Orientation, Weighting};
pub use scalar::Scalar;

/// Exact rationals, the default scalar for weights, lists and labels.
pub type Rational = num_rational::BigRational;
/// Integer polynomials, used for coefficient certificates.
pub type IntPolynomial = poly::Polynomial<num_bigint::BigInt>;
/// Rational polynomials, used to expand constraint systems.
pub type RationalPolynomial = poly::Polynomial<Rational>;

pub type RationalWeighting = Weighting<Rational>;
pub type RationalLists = ListAssignment<Rational>;
pub type RationalLabeling = Labeling<Rational>;
pub type RationalSolveRequest = pipeline::SolveRequest<Rational>;
pub type RationalSolveResult = pipeline::SolveResult<Rational>;
