//! Exact-arithmetic toolkit for chromatic symmetric functions of unit
//! interval orders.
//!
//! The crate provides four layers, each usable on its own:
//!
//! * [`partition`] / [`poly`] / [`symfunc`]: integer partitions, sparse
//!   multivariate polynomials over an exact integer scalar, and the four
//!   classical symmetric-function bases (elementary, power sum, monomial,
//!   Schur) together with expansion into the e- and s-bases.
//! * [`uio`] / [`graph`]: unit interval orders encoded by Hessenberg
//!   vectors, their relation/arrow structure, and plain undirected graphs.
//! * [`chromatic`] / [`ghom`]: the chromatic symmetric function (two
//!   independent algorithms), clique expansions, acyclic-orientation sink
//!   counts, and the substitution that sends `e_i` to the independent-set
//!   generating polynomial of a graph.
//! * [`escher`]: cyclic Escher sequences, correct sequences, sub-Escher
//!   window analysis, valid insertions, and the splitting/splicing maps
//!   `phi` / `psi` with their calibrated rotation convention.
//!
//! Coefficient arithmetic is generic over [`Coeff`], an exact integer
//! scalar backed by `num-traits` checked operations. `i64` (hard error on
//! overflow) and `num_bigint::BigInt` (overflow-free) both implement it;
//! the crate-root aliases below fix the default used throughout the CLI.

pub mod chromatic;
pub mod error;
pub mod escher;
pub mod ghom;
pub mod graph;
pub mod partition;
pub mod poly;
pub mod symfunc;
pub mod uio;

pub use error::Error;
pub use graph::Graph;
pub use partition::Partition;
pub use poly::{Coeff, MultiPoly};
pub use symfunc::EBasisExpr;
pub use uio::{Relation, Uio};

/// Default exact scalar: checked 64-bit arithmetic, aborts on overflow.
pub type Int = i64;

/// Sparse polynomial over the default scalar.
pub type Poly = MultiPoly<Int>;

/// e-basis expansion over the default scalar.
pub type EExpr = EBasisExpr<Int>;

pub type Result<T> = std::result::Result<T, Error>;
