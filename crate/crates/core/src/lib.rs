//! Exact computations for finite diagram representations.
//!
//! Given a finite directed multigraph with a vector space at every vertex and a
//! linear map on every edge, this crate computes the algebra of compatible
//! endomorphism tuples `End(H)`, its predual coalgebra `End^∨(H)`, the module
//! category of that algebra (tautological modules, presentations, quotients by
//! kernel ideals, semisimplicity), tensor structure and duals, and the
//! homological tools used alongside them: cohomology of bounded complexes,
//! Künneth, spectral sequence pages of filtered complexes with Deligne's
//! décalage, perfect pairings and Lefschetz decompositions.
//!
//! All arithmetic is exact, over ℚ or a prime field 𝔽_p.

pub mod algebra;
pub mod cli;
pub mod comodule;
pub mod corpus;
pub mod diagram;
pub mod endomorphism;
pub mod error;
pub mod field;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod tannaka;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Matrix, Subspace};
