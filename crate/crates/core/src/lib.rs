//! Exact computation of the multiplicity of degeneration of a polynomial
//! matrix from the Newton polyhedra of its entries.
//!
//! The crate is organized bottom-up:
//!
//! * [`polyhedron`]: lattice polyhedra with orthant recession cones and the
//!   tropical semiring operations (`+` Minkowski sum, `∨` hull of union).
//! * [`pairs`]: bounded pairs of parallel polyhedra and their mixed volume.
//! * [`cayley`]: Cayley polyhedra and the mixed-volume identity for them.
//! * [`newton`]: polynomials, Newton polyhedra, and the closed formulas for
//!   local degrees and matrix multiplicities.
//! * [`genpos`]: matrix-compatible face collections and general position.
//! * [`colength`]: the multiplicity as the colength of the ideal of maximal
//!   minors, by truncated linear algebra.
//! * [`fans`] and [`envelope`]: dual fans, lattice transversality, and the
//!   lattice-point identities they imply.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod cayley;
pub mod colength;
pub mod combin;
pub mod envelope;
pub mod error;
pub mod fans;
pub mod genpos;
mod geom;
mod hull;
pub mod json;
pub mod lattice;
pub mod lp;
pub mod newton;
pub mod pairs;
pub mod poly;
pub mod polyhedron;
pub mod rational;
pub mod scalar;

pub use error::{Error, Result};
pub use pairs::BoundedPair;
pub use poly::{PolyMatrix, Polynomial};
pub use polyhedron::LatticePolyhedron;
pub use scalar::Scalar;
