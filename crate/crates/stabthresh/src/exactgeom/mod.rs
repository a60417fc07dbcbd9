//! Exact rational linear algebra and polyhedral geometry.
//!
//! Everything here is pure and exact: representation conversion by the
//! double description method, deterministic fan triangulation, lattice
//! point enumeration, and closed-form integration of products of linear
//! forms over polytopes. No floating point anywhere.

mod density;
mod dd;
mod lattice;
mod matrix;
mod polytope;
mod simplex;
mod vector;

pub use density::{LinearFactor, PolynomialDensity};
pub use matrix::{integer_kernel, RationalMatrix};
pub use polytope::{HalfSpace, Polytope};
pub use simplex::Simplex;
pub use vector::RationalVector;

use thiserror::Error;

/// Errors from the exact geometry kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("halfspace description is unbounded")]
    UnboundedPolytope,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("density has zero total mass on the polytope")]
    ZeroMass,
    #[error("integration domain is lower-dimensional; use the affine-span variant")]
    DegenerateDomain,
    #[error("polytope representations are not completed")]
    IncompleteRepresentation,
    #[error("halfspace normal must be nonzero")]
    ZeroNormal,
    #[error("dimension mismatch between polytope and data")]
    DimensionMismatch,
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("internal geometry invariant violated: {0}")]
    Internal(String),
}
