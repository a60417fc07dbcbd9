//! stabthresh: exact stability thresholds for toric and spherical Fano data.
//!
//! The crate computes the threshold `delta` of a toric Fano datum and the
//! equivariant threshold `delta_G` of a spherical Fano datum from purely
//! combinatorial input, using exact rational arithmetic end to end. The
//! key objects are moment polytopes, their (weighted) barycenters, and the
//! anticanonical divisor the barycenter singles out; the minimum of
//! log-discrepancy over divisor-value ratios at a finite candidate set is
//! the threshold, and `>= 1` decides K-semistability.
//!
//! Modules:
//! - [`exactgeom`]: rational polytopes, double-description vertex
//!   enumeration, triangulation, lattice points, exact integration.
//! - [`toric`]: fan rays and divisor coefficients to `delta` and verdicts,
//!   with finite-level approximants.
//! - [`basistype`]: section spaces of dilated polytopes, basis-type
//!   divisor averages, and compatibility probes.
//! - [`spherical`]: moment polytope data with multiplicity densities to
//!   `delta_G`, plus discrete approximants.
//! - [`cli`]: file-driven runs emitting deterministic JSON, text, and CSV.
//!
//! Start with the runnable examples (`cargo run --example toric_delta`) or
//! the `stabthresh` binary.

pub mod basistype;
pub mod threshold;
pub mod cli;
pub mod datasets;
pub mod exactgeom;
pub mod io;
pub mod rat;
pub mod spherical;
pub mod toric;

pub use rat::{Int, Rat};
