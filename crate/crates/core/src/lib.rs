//! Exact-arithmetic toolkit for additive combinatorics at desk scale.
//!
//! The crate computes sumsets and difference sets of a number set along a
//! graph, detects arithmetic progressions, builds the point/line and
//! point/hyperplane incidence structures on Cartesian powers of a set,
//! enumerates the triangles and simplices those structures contain, and
//! verifies a Pluennecke-type sumset inequality. Everything is computed
//! over exact rationals; floating point never enters any counting path.
//!
//! Modules follow the pipeline order:
//!
//! * [`exact`] — rationals, number sets, graphs on them, sumsets, and the
//!   brute-force arithmetic-progression oracle.
//! * [`arrangement`] — 2-D arrangements from axis-tied line families,
//!   triangle enumeration, popularity filtering, graph refinement, and the
//!   3-term pipeline.
//! * [`pattern`] — lattice patterns (simplex and grid), homothetic-copy
//!   enumeration in Cartesian powers, hyperplane classes, rich filtering,
//!   simplex enumeration, and the general (d+1)-term pipeline.
//! * [`pluennecke`] — the sumset-growth inequality verifier and hyperplane
//!   cover counts.
//! * [`harness`] — seeded instance generators and experiment drivers.

pub mod arrangement;
pub mod error;
pub mod exact;
pub mod harness;
pub mod pattern;
pub mod pluennecke;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
