//! Exact computations for tropical toric surfaces.
//!
//! * [`trop`]: the max-plus semifield, tropical polynomials as functions and
//!   the tropical determinant.
//! * [`fan`]: smooth complete fans in ℝ², builtin surfaces and blow-ups.
//! * [`divisor`]: toric divisors, the polytope `P(D)` and `h⁰ = |P(D) ∩ M|`.
//! * [`sections`]: monomial section modules, slope counts, the tropical
//!   Vandermonde section and the genericity test for point sets.
//! * [`curve`]: corner loci of bivariate tropical polynomials and balancing.
//! * [`intersect`]: intersection numbers and the Riemann-Roch inequality.
//! * [`cli`]: the JSON-in, JSON-out commands behind the `troptoric` binary.
//!
//! All arithmetic is exact; there are no floating-point comparisons.

pub mod cli;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod intersect;
pub mod json;
pub mod sections;
pub mod trop;

pub use curve::{corner_locus, is_balanced, newton_subdivision, Edge, NewtonSubdivision, WeightedComplex};
pub use divisor::{
    canonical_divisor, degree_along_ray, divisor_of_section, h0, lattice_points, linearly_equivalent,
    polytope, principal_divisor, DivisorPolytope, H0Value, LatticePoints, ToricDivisor,
};
pub use error::{Error, Result};
pub use fan::{dual_frame, primitive, Cone, Fan, LatticeVector};
pub use intersect::{
    euler_characteristic, pairing, ray_intersection, rr_check, self_intersection, IntersectionMatrix,
    RRReport,
};
pub use sections::{
    global_sections, h0_a, h0_b, is_generic_configuration, local_slope_count, passes_through,
    vandermonde_section, SectionModule, SlopeCount,
};
pub use trop::{is_extremal, trop_add, trop_det, trop_mul, Rational, TropMatrix, TropMonomial, TropPolynomial, TropValue};

/// Seed used wherever randomness is needed and none is supplied.
pub const DEFAULT_SEED: u64 = 0x7209_7031;
