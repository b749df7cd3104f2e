//! Finite-dimensional complex Clifford algebras `C(R^n)` with their
//! Z₂-grading, star involution, conditional expectations onto the
//! subalgebras `C(Z⊥)`, and a supercommutant solver.
//!
//! The crate is organised bottom-up:
//!
//! * [`blade`] and [`multivector`] hold exact Clifford arithmetic over
//!   sparse complex coefficients.
//! * [`subspace`] is the lattice of subspaces of `R^n` (orthonormal bases,
//!   orthocomplements, projections, sums and intersections).
//! * [`expectation`] contains the operator layer: the projectors `E_u`,
//!   conditional expectations `E_Z`, generated subalgebras, supercommutants,
//!   the left-regular representation and the C* norm.
//! * [`verify`] runs seeded randomized suites checking the algebraic
//!   identities those pieces are supposed to satisfy.
//! * [`text`] and [`cli`] provide the textual front end.

pub mod blade;
pub mod cli;
pub mod error;
pub mod expectation;
pub mod multivector;
pub mod random;
pub mod subspace;
pub mod text;
pub mod tol;
pub mod verify;

pub use blade::{blade_product, BladeIndex, Sign};
pub use error::{Error, Result};
pub use expectation::{
    decompose_along, expect_subspace, expect_unit, generated_subalgebra, is_positive, left_regular,
    min_eigenvalue, net_stabilization, norm, span_contains, span_equal, span_intersection,
    span_residual, supercommutant, verify_net_stabilization, RepMatrix, StabilizationReport,
    SubalgebraBasis,
};
pub use multivector::{Multivector, RealVector};
pub use subspace::Subspace;
pub use text::{format_multivector, parse_multivector, ParseError};
