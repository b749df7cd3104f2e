//! Numerical tolerances and size caps shared by every module.

/// Multivector and subspace equality: maximum absolute entry difference.
pub const EPS_EQ: f64 = 1e-8;

/// Orthonormality of stored subspace bases, and the unit-vector check.
pub const EPS_ORTH: f64 = 1e-10;

/// Pivot acceptance in Gram–Schmidt and singular-value cut-off for kernels.
pub const EPS_RANK: f64 = 1e-9;

/// Relative tolerance for the C* identity `‖c*c‖ = ‖c‖²`.
pub const EPS_CSTAR_REL: f64 = 1e-7;

/// Largest ambient dimension accepted by algebra-only operations.
pub const MAX_ALGEBRA_DIM: usize = 12;

/// Default largest ambient dimension for matrix-representation operations
/// (`2^8 = 256` rows).
pub const DEFAULT_REP_CAP: usize = 8;
