//! Conditional expectations `E_Z : C(V) → C(Z⊥)` and the structures they
//! are checked against: generated subalgebras, supercommutants and the C*
//! norm of the left-regular representation.
//!
//! For a unit vector `u` the projector of `C(V)` onto `C(u⊥)` along
//! `u·C(u⊥)` is `E_u(c) = ½(c + u γ(c) u)`. For a subspace `Z` with
//! orthonormal basis `u₁, …, u_m` the projectors commute and
//! `E_Z = E_{u₁} ∘ … ∘ E_{u_m}`.

mod representation;
pub(crate) mod span;
mod stabilization;
mod subalgebra;

pub use representation::{
    is_positive, left_regular, left_regular_with_cap, min_eigenvalue, norm, RepMatrix,
};
pub use stabilization::{net_stabilization, verify_net_stabilization, StabilizationReport};
pub use subalgebra::{
    generated_subalgebra, span_contains, span_equal, span_intersection, span_residual,
    supercommutant, SubalgebraBasis,
};

use crate::error::{Error, Result};
use crate::multivector::{Multivector, RealVector};
use crate::subspace::Subspace;
use crate::tol::EPS_ORTH;

fn unit_multivector(u: &RealVector, dim: usize) -> Result<Multivector> {
    Error::check_dims(dim, u.dim())?;
    let norm = u.norm();
    if (norm - 1.0).abs() > EPS_ORTH {
        return Err(Error::NonUnitVector { norm });
    }
    Multivector::from_vector(u)
}

/// `E_u(c) = ½(c + u γ(c) u)` for a unit vector `u`.
pub fn expect_unit(u: &RealVector, c: &Multivector) -> Result<Multivector> {
    let u = unit_multivector(u, c.dim())?;
    Ok(apply_unit(&u, c))
}

fn apply_unit(u: &Multivector, c: &Multivector) -> Multivector {
    let sandwich = &(u * &c.gamma()) * u;
    (c + &sandwich).scale_real(0.5)
}

/// Splits `c = a + u·b` with `a, b ∈ C(u⊥)`.
pub fn decompose_along(u: &RealVector, c: &Multivector) -> Result<(Multivector, Multivector)> {
    let um = unit_multivector(u, c.dim())?;
    let a = apply_unit(&um, c);
    let b = &um * &(c - &a);
    Ok((a, b))
}

/// `E_Z(c)`: the product of `E_u` over the stored orthonormal basis of `Z`.
pub fn expect_subspace(z: &Subspace, c: &Multivector) -> Result<Multivector> {
    Error::check_dims(z.ambient_dim(), c.dim())?;
    z.basis()
        .iter()
        .try_fold(c.clone(), |acc, u| expect_unit(u, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::EPS_RANK;
    use num_complex::Complex64;

    fn mv(dim: usize, terms: &[(u32, f64)]) -> Multivector {
        Multivector::from_terms(dim, terms.iter().map(|&(m, c)| (m, Complex64::new(c, 0.0))))
            .unwrap()
    }

    fn axis(dim: usize, i: usize) -> RealVector {
        RealVector::unit(dim, i - 1)
    }

    /// Independent route: E_u for a coordinate axis keeps exactly the blades
    /// that do not contain that axis.
    fn drop_blades_containing(c: &Multivector, mask: u32) -> Multivector {
        Multivector::from_terms(c.dim(), c.raw_terms().filter(|(m, _)| m & mask == 0)).unwrap()
    }

    #[test]
    fn unit_projector_examples() {
        assert!(expect_unit(&axis(2, 1), &mv(2, &[(1, 1.0)]))
            .unwrap()
            .is_zero());
        assert_eq!(
            expect_unit(&axis(2, 1), &mv(2, &[(0, 1.0)])).unwrap(),
            mv(2, &[(0, 1.0)])
        );
        let c = mv(2, &[(0, 1.0), (3, 1.0)]);
        let got = expect_unit(&axis(2, 1), &c).unwrap();
        assert_eq!(got, mv(2, &[(0, 1.0)]));
        assert_eq!(got, drop_blades_containing(&c, 1));
        assert_eq!(decompose_along(&axis(2, 1), &c).unwrap().0, got);
    }

    #[test]
    fn non_unit_vector_is_rejected() {
        let c = mv(2, &[(0, 1.0)]);
        let err = expect_unit(&RealVector::new(vec![2.0, 0.0]), &c).unwrap_err();
        assert_eq!(err, Error::NonUnitVector { norm: 2.0 });
        assert!(decompose_along(&RealVector::new(vec![0.0, 0.0]), &c).is_err());
        assert!(expect_unit(&axis(3, 1), &c).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let (a, b) = decompose_along(&axis(3, 1), &mv(3, &[(1, 1.0)])).unwrap();
        assert_eq!((a, b), (mv(3, &[]), mv(3, &[(0, 1.0)])));
        let (a, b) = decompose_along(&axis(3, 1), &mv(3, &[(2, 1.0)])).unwrap();
        assert_eq!((a, b), (mv(3, &[(2, 1.0)]), mv(3, &[])));
        let (a, b) = decompose_along(&axis(3, 1), &mv(3, &[(0, 2.0), (0b101, 3.0)])).unwrap();
        assert_eq!((a, b), (mv(3, &[(0, 2.0)]), mv(3, &[(0b100, 3.0)])));
    }

    #[test]
    fn decomposition_reconstructs_for_oblique_u() {
        let s = 1.0 / 3f64.sqrt();
        let u = RealVector::new(vec![s, s, s]);
        let c = mv(3, &[(0, 0.3), (1, -1.0), (0b110, 2.0), (0b111, 0.5)]);
        let (a, b) = decompose_along(&u, &c).unwrap();
        let um = Multivector::from_vector(&u).unwrap();
        assert!((&a + &(&um * &b)).approx_eq(&c, 1e-12));
        assert!(expect_unit(&u, &a).unwrap().approx_eq(&a, 1e-12));
        assert!(expect_unit(&u, &b).unwrap().approx_eq(&b, 1e-12));
    }

    #[test]
    fn subspace_expectation_examples() {
        let c = mv(3, &[(0, 1.0), (1, 2.0), (0b11, 3.0)]);
        assert_eq!(expect_subspace(&Subspace::zero(3), &c).unwrap(), c);
        let z1 = Subspace::coordinate(3, &[1]).unwrap();
        assert!(expect_subspace(&z1, &mv(3, &[(1, 1.0)])).unwrap().is_zero());
        let z12 = Subspace::coordinate(3, &[1, 2]).unwrap();
        let c = mv(3, &[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0), (4, 1.0)]);
        let got = expect_subspace(&z12, &c).unwrap();
        assert_eq!(got, mv(3, &[(0, 1.0), (4, 1.0)]));
        assert_eq!(got, drop_blades_containing(&c, 0b11));
        assert!(expect_subspace(&Subspace::zero(2), &c).is_err());
    }

    #[test]
    fn image_of_oblique_subspace_lies_in_complement_algebra() {
        let z =
            Subspace::from_spanning(3, &[RealVector::new(vec![1.0, 2.0, 0.5])], EPS_RANK).unwrap();
        let c = mv(
            3,
            &[
                (0, 0.2),
                (1, 1.0),
                (0b011, -0.7),
                (0b111, 1.3),
                (0b100, 0.4),
            ],
        );
        let e = expect_subspace(&z, &c).unwrap();
        let target = generated_subalgebra(&z.orthocomplement()).unwrap();
        let single = SubalgebraBasis::new(3, vec![e]).unwrap();
        assert!(span_contains(&target, &single).unwrap());
    }
}
