use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::blade::{reorder_sign, Sign};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::tol::DEFAULT_REP_CAP;

/// Matrix of left multiplication `x ↦ c·x` on `C(R^n)`, blades taken as an
/// orthonormal basis. Column `j` holds the coefficients of `c·e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrix(DMatrix<Complex64>);

impl RepMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> RepMatrix {
        RepMatrix(self.0.adjoint())
    }

    pub fn product(&self, other: &RepMatrix) -> RepMatrix {
        RepMatrix(&self.0 * &other.0)
    }

    pub fn max_abs_diff(&self, other: &RepMatrix) -> f64 {
        (&self.0 - &other.0)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        self.0.clone().singular_values().max()
    }

    /// Largest entry of `M − M^H`.
    pub fn hermitian_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Smallest eigenvalue of the Hermitian part `(M + M^H)/2`.
    pub fn min_hermitian_eigenvalue(&self) -> f64 {
        let h = (&self.0 + self.0.adjoint()).scale(0.5);
        h.symmetric_eigenvalues().min()
    }
}

/// [`left_regular_with_cap`] at the default cap.
pub fn left_regular(c: &Multivector) -> Result<RepMatrix> {
    left_regular_with_cap(c, DEFAULT_REP_CAP)
}

pub fn left_regular_with_cap(c: &Multivector, cap: usize) -> Result<RepMatrix> {
    let n = c.dim();
    if n > cap {
        return Err(Error::DimensionTooLarge { dim: n, cap });
    }
    let width = 1usize << n;
    let mut m = DMatrix::<Complex64>::zeros(width, width);
    for j in 0..width as u32 {
        for (mask, coeff) in c.raw_terms() {
            let v = match reorder_sign(mask, j) {
                Sign::Plus => coeff,
                Sign::Minus => -coeff,
            };
            m[((mask ^ j) as usize, j as usize)] += v;
        }
    }
    Ok(RepMatrix(m))
}

/// The C* norm: operator norm of the left-regular representation.
pub fn norm(c: &Multivector) -> Result<f64> {
    Ok(left_regular(c)?.operator_norm())
}

/// Smallest eigenvalue of the Hermitian part of `left_regular(c)`.
pub fn min_eigenvalue(c: &Multivector) -> Result<f64> {
    Ok(left_regular(c)?.min_hermitian_eigenvalue())
}

/// Whether `left_regular(c)` is Hermitian within `eps` with spectrum
/// bounded below by `-eps`.
pub fn is_positive(c: &Multivector, eps: f64) -> Result<bool> {
    let rep = left_regular(c)?;
    Ok(rep.hermitian_defect() <= eps && rep.min_hermitian_eigenvalue() >= -eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(dim: usize, terms: &[(u32, f64, f64)]) -> Multivector {
        Multivector::from_terms(
            dim,
            terms.iter().map(|&(m, a, b)| (m, Complex64::new(a, b))),
        )
        .unwrap()
    }

    #[test]
    fn unit_and_generator_matrices() {
        let one = left_regular(&mv(3, &[(0, 1.0, 0.0)])).unwrap();
        assert_eq!(one.matrix(), &DMatrix::identity(8, 8));
        let e1 = left_regular(&mv(1, &[(1, 1.0, 0.0)])).unwrap();
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        assert_eq!(e1.matrix(), &DMatrix::from_row_slice(2, 2, &[o, l, l, o]));
        for n in 1..=4 {
            for i in 1..=n {
                let g = left_regular(&Multivector::generator(n, i).unwrap()).unwrap();
                let sq = g.product(&g);
                assert_eq!(sq.matrix(), &DMatrix::identity(1 << n, 1 << n));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let c = Multivector::one(9).unwrap();
        assert_eq!(
            left_regular(&c).unwrap_err(),
            Error::DimensionTooLarge { dim: 9, cap: 8 }
        );
        assert!(left_regular_with_cap(&c, 9).is_ok());
        assert!(norm(&c).is_err());
    }

    #[test]
    fn norm_examples() {
        assert!((norm(&mv(2, &[(1, 1.0, 0.0)])).unwrap() - 1.0).abs() < 1e-12);
        let p = mv(2, &[(0, 1.0, 0.0), (1, 1.0, 0.0)]);
        assert!((norm(&p).unwrap() - 2.0).abs() < 1e-12);
        // (1 + e1)/2 is a selfadjoint idempotent
        let half = p.scale_real(0.5);
        assert!((&half * &half).approx_eq(&half, 1e-15));
        assert_eq!(half.star(), half);
        let lam = mv(3, &[(0, 3.0, -4.0)]);
        assert!((norm(&lam).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_examples() {
        assert!(is_positive(&mv(2, &[(0, 1.0, 0.0)]), 1e-12).unwrap());
        assert!(!is_positive(&mv(2, &[(0, -1.0, 0.0)]), 1e-12).unwrap());
        assert!(!is_positive(&mv(2, &[(1, 1.0, 0.0)]), 1e-12).unwrap());
        // i·1 is normal but not Hermitian
        assert!(!is_positive(&mv(2, &[(0, 0.0, 1.0)]), 1e-12).unwrap());
        let c = mv(
            3,
            &[
                (0, 0.1, 0.2),
                (1, -0.4, 0.0),
                (0b011, 0.3, -0.7),
                (0b111, 0.0, 0.5),
            ],
        );
        let cc = &c.star() * &c;
        assert!(is_positive(&cc, 1e-10).unwrap());
        // Gram-matrix oracle: L(c)^H L(c) is PSD by construction
        let l = left_regular(&c).unwrap();
        let gram = l.adjoint().product(&l);
        assert!(gram.max_abs_diff(&left_regular(&cc).unwrap()) < 1e-12);
    }

    #[test]
    fn star_maps_to_adjoint() {
        let c = mv(3, &[(0, 0.1, 0.2), (0b101, -0.4, 1.0), (0b111, 0.3, -0.7)]);
        let l = left_regular(&c).unwrap();
        assert!(left_regular(&c.star()).unwrap().max_abs_diff(&l.adjoint()) < 1e-15);
    }
}
