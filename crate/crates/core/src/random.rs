//! Seeded random instances: Gaussian subspaces and normalized complex
//! Gaussian multivectors.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::expectation::SubalgebraBasis;
use crate::multivector::{Multivector, RealVector};
use crate::subspace::Subspace;
use crate::tol::EPS_RANK;

/// Generator for trial `trial` of a run seeded with `seed`. Distinct
/// `(stream, trial)` pairs give independent sequences.
pub fn trial_rng(seed: u64, stream: u32, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << 32) | trial as u64);
    rng
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RealVector {
    RealVector::new((0..n).map(|_| rng.sample(StandardNormal)).collect())
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RealVector {
    loop {
        let v = gaussian_vector(rng, n);
        let norm = v.norm();
        if norm > 1e-6 {
            return v.scaled(1.0 / norm);
        }
    }
}

/// Orthonormalized span of `k` Gaussian vectors (dimension `k` almost surely).
pub fn subspace<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Subspace {
    loop {
        let vs: Vec<_> = (0..k).map(|_| gaussian_vector(rng, n)).collect();
        let z = Subspace::from_spanning(n, &vs, EPS_RANK).expect("vectors have length n");
        if z.dim() == k {
            return z;
        }
    }
}

/// A random subspace of `z` of dimension `k ≤ dim z`.
pub fn subspace_within<R: Rng + ?Sized>(rng: &mut R, z: &Subspace, k: usize) -> Subspace {
    let n = z.ambient_dim();
    loop {
        let vs: Vec<RealVector> = (0..k)
            .map(|_| {
                let mut v = RealVector::zeros(n);
                for b in z.basis() {
                    v.axpy(rng.sample(StandardNormal), b);
                }
                v
            })
            .collect();
        let s = Subspace::from_spanning(n, &vs, EPS_RANK).expect("vectors have length n");
        if s.dim() == k {
            return s;
        }
    }
}

/// `z` with its basis replaced by a random orthonormal basis of the same span.
pub fn rotate_basis<R: Rng + ?Sized>(rng: &mut R, z: &Subspace) -> Subspace {
    subspace_within(rng, z, z.dim())
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Independent complex Gaussian coefficients on every blade, normalized to
/// unit coefficient norm.
pub fn multivector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Multivector {
    let dense: Vec<_> = (0..1usize << n).map(|_| complex_gaussian(rng)).collect();
    Multivector::from_dense(n, &dense)
        .expect("dimension within cap")
        .normalized()
}

/// A normalized random element of the span of `basis`.
pub fn element_of<R: Rng + ?Sized>(rng: &mut R, basis: &SubalgebraBasis) -> Multivector {
    let weights: Vec<_> = (0..basis.len()).map(|_| complex_gaussian(rng)).collect();
    basis.combine(&weights).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = trial_rng(7, 0, 3).sample(StandardNormal);
        let b: f64 = trial_rng(7, 0, 3).sample(StandardNormal);
        let c: f64 = trial_rng(7, 0, 4).sample(StandardNormal);
        let d: f64 = trial_rng(7, 1, 3).sample(StandardNormal);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn random_subspaces_have_requested_dimension() {
        let mut rng = trial_rng(1, 0, 0);
        for k in 0..=5 {
            let z = subspace(&mut rng, 5, k);
            assert_eq!(z.dim(), k);
            assert!(z.orthonormality_defect() < 1e-12);
            let r = rotate_basis(&mut rng, &z);
            assert!(r.equals(&z).unwrap());
        }
    }

    #[test]
    fn multivectors_are_normalized() {
        let mut rng = trial_rng(2, 0, 0);
        let m = multivector(&mut rng, 4);
        assert!((m.coeff_norm() - 1.0).abs() < 1e-12);
        assert_eq!(m.nnz(), 16);
    }
}
