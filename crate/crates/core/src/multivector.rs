//! Sparse elements of the complex Clifford algebra `C(R^n)`.

use std::collections::BTreeMap;
use std::ops;

use num_complex::Complex64;

use crate::blade::{mask_fits, reorder_sign, BladeIndex, Sign};
use crate::error::{Error, Result};
use crate::tol::MAX_ALGEBRA_DIM;

/// A vector of `R^n` in the fixed orthonormal generator basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(components: Vec<f64>) -> Self {
        Self(components)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    /// The `i`-th generator direction (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn into_components(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|x| x * factor).collect())
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: f64, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += factor * b;
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl From<Vec<f64>> for RealVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// An element of `C(R^n)`: a finite complex combination of basis blades.
///
/// Coefficients that are exactly zero are never stored. Values are
/// immutable; every operation returns a fresh multivector.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: BTreeMap<u32, Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_ALGEBRA_DIM {
        Err(Error::DimensionTooLarge {
            dim,
            cap: MAX_ALGEBRA_DIM,
        })
    } else {
        Ok(())
    }
}

impl Multivector {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn one(dim: usize) -> Result<Self> {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(dim: usize, value: Complex64) -> Result<Self> {
        Self::from_terms(dim, [(0, value)])
    }

    /// The basis blade with the given mask, coefficient one.
    pub fn blade(dim: usize, mask: u32) -> Result<Self> {
        Self::from_terms(dim, [(mask, Complex64::new(1.0, 0.0))])
    }

    /// The generator `e_i` (1-based).
    pub fn generator(dim: usize, i: usize) -> Result<Self> {
        let b = BladeIndex::from_indices(&[i], dim)?;
        Self::blade(dim, b.mask())
    }

    /// Sums the given `(mask, coefficient)` terms; repeated masks accumulate.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, Complex64)>,
    {
        check_dim(dim)?;
        let mut coeffs = BTreeMap::new();
        for (mask, c) in terms {
            if !mask_fits(mask, dim) {
                return Err(Error::InvalidBlade { mask, dim });
            }
            *coeffs.entry(mask).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self::canonical(dim, coeffs))
    }

    /// Dense coefficients indexed by mask, length `2^dim`.
    pub fn from_dense(dim: usize, dense: &[Complex64]) -> Result<Self> {
        check_dim(dim)?;
        Error::check_dims(1 << dim, dense.len())?;
        let coeffs = dense
            .iter()
            .enumerate()
            .map(|(mask, c)| (mask as u32, *c))
            .collect();
        Ok(Self::canonical(dim, coeffs))
    }

    /// `Σ vᵢ eᵢ`, the image of `v` under `V ⊂ C(V)`.
    pub fn from_vector(v: &RealVector) -> Result<Self> {
        let dim = v.dim();
        Self::from_terms(
            dim,
            v.components()
                .iter()
                .enumerate()
                .map(|(i, &x)| (1u32 << i, Complex64::new(x, 0.0))),
        )
    }

    fn canonical(dim: usize, mut coeffs: BTreeMap<u32, Complex64>) -> Self {
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Self { dim, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored (nonzero) coefficients.
    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, mask: u32) -> Complex64 {
        self.coeffs
            .get(&mask)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Stored terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeIndex, Complex64)> + '_ {
        let dim = self.dim;
        self.coeffs
            .iter()
            .map(move |(&mask, &c)| (BladeIndex::new(mask, dim).expect("valid mask"), c))
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << self.dim];
        for (&m, &c) in &self.coeffs {
            out[m as usize] = c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1.0)
    }

    fn combine(&self, other: &Self, factor: f64) -> Result<Self> {
        Error::check_dims(self.dim, other.dim)?;
        let mut coeffs = self.coeffs.clone();
        for (&m, &c) in &other.coeffs {
            *coeffs.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c * factor;
        }
        Ok(Self::canonical(self.dim, coeffs))
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|(&m, &c)| (m, c * lambda)).collect();
        Self::canonical(self.dim, coeffs)
    }

    pub fn scale_real(&self, lambda: f64) -> Self {
        self.scale(Complex64::new(lambda, 0.0))
    }

    /// The Clifford product, the bilinear extension of [`crate::blade_product`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Error::check_dims(self.dim, other.dim)?;
        let mut coeffs: BTreeMap<u32, Complex64> = BTreeMap::new();
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                let term = match reorder_sign(a, b) {
                    Sign::Plus => ca * cb,
                    Sign::Minus => -(ca * cb),
                };
                *coeffs.entry(a ^ b).or_insert(Complex64::new(0.0, 0.0)) += term;
            }
        }
        Ok(Self::canonical(self.dim, coeffs))
    }

    /// The grading automorphism: `-1` on odd blades, `+1` on even ones.
    pub fn gamma(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&m, &c)| (m, if m.count_ones() % 2 == 1 { -c } else { c }))
            .collect();
        Self::canonical(self.dim, coeffs)
    }

    /// The involution: conjugate coefficients and reverse blades, which
    /// contributes `(-1)^{k(k-1)/2}` on grade `k`.
    pub fn star(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&m, &c)| {
                let k = m.count_ones();
                let c = c.conj();
                (
                    m,
                    if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                        -c
                    } else {
                        c
                    },
                )
            })
            .collect();
        Self::canonical(self.dim, coeffs)
    }

    /// `(even part, odd part)` under [`Multivector::gamma`].
    pub fn even_odd_split(&self) -> (Self, Self) {
        let (even, odd): (BTreeMap<_, _>, BTreeMap<_, _>) = self
            .coeffs
            .iter()
            .map(|(&m, &c)| (m, c))
            .partition(|(m, _)| m.count_ones() % 2 == 0);
        (
            Self {
                dim: self.dim,
                coeffs: even,
            },
            Self {
                dim: self.dim,
                coeffs: odd,
            },
        )
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Rescales to unit coefficient norm; zero stays zero.
    pub fn normalized(&self) -> Self {
        let n = self.coeff_norm();
        if n == 0.0 {
            self.clone()
        } else {
            self.scale_real(1.0 / n)
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Coefficientwise comparison within `eps`; false on dimension mismatch.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= eps)
    }

    /// Drops coefficients whose magnitude is at most `eps`.
    pub fn pruned(&self, eps: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(_, c)| c.norm() > eps)
            .map(|(&m, &c)| (m, c))
            .collect();
        Self {
            dim: self.dim,
            coeffs,
        }
    }

    /// Union of the generators appearing in any stored blade.
    pub fn support_mask(&self) -> u32 {
        self.coeffs.keys().fold(0, |acc, m| acc | m)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $call:ident) => {
        /// Panics on dimension mismatch; use the inherent method for a `Result`.
        impl ops::$trait<&Multivector> for &Multivector {
            type Output = Multivector;

            fn $method(self, rhs: &Multivector) -> Multivector {
                Multivector::$call(self, rhs).expect("multivector dimensions must agree")
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl ops::Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale_real(-1.0)
    }
}
