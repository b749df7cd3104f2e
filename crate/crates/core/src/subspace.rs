//! Subspaces of `R^n` stored by orthonormal bases.
//!
//! Every subspace here is finite-dimensional and therefore closed. The
//! lattice operations (sum, intersection, orthocomplement) are exact up to
//! the Gram–Schmidt pivot threshold.

use crate::error::{Error, Result};
use crate::multivector::RealVector;
use crate::tol::{EPS_EQ, EPS_RANK};

#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<RealVector>,
}

/// Orthonormalizes `candidates` against `existing` (assumed orthonormal)
/// and against each other by modified Gram–Schmidt with pivoting: at each
/// step the candidate with the largest residual is accepted, unless that
/// residual is at most `eps_rank`. Two projection passes are applied to
/// every accepted vector.
fn orthonormal_extend(
    existing: &[RealVector],
    candidates: &[RealVector],
    eps_rank: f64,
) -> Vec<RealVector> {
    let mut residuals: Vec<RealVector> = candidates.to_vec();
    for r in residuals.iter_mut() {
        for _ in 0..2 {
            for q in existing {
                let d = q.dot(r);
                r.axpy(-d, q);
            }
        }
    }
    let mut accepted: Vec<RealVector> = Vec::new();
    let mut alive: Vec<bool> = vec![true; residuals.len()];
    loop {
        let pivot = residuals
            .iter()
            .enumerate()
            .filter(|(i, _)| alive[*i])
            .map(|(i, r)| (i, r.norm()))
            .fold(None, |best: Option<(usize, f64)>, (i, n)| match best {
                Some((_, bn)) if bn >= n => best,
                _ => Some((i, n)),
            });
        let Some((p, pn)) = pivot else { break };
        if pn <= eps_rank {
            break;
        }
        alive[p] = false;
        let mut q = residuals[p].scaled(1.0 / pn);
        // second pass against everything already accepted
        for b in existing.iter().chain(&accepted) {
            let d = b.dot(&q);
            q.axpy(-d, b);
        }
        let qn = q.norm();
        q = q.scaled(1.0 / qn);
        for (i, r) in residuals.iter_mut().enumerate() {
            if alive[i] {
                let d = q.dot(r);
                r.axpy(-d, &q);
            }
        }
        accepted.push(q);
    }
    accepted
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    /// All of `R^n`, with the generator basis.
    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: (0..ambient).map(|i| RealVector::unit(ambient, i)).collect(),
        }
    }

    /// Orthonormal basis of the span of `vectors`; vectors whose residual
    /// falls to `eps_rank` or below are dropped.
    pub fn from_spanning(ambient: usize, vectors: &[RealVector], eps_rank: f64) -> Result<Self> {
        for v in vectors {
            Error::check_dims(ambient, v.dim())?;
        }
        Ok(Self {
            ambient,
            basis: orthonormal_extend(&[], vectors, eps_rank),
        })
    }

    /// Span of the given 1-based generators.
    pub fn coordinate(ambient: usize, generators: &[usize]) -> Result<Self> {
        let vs: Vec<_> = generators
            .iter()
            .map(|&i| {
                if i == 0 || i > ambient {
                    Err(Error::DimensionMismatch {
                        left: ambient,
                        right: i,
                    })
                } else {
                    Ok(RealVector::unit(ambient, i - 1))
                }
            })
            .collect::<Result<_>>()?;
        Self::from_spanning(ambient, &vs, EPS_RANK)
    }

    /// Wraps a basis that the caller guarantees to be orthonormal.
    pub(crate) fn from_orthonormal_unchecked(ambient: usize, basis: Vec<RealVector>) -> Self {
        Self { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RealVector] {
        &self.basis
    }

    /// Largest deviation of the basis Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.dot(b) - target).abs());
            }
        }
        worst
    }

    pub fn orthocomplement(&self) -> Self {
        let axes: Vec<_> = (0..self.ambient)
            .map(|i| RealVector::unit(self.ambient, i))
            .collect();
        Self {
            ambient: self.ambient,
            basis: orthonormal_extend(&self.basis, &axes, EPS_RANK),
        }
    }

    /// Orthogonal projection `Σ ⟨bᵢ, v⟩ bᵢ`.
    pub fn project(&self, v: &RealVector) -> Result<RealVector> {
        Error::check_dims(self.ambient, v.dim())?;
        let mut out = RealVector::zeros(self.ambient);
        for b in &self.basis {
            out.axpy(b.dot(v), b);
        }
        Ok(out)
    }

    /// The image of `other` under the orthogonal projection onto `self`.
    pub fn project_subspace(&self, other: &Self) -> Result<Self> {
        Error::check_dims(self.ambient, other.ambient)?;
        let images = other
            .basis
            .iter()
            .map(|b| self.project(b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_spanning(self.ambient, &images, EPS_RANK)
    }

    /// Sum of subspaces; the empty family gives `{0}`.
    pub fn sum(ambient: usize, family: &[Subspace]) -> Result<Self> {
        let mut all = Vec::new();
        for z in family {
            Error::check_dims(ambient, z.ambient)?;
            all.extend(z.basis.iter().cloned());
        }
        Self::from_spanning(ambient, &all, EPS_RANK)
    }

    /// Intersection computed as `(Σ Z_λ⊥)⊥`; the empty family gives `R^n`.
    pub fn intersect(ambient: usize, family: &[Subspace]) -> Result<Self> {
        let complements: Vec<_> = family.iter().map(Subspace::orthocomplement).collect();
        Ok(Self::sum(ambient, &complements)?.orthocomplement())
    }

    /// Dense row-major `n × n` orthogonal projector onto the subspace.
    pub fn projector(&self) -> Vec<f64> {
        let n = self.ambient;
        let mut p = vec![0.0; n * n];
        for b in &self.basis {
            let c = b.components();
            for i in 0..n {
                for j in 0..n {
                    p[i * n + j] += c[i] * c[j];
                }
            }
        }
        p
    }

    /// Largest entry of `P_self - P_other`.
    pub fn projector_distance(&self, other: &Self) -> Result<f64> {
        Error::check_dims(self.ambient, other.ambient)?;
        Ok(self
            .projector()
            .iter()
            .zip(other.projector())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Largest entry of `P_self P_other - P_other`; zero iff `other ⊆ self`.
    pub fn containment_defect(&self, other: &Self) -> Result<f64> {
        Error::check_dims(self.ambient, other.ambient)?;
        let n = self.ambient;
        let pa = self.projector();
        let pb = other.projector();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let prod: f64 = (0..n).map(|k| pa[i * n + k] * pb[k * n + j]).sum();
                worst = worst.max((prod - pb[i * n + j]).abs());
            }
        }
        Ok(worst)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.projector_distance(other)? <= EPS_EQ)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        Ok(self.containment_defect(other)? <= EPS_EQ)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> RealVector {
        RealVector::new(xs.to_vec())
    }

    fn span(n: usize, vs: &[&[f64]]) -> Subspace {
        let vs: Vec<_> = vs.iter().map(|x| v(x)).collect();
        Subspace::from_spanning(n, &vs, EPS_RANK).unwrap()
    }

    #[test]
    fn orthonormal_input_is_kept() {
        let z = span(2, &[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(z.basis(), &[v(&[1.0, 0.0]), v(&[0.0, 1.0])]);
    }

    #[test]
    fn dependent_vectors_collapse() {
        let z = span(3, &[&[1.0, 1.0, 0.0], &[2.0, 2.0, 0.0]]);
        assert_eq!(z.dim(), 1);
        let s = 1.0 / 2f64.sqrt();
        let b = &z.basis()[0];
        // pivot picks the longer vector, sign follows it
        assert!(b.max_abs_diff(&v(&[s, s, 0.0])) < 1e-15);
    }

    #[test]
    fn empty_and_zero_inputs() {
        assert_eq!(span(3, &[]).dim(), 0);
        assert_eq!(span(3, &[&[0.0, 0.0, 0.0]]).dim(), 0);
        assert!(Subspace::from_spanning(3, &[v(&[1.0])], EPS_RANK).is_err());
    }

    #[test]
    fn orthocomplement_examples() {
        let z = span(2, &[&[1.0, 0.0]]);
        assert!(z
            .orthocomplement()
            .equals(&span(2, &[&[0.0, 1.0]]))
            .unwrap());
        assert!(Subspace::zero(4)
            .orthocomplement()
            .equals(&Subspace::full(4))
            .unwrap());
        let d = span(2, &[&[1.0, 1.0]]);
        assert!(d
            .orthocomplement()
            .equals(&span(2, &[&[1.0, -1.0]]))
            .unwrap());
        assert_eq!(Subspace::full(3).orthocomplement().dim(), 0);
    }

    #[test]
    fn projection_examples() {
        let z = span(2, &[&[1.0, 0.0]]);
        assert_eq!(z.project(&v(&[3.0, 4.0])).unwrap(), v(&[3.0, 0.0]));
        let plane = span(3, &[&[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0]]);
        assert!(plane
            .project_subspace(&plane)
            .unwrap()
            .equals(&plane)
            .unwrap());
        let xy = Subspace::coordinate(3, &[1, 2]).unwrap();
        let m = span(3, &[&[1.0, 0.0, 1.0]]);
        assert!(xy
            .project_subspace(&m)
            .unwrap()
            .equals(&Subspace::coordinate(3, &[1]).unwrap())
            .unwrap());
    }

    #[test]
    fn lattice_examples() {
        let a = Subspace::coordinate(3, &[1, 2]).unwrap();
        let b = Subspace::coordinate(3, &[2, 3]).unwrap();
        let i = Subspace::intersect(3, &[a, b]).unwrap();
        assert!(i.equals(&Subspace::coordinate(3, &[2]).unwrap()).unwrap());
        let s = Subspace::sum(
            3,
            &[
                Subspace::coordinate(3, &[1]).unwrap(),
                Subspace::coordinate(3, &[2]).unwrap(),
            ],
        )
        .unwrap();
        assert!(s
            .equals(&Subspace::coordinate(3, &[1, 2]).unwrap())
            .unwrap());
        assert_eq!(Subspace::intersect(3, &[]).unwrap().dim(), 3);
        assert_eq!(Subspace::sum(3, &[]).unwrap().dim(), 0);
    }

    #[test]
    fn comparisons() {
        assert!(span(2, &[&[1.0, 1.0]])
            .equals(&span(2, &[&[2.0, 2.0]]))
            .unwrap());
        assert!(Subspace::full(2)
            .contains(&span(2, &[&[1.0, 0.0]]))
            .unwrap());
        assert!(!span(2, &[&[1.0, 0.0]])
            .contains(&Subspace::full(2))
            .unwrap());
        assert!(!span(2, &[&[1.0, 0.0]])
            .equals(&span(2, &[&[0.0, 1.0]]))
            .unwrap());
        assert!(Subspace::full(2).equals(&Subspace::full(3)).is_err());
    }
}
