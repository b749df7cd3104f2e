use nalgebra::DMatrix;
use num_complex::Complex64;

use super::span::{Row, RowSpace};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::subspace::Subspace;
use crate::tol::{DEFAULT_REP_CAP, EPS_RANK};

/// A linearly independent list of multivectors spanning a subspace of
/// `C(R^n)`, together with its coefficient matrix (one row per element,
/// one column per blade mask).
#[derive(Debug, Clone)]
pub struct SubalgebraBasis {
    ambient: usize,
    elements: Vec<Multivector>,
    coeffs: DMatrix<Complex64>,
}

fn check_cap(ambient: usize) -> Result<()> {
    if ambient > DEFAULT_REP_CAP {
        Err(Error::DimensionTooLarge {
            dim: ambient,
            cap: DEFAULT_REP_CAP,
        })
    } else {
        Ok(())
    }
}

impl SubalgebraBasis {
    /// Fails with [`Error::LinearlyDependent`] when the numerical rank of
    /// the elements (at `EPS_RANK`, rows normalized) is below their count.
    pub fn new(ambient: usize, elements: Vec<Multivector>) -> Result<Self> {
        check_cap(ambient)?;
        for e in &elements {
            Error::check_dims(ambient, e.dim())?;
        }
        let rows: Vec<Row> = elements.iter().map(Multivector::to_dense).collect();
        let rank = RowSpace::span(1 << ambient, &rows, EPS_RANK).dim();
        if rank < elements.len() {
            return Err(Error::LinearlyDependent {
                rank,
                count: elements.len(),
            });
        }
        Ok(Self::from_rows_unchecked(ambient, elements, &rows))
    }

    fn from_rows_unchecked(ambient: usize, elements: Vec<Multivector>, rows: &[Row]) -> Self {
        let width = 1usize << ambient;
        let coeffs = DMatrix::from_fn(rows.len(), width, |i, j| rows[i][j]);
        Self {
            ambient,
            elements,
            coeffs,
        }
    }

    fn from_row_space(ambient: usize, space: RowSpace) -> Self {
        let rows = space.into_rows();
        let elements = rows
            .iter()
            .map(|r| Multivector::from_dense(ambient, r).expect("row length is 2^n"))
            .collect();
        Self::from_rows_unchecked(ambient, elements, &rows)
    }

    /// All of `C(R^n)` with the blade basis.
    pub fn full(ambient: usize) -> Result<Self> {
        check_cap(ambient)?;
        Ok(Self::from_row_space(ambient, RowSpace::full(1 << ambient)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Multivector] {
        &self.elements
    }

    pub fn coeff_matrix(&self) -> &DMatrix<Complex64> {
        &self.coeffs
    }

    /// `Σ weights[i] · elements[i]`; missing weights count as zero.
    pub fn combine(&self, weights: &[Complex64]) -> Multivector {
        let mut dense = vec![Complex64::new(0.0, 0.0); 1 << self.ambient];
        for (i, w) in weights.iter().enumerate().take(self.len()) {
            for (j, d) in dense.iter_mut().enumerate() {
                *d += w * self.coeffs[(i, j)];
            }
        }
        Multivector::from_dense(self.ambient, &dense).expect("dense length is 2^n")
    }

    fn row_space(&self) -> RowSpace {
        let rows: Vec<Row> = (0..self.len())
            .map(|i| self.coeffs.row(i).iter().copied().collect())
            .collect();
        RowSpace::span(1 << self.ambient, &rows, EPS_RANK)
    }

    /// A basis of the same span in reduced row-echelon form, pruned at
    /// `eps`. Coordinate-aligned spans come out as plain blades.
    pub fn echelon(&self, eps: f64) -> Vec<Multivector> {
        let mut m = self.coeffs.clone();
        let (rows, cols) = m.shape();
        let mut r = 0;
        for col in 0..cols {
            if r == rows {
                break;
            }
            let (p, best) = (r..rows)
                .map(|i| (i, m[(i, col)].norm()))
                .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= eps {
                continue;
            }
            m.swap_rows(r, p);
            let pivot = m[(r, col)];
            for j in 0..cols {
                m[(r, j)] /= pivot;
            }
            for i in 0..rows {
                if i != r {
                    let f = m[(i, col)];
                    if f != Complex64::new(0.0, 0.0) {
                        for j in 0..cols {
                            let v = m[(r, j)];
                            m[(i, j)] -= f * v;
                        }
                    }
                }
            }
            r += 1;
        }
        (0..r)
            .map(|i| {
                let row: Vec<Complex64> = m.row(i).iter().copied().collect();
                Multivector::from_dense(self.ambient, &row)
                    .expect("row length is 2^n")
                    .pruned(eps)
            })
            .collect()
    }
}

/// The subalgebra `C(Z)`: the `2^k` ordered products of subsets of the
/// stored orthonormal basis of `Z`.
pub fn generated_subalgebra(z: &Subspace) -> Result<SubalgebraBasis> {
    let n = z.ambient_dim();
    check_cap(n)?;
    let gens = z
        .basis()
        .iter()
        .map(Multivector::from_vector)
        .collect::<Result<Vec<_>>>()?;
    let k = gens.len();
    let one = Multivector::one(n)?;
    let elements: Vec<Multivector> = (0u32..1 << k)
        .map(|subset| {
            gens.iter()
                .enumerate()
                .filter(|(i, _)| subset & (1 << i) != 0)
                .fold(one.clone(), |acc, (_, g)| &acc * g)
        })
        .collect();
    SubalgebraBasis::new(n, elements)
}

/// Matrix, in blade coordinates, of `a ↦ z·a − γ(a)·z` for a real vector `z`.
fn twisted_commutator_matrix(z: &Multivector) -> DMatrix<f64> {
    let n = z.dim();
    let width = 1usize << n;
    let mut m = DMatrix::<f64>::zeros(width, width);
    for j in 0..width {
        let e = Multivector::blade(n, j as u32).expect("mask < 2^n");
        let image = &(z * &e) - &(&e.gamma() * z);
        for (mask, c) in image.raw_terms() {
            m[(mask as usize, j)] = c.re;
        }
    }
    m
}

/// Basis of `C(Z)' = { a : z·a = γ(a)·z for all z ∈ Z }`.
///
/// The constraints are real in blade coordinates. The kernel is narrowed
/// one basis vector of `Z` at a time: with `K` an orthonormal basis of the
/// current kernel, the right singular vectors of `A_z K` whose singular
/// values fall below the rank threshold give the next `K`. The returned
/// elements are orthonormal in coefficient space.
pub fn supercommutant(z: &Subspace) -> Result<SubalgebraBasis> {
    let n = z.ambient_dim();
    check_cap(n)?;
    let width = 1usize << n;
    let mut kernel = DMatrix::<f64>::identity(width, width);
    for u in z.basis() {
        if kernel.ncols() == 0 {
            break;
        }
        let constraint = twisted_commutator_matrix(&Multivector::from_vector(u)?) * &kernel;
        let svd = constraint.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let scale = svd.singular_values.max().max(1.0);
        let null: Vec<usize> = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|(_, s)| **s <= EPS_RANK * scale)
            .map(|(i, _)| i)
            .collect();
        // rows of V^T beyond the singular value count are never produced here
        // because the constraint matrix has at least as many rows as columns
        let mut next = DMatrix::<f64>::zeros(kernel.ncols(), null.len());
        for (c, &i) in null.iter().enumerate() {
            next.set_column(c, &v_t.row(i).transpose());
        }
        kernel = &kernel * next;
    }
    let rows: Vec<Row> = (0..kernel.ncols())
        .map(|j| {
            kernel
                .column(j)
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect()
        })
        .collect();
    let elements = rows
        .iter()
        .map(|r| Multivector::from_dense(n, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubalgebraBasis::from_rows_unchecked(n, elements, &rows))
}

/// Largest relative residual of an element of `inner` off the span of `outer`.
pub fn span_residual(outer: &SubalgebraBasis, inner: &SubalgebraBasis) -> Result<f64> {
    Error::check_dims(outer.ambient, inner.ambient)?;
    let space = outer.row_space();
    Ok((0..inner.len())
        .map(|i| {
            let row: Vec<Complex64> = inner.coeffs.row(i).iter().copied().collect();
            space.relative_residual(&row)
        })
        .fold(0.0, f64::max))
}

/// Whether `span(inner) ⊆ span(outer)` at the rank threshold.
pub fn span_contains(outer: &SubalgebraBasis, inner: &SubalgebraBasis) -> Result<bool> {
    Ok(span_residual(outer, inner)? <= EPS_RANK)
}

pub fn span_equal(a: &SubalgebraBasis, b: &SubalgebraBasis) -> Result<bool> {
    Ok(a.len() == b.len() && span_contains(a, b)? && span_contains(b, a)?)
}

/// Intersection of spans in coefficient space, as the complement of the sum
/// of complements. The empty family yields all of `C(R^n)`.
pub fn span_intersection(ambient: usize, family: &[SubalgebraBasis]) -> Result<SubalgebraBasis> {
    check_cap(ambient)?;
    for s in family {
        Error::check_dims(ambient, s.ambient)?;
    }
    let spaces: Vec<RowSpace> = family.iter().map(SubalgebraBasis::row_space).collect();
    let meet = RowSpace::intersect(1 << ambient, &spaces, EPS_RANK);
    Ok(SubalgebraBasis::from_row_space(ambient, meet))
}
