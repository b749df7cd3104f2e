use super::expect_subspace;
use crate::error::{Error, Result};
use crate::multivector::{Multivector, RealVector};
use crate::subspace::Subspace;
use crate::tol::EPS_EQ;

/// Outcome of evaluating `E_N(c)` along an ascending chain `N₀ ⊆ N₁ ⊆ …`
/// inside `Z`.
#[derive(Debug, Clone)]
pub struct StabilizationReport {
    /// `E_N(c)` for each member of the chain.
    pub values: Vec<Multivector>,
    /// `X`, the orthogonal projection onto `Z` of the support space of `c`.
    pub projection: Subspace,
    /// `E_X(c)`, the value the net must settle on.
    pub limit: Multivector,
    /// Index of the first chain member containing `X`, if any.
    pub first_containing: Option<usize>,
    /// Largest `‖E_N(c) − E_X(c)‖_∞` over chain members containing `X`.
    pub max_residual: f64,
    pub stable: bool,
}

fn coordinate_support(c: &Multivector) -> Subspace {
    let n = c.dim();
    let mask = c.support_mask();
    let axes = (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| RealVector::unit(n, i))
        .collect();
    Subspace::from_orthonormal_unchecked(n, axes)
}

/// Evaluates the net `E_N(c)` along `chain`.
///
/// `support` is any subspace `M` with `c ∈ C(M)`; when absent the span of
/// the generators occurring in `c` is used. The chain must ascend and lie
/// inside `z`.
pub fn net_stabilization(
    c: &Multivector,
    z: &Subspace,
    chain: &[Subspace],
    support: Option<&Subspace>,
) -> Result<StabilizationReport> {
    let n = c.dim();
    Error::check_dims(n, z.ambient_dim())?;
    for (i, s) in chain.iter().enumerate() {
        Error::check_dims(n, s.ambient_dim())?;
        if i > 0 && !s.contains(&chain[i - 1])? {
            return Err(Error::ChainNotAscending { index: i });
        }
        if !z.contains(s)? {
            return Err(Error::ChainOutsideSubspace { index: i });
        }
    }
    let support = match support {
        Some(m) => {
            Error::check_dims(n, m.ambient_dim())?;
            m.clone()
        }
        None => coordinate_support(c),
    };
    let projection = z.project_subspace(&support)?;
    let limit = expect_subspace(&projection, c)?;
    let values = chain
        .iter()
        .map(|s| expect_subspace(s, c))
        .collect::<Result<Vec<_>>>()?;
    let mut first_containing = None;
    let mut max_residual: f64 = 0.0;
    for (i, (s, v)) in chain.iter().zip(&values).enumerate() {
        if s.contains(&projection)? {
            first_containing.get_or_insert(i);
            max_residual = max_residual.max(v.max_abs_diff(&limit)?);
        }
    }
    Ok(StabilizationReport {
        values,
        projection,
        limit,
        first_containing,
        max_residual,
        stable: max_residual <= EPS_EQ,
    })
}

/// True iff `E_N(c)` is constant along `chain` from the first member that
/// contains the projection onto `z` of the generator support of `c`.
pub fn verify_net_stabilization(c: &Multivector, z: &Subspace, chain: &[Subspace]) -> Result<bool> {
    Ok(net_stabilization(c, z, chain, None)?.stable)
}
