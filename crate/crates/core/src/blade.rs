//! Basis blades `e_{i1}···e_{ik}` of `C(R^n)` encoded as bitmasks.
//!
//! Bit `i - 1` of the mask stands for the generator `e_i`, so `e1e3` is
//! `0b101` and the empty mask is the unit `1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::tol::MAX_ALGEBRA_DIM;

/// Sign produced when two blades are multiplied and brought back into
/// increasing index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A basis blade together with the ambient dimension it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex {
    mask: u32,
    dim: usize,
}

impl BladeIndex {
    pub fn new(mask: u32, dim: usize) -> Result<Self> {
        if dim > MAX_ALGEBRA_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                cap: MAX_ALGEBRA_DIM,
            });
        }
        if !mask_fits(mask, dim) {
            return Err(Error::InvalidBlade { mask, dim });
        }
        Ok(Self { mask, dim })
    }

    /// The unit blade `1`.
    pub fn unit(dim: usize) -> Result<Self> {
        Self::new(0, dim)
    }

    /// Builds a blade from 1-based generator indices, which must be
    /// strictly increasing.
    pub fn from_indices(indices: &[usize], dim: usize) -> Result<Self> {
        let mut mask = 0u32;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > dim || i <= last {
                return Err(Error::InvalidBlade {
                    mask: mask | 1u32.checked_shl(i.wrapping_sub(1) as u32).unwrap_or(0),
                    dim,
                });
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        Self::new(mask, dim)
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn dim(self) -> usize {
        self.dim
    }

    pub fn grade(self) -> u32 {
        self.mask.count_ones()
    }

    /// 1-based generator indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        mask_indices(self.mask)
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for i in self.indices() {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "e{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// Product of two basis blades: `e_A e_B = sign · e_{A xor B}`.
pub fn blade_product(a: BladeIndex, b: BladeIndex) -> Result<(BladeIndex, Sign)> {
    Error::check_dims(a.dim, b.dim)?;
    let sign = reorder_sign(a.mask, b.mask);
    Ok((
        BladeIndex {
            mask: a.mask ^ b.mask,
            dim: a.dim,
        },
        sign,
    ))
}

/// Sign of `e_A e_B` relative to `e_{A xor B}`.
///
/// Every generator `j` of `B` has to travel left past each generator of
/// `A` with a larger index; the parity of that count is the sign.
/// Contractions `e_i e_i = 1` contribute no sign.
#[inline]
pub(crate) fn reorder_sign(a: u32, b: u32) -> Sign {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    Sign::from_parity(swaps & 1 == 1)
}

pub(crate) fn mask_fits(mask: u32, dim: usize) -> bool {
    dim >= 32 || mask >> dim == 0
}

pub(crate) fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|bit| mask & (1 << bit) != 0)
        .map(|bit| bit + 1)
        .collect()
}
