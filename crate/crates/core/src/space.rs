//! The truncation context shared by every construction.

use crate::error::Error;
use crate::Result;

pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// A truncated Fock space retaining levels `|0>..|dim-1>`.
///
/// `interior_dim` (K) marks the levels used for residual measurement: products
/// of truncated operators are corrupted near the top of the space, so identity
/// checks project onto `0..K` before taking norms. `tail_tol` bounds the
/// probability mass a state under test may carry above level K.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockSpace {
    pub dim: usize,
    pub interior_dim: usize,
    pub tail_tol: f64,
}

impl FockSpace {
    /// Space with defaults `interior_dim = dim/2`, `tail_tol = 1e-10`.
    pub fn new(dim: usize) -> Result<Self> {
        Self::with_options(dim, None, None)
    }

    pub fn with_options(
        dim: usize,
        interior_dim: Option<usize>,
        tail_tol: Option<f64>,
    ) -> Result<Self> {
        if dim < 4 {
            return Err(Error::DimTooSmall { dim });
        }
        let interior_dim = interior_dim.unwrap_or(dim / 2);
        if interior_dim < 2 || interior_dim > dim {
            return Err(Error::BadInteriorDim { interior_dim, dim });
        }
        let tail_tol = tail_tol.unwrap_or(DEFAULT_TAIL_TOL);
        if !(tail_tol > 0.0) {
            return Err(Error::BadTailTol { tail_tol });
        }
        Ok(FockSpace { dim, interior_dim, tail_tol })
    }
}

/// Synonym for [`FockSpace::with_options`] matching the operation vocabulary
/// used across the crate.
pub fn make_space(
    dim: usize,
    interior_dim: Option<usize>,
    tail_tol: Option<f64>,
) -> Result<FockSpace> {
    FockSpace::with_options(dim, interior_dim, tail_tol)
}
