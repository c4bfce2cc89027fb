use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Truncation dimension below the minimum of 4.
    DimTooSmall { dim: usize },
    /// Interior dimension outside `2..=dim`.
    BadInteriorDim { interior_dim: usize, dim: usize },
    /// Tail tolerance must be strictly positive.
    BadTailTol { tail_tol: f64 },
    /// Two values built over different `FockSpace`s were combined.
    SpaceMismatch,
    /// A matrix or vector contains NaN or infinite entries.
    NonFinite { context: String },
    /// Scaling-and-squaring would need more halvings than the configured bound.
    ScalingOverflow { exponent: u32, bound: u32 },
    /// Input to `exp_i_hermitian` is not hermitian within tolerance.
    NotHermitian { residual: f64 },
    /// `|z|` beyond the safe radius for `m >= 3` without an explicit override.
    RadiusExceeded { m: u32, abs_z: f64, safe_radius: f64 },
    /// Probability mass above the interior levels exceeds the space tolerance.
    TailMass { mass: f64, tail_tol: f64 },
    /// Truncation shaved more norm off a constructed state than `tail_tol`.
    ConvergenceFailure { norm_deficit: f64, tail_tol: f64 },
    /// The phase convention `<0|z_m>` real nonnegative cannot be applied.
    Unphasable,
    /// `<0|z_m> -> -1` would zero the `N_-` normalization constant.
    DegenerateNormalization,
    /// Basis index not inside the interior levels.
    IndexOutsideInterior { n: usize, interior_dim: usize },
    /// Convergence diagnostic needs at least two strictly increasing dims.
    BadDimSequence,
    /// Check-id filter named a check that is not registered.
    UnknownCheck { id: String },
    /// A parameter grid or sweep range produced no points.
    EmptyGrid,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimTooSmall { dim } => {
                write!(f, "truncation dimension {dim} is below the minimum of 4")
            }
            Error::BadInteriorDim { interior_dim, dim } => {
                write!(f, "interior dimension {interior_dim} outside 2..={dim}")
            }
            Error::BadTailTol { tail_tol } => {
                write!(f, "tail tolerance {tail_tol} must be strictly positive")
            }
            Error::SpaceMismatch => write!(f, "operands belong to different Fock spaces"),
            Error::NonFinite { context } => write!(f, "non-finite entries in {context}"),
            Error::ScalingOverflow { exponent, bound } => write!(
                f,
                "matrix exponential would need 2^{exponent} scaling, bound is 2^{bound}"
            ),
            Error::NotHermitian { residual } => {
                write!(f, "input is not hermitian (edge residual {residual:.3e})")
            }
            Error::RadiusExceeded { m, abs_z, safe_radius } => write!(
                f,
                "|z| = {abs_z} exceeds safe radius {safe_radius} for m = {m}; \
                 run a convergence diagnostic or use the explicit override"
            ),
            Error::TailMass { mass, tail_tol } => write!(
                f,
                "probability mass {mass:.3e} above interior levels exceeds tail tolerance {tail_tol:.3e}"
            ),
            Error::ConvergenceFailure { norm_deficit, tail_tol } => write!(
                f,
                "truncation shaved {norm_deficit:.3e} of squared norm, above tail tolerance {tail_tol:.3e}"
            ),
            Error::Unphasable => {
                write!(f, "vacuum overlap vanishes; phase convention inapplicable")
            }
            Error::DegenerateNormalization => {
                write!(f, "vacuum overlap is -1; N_- normalization degenerates")
            }
            Error::IndexOutsideInterior { n, interior_dim } => {
                write!(f, "basis index {n} not below interior dimension {interior_dim}")
            }
            Error::BadDimSequence => {
                write!(f, "need at least two strictly increasing dimensions")
            }
            Error::UnknownCheck { id } => write!(f, "unknown check id: {id}"),
            Error::EmptyGrid => write!(f, "parameter grid is empty"),
        }
    }
}
