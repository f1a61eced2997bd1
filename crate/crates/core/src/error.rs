use thiserror::Error;

/// Errors raised by the numerical kernels.
///
/// Indices carried in variants are 0-based, matching the library API.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max deviation {max_deviation:e} exceeds {tolerance:e}")]
    NotHermitian { max_deviation: f64, tolerance: f64 },

    #[error("{n}x{n} matrix is not unitary: max deviation {max_deviation:e}")]
    NotUnitary { n: usize, max_deviation: f64 },

    #[error("spectrum decreases at index {index}")]
    UnsortedSpectrum { index: usize },

    #[error("matrix has entries with non-zero imaginary part")]
    NotReal,

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("invalid shape: {rows}x{cols} with {len} entries")]
    InvalidShape { rows: usize, cols: usize, len: usize },

    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension {n} too small for this operation")]
    DimensionTooSmall { n: usize },

    #[error("index sets have different cardinalities ({rows} vs {cols})")]
    CardinalityMismatch { rows: usize, cols: usize },

    #[error("index set must be non-empty, strictly increasing and in range")]
    InvalidIndexSet,

    #[error("invalid rotation: {0}")]
    InvalidRotation(&'static str),

    #[error("{algorithm} failed to converge after {iterations} iterations")]
    NoConvergence { algorithm: &'static str, iterations: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("spectra violate interlacing at index {index} (deviation {deviation:e})")]
    InterlacingViolation { index: usize, deviation: f64 },

    #[error("eigenvalue at 0-based index {index} is repeated (multiplicity {multiplicity})")]
    DegenerateEigenvalue { index: usize, multiplicity: usize },

    #[error("spectrum has repeated eigenvalues")]
    DegenerateSpectrum,

    #[error("shift is within {gap:e} of the minor spectrum")]
    SingularShift { gap: f64 },

    #[error("phase undefined: product of magnitudes {product:e} below floor")]
    IllConditioned { product: f64 },

    #[error("probe point within {distance:e} of a pole")]
    ProbeTooCloseToPole { distance: f64 },

    #[error("tolerance must be positive and finite")]
    InvalidTolerance,

    #[error("matrix has no eigenvalue at zero (nearest is {nearest:e})")]
    NoZeroEigenvalue { nearest: f64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
