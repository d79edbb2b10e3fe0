use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid colouring: {0}")]
    InvalidColouring(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("boundary colourings differ: {left:?} vs {right:?}")]
    ColourMismatch { left: Vec<i32>, right: Vec<i32> },
    #[error("tangle is not an endomorphism")]
    NotAnEndomorphism,
    #[error("omega_{index} = 1 lies on the forbidden locus")]
    OmegaOnForbiddenLocus { index: usize },
    #[error("omega has {got} coordinates, expected {expected}")]
    OmegaArity { expected: usize, got: usize },
    #[error("omega_{index} is not on the unit circle")]
    OmegaNotUnit { index: usize },
    #[error("I_c(omega) = 1: only isotropy is guaranteed")]
    AdmissibilityViolated,
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("eigenvalue {eigenvalue:.3e} too close to the tolerance {tol:.1e}")]
    IllConditioned { eigenvalue: f64, tol: f64 },
    #[error("subspace is not isotropic (residual {residual:.3e})")]
    NotIsotropic { residual: f64 },
    #[error("matrix does not preserve the form (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("decomposition a = a1 + a2 failed")]
    DecompositionFailed,
    #[error("relations do not share the middle space")]
    SpaceMismatch,
    #[error("invariance system has a {dim}-dimensional solution space")]
    NonUniqueForm { dim: usize },
    #[error("A_(-e) differs from the transpose of A_e for e = {0}")]
    TransposeSymmetryViolated(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
