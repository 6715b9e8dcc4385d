use thiserror::Error;

/// Errors produced by the exact-algebra layers.
#[derive(Error, Debug)]
pub enum Error {
    #[error("ring context mismatch: {0} variables vs {1}")]
    ContextMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("order of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("matrix is not invertible over the Laurent ring: determinant {0} is not a unit")]
    NotInvertible(String),

    #[error("form is not almost symmetric: no power of the symmetry defect vanishes up to exponent {0}")]
    NotAlmostSymmetric(usize),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("factor index {index} out of range 1..={total}")]
    IndexOutOfRange { index: usize, total: usize },

    #[error("resource guard: n = {0} exceeds the configured limit {1}")]
    ResourceGuard(usize, usize),

    #[error("cover multiplier k = {k} too small: need k > 2*|psi| = {bound}")]
    CoverTooSmall { k: u64, bound: u64 },

    #[error("geometric radius {radius} is not below delta^2 = {delta_sq}")]
    RadiusExceedsDelta { radius: String, delta_sq: String },

    #[error("ambiguous lattice lift between basis points {0} and {1}")]
    AmbiguousLift(usize, usize),

    #[error("delta^2 = {0} must be below (1/2)^2, the injectivity radius bound")]
    DeltaTooLarge(String),

    #[error("duality map is not an isomorphism in degree {0}; the general instant form is not supported")]
    DualityNotIso(usize),

    #[error("differential condition d*d = 0 fails between degrees {0} and {1}")]
    NotAComplex(usize, usize),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
