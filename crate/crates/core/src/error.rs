use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero octonion")]
    ZeroDivision,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("matrix is not right para-linear: p = e{p}, basis index {basis_index}, residual {residual:e}")]
    NotParaLinear { p: usize, basis_index: usize, residual: f64 },

    #[error("zero vector")]
    ZeroVector,

    #[error("family is not weak associative orthonormal (residual {residual:e})")]
    BasisNotOrthonormal { residual: f64 },

    #[error("argument is not in the real part Re H")]
    NotRealPart,

    #[error("vector is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("vector is not a slice paravector")]
    NotSlice,

    #[error("operator is not self-adjoint (asymmetry {asymmetry:e})")]
    NotSelfAdjoint { asymmetry: f64 },

    #[error("eigenvalue {lambda} has no slice paravector basis of its eigenspace")]
    NotStandardStrong { lambda: f64 },

    #[error("symmetric eigensolver did not converge")]
    NoConvergence,

    #[error("spectrum function has no value at {lambda}")]
    SpectrumMismatch { lambda: f64 },

    #[error("not a unit imaginary octonion (re {re}, norm {norm})")]
    NotImaginaryUnit { re: f64, norm: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
