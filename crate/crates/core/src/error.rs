use thiserror::Error;

/// Errors produced by the representation, exponential and harmonic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (negative `l`,
    /// `|m| > l`, half-integer `l` for a harmonic, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A Gauss factorization hit a zero pivot.
    #[error("factorization is singular: pivot {pivot} is zero")]
    SingularFactorization { pivot: &'static str },

    /// The angle is outside the range where the disentangled form exists.
    #[error("range error: {0}")]
    Range(String),

    /// A closed-form sum contains a negative power of `sin(theta)` that
    /// vanishes at the requested angle.
    #[error("singular evaluation: method {method} with m = {m} is undefined at theta = {theta}")]
    SingularEvaluation {
        method: &'static str,
        m: i64,
        theta: f64,
    },

    #[error("exact coefficient layer is limited to l <= {cap}, got l = {l}")]
    ExactCapExceeded { l: u32, cap: u32 },

    #[error("quadrature rule too small: needs n_theta >= {need_theta} and n_phi >= {need_phi}, has {n_theta} and {n_phi}")]
    UndersizedRule {
        need_theta: usize,
        need_phi: usize,
        n_theta: usize,
        n_phi: usize,
    },

    #[error("unknown method `{0}`")]
    UnknownMethod(String),
}

pub type Result<T> = std::result::Result<T, Error>;
