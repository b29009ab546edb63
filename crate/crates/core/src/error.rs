use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Mirror layout violates a geometric constraint (e.g. z₀ ≥ L).
    #[error("invalid geometry: {0}")]
    Geometry(String),

    /// An argument is outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated series failed to meet its tolerance within the hard cap.
    #[error("series did not converge: {context} (|n| reached {n_used}, tail estimate {tail_estimate:.3e})")]
    Convergence {
        context: String,
        n_used: u64,
        tail_estimate: f64,
    },

    /// Rate coefficients violate A ≥ |B| beyond numerical slack, so the
    /// emission/absorption rates would come out negative.
    #[error("inconsistent rate coefficients: A = {a:.6e}, B = {b:.6e} violate A >= |B|")]
    InconsistentRates { a: f64, b: f64 },

    /// Oracle quadrature failed to produce a trustworthy value.
    #[error("oracle quadrature failed: {0}")]
    Oracle(String),

    /// A sweep or feasibility search could not produce a usable result.
    #[error("search failed: {0}")]
    Search(String),
}

pub type Result<T> = std::result::Result<T, Error>;
