//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Inversion of a series whose constant term is zero.
    #[error("series has zero constant term; not invertible")]
    ZeroConstantTerm,

    /// exp/log applied to a series with the wrong constant term
    /// (exp needs 0, log needs 1), or composition with a nonzero
    /// inner constant term.
    #[error("series has an invalid constant term for this operation")]
    BadConstantTerm,

    /// Reversion of a series that is not q + O(q^2).
    #[error("series is not monic in q (expected q + O(q^2))")]
    NotMonic,

    /// An exact identity of the mirror construction failed.
    #[error("mirror identity violated: {0}")]
    MirrorIdentityViolation(String),

    /// Stable graphs require 2g - 2 + n > 0.
    #[error("unstable pair (g, n) = ({g}, {n}); need 2g - 2 + n > 0")]
    Unstable { g: u32, n: u32 },

    /// A graph sum requested a vertex potential that was never solved
    /// or raised into the table.
    #[error("missing vertex data P_{{{g},{m}}}")]
    MissingVertexData { g: u32, m: u32 },

    /// A series expected to be a polynomial in X failed the fit;
    /// `order` is the first q-order where the residual is nonzero.
    #[error("not an X-polynomial of the requested degree; first mismatch at q^{order}")]
    NotPolynomial { order: usize },

    /// Solving a genus needs invariants N_{g,1..3g-3} plus N_{g,0}.
    #[error("insufficient initial data for genus {genus}: missing N_{{{genus},{missing_d}}}")]
    InsufficientInitialData { genus: u32, missing_d: u32 },

    /// The ring fit is under-determined at this truncation order.
    #[error("ring fit kernel detected at this truncation; raise the series order")]
    KernelDetected,

    /// The series does not lie in the span of the requested monomials.
    #[error("no fit in the requested monomial span; first mismatch at q^{order}")]
    NoFit { order: usize },

    /// A multiseries stratum outside the configured truncation was requested.
    #[error("requested stratum exceeds the multiseries truncation")]
    TruncationOverflow,

    /// A gauge polynomial exceeds its degree bound.
    #[error("gauge degree bound violated: {0}")]
    GaugeDegree(String),

    /// Malformed textual input (config, gauge string, initial data, rationals).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
