use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The τ = α1/α2 chart has a pole at α2 = 0.
    #[error("tau = alpha1/alpha2 is infinite (alpha2 = 0); use the theta = pi representation")]
    TauPole,

    /// The north pole of the sphere projects to the point at infinity.
    #[error("point at infinity: jz = j")]
    PointAtInfinity,

    /// An orbit with a vanishing amplitude has no untwisted phase-space image.
    #[error("degenerate orbit: amplitude of mode {mode} vanishes")]
    DegenerateOrbit { mode: u8 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
