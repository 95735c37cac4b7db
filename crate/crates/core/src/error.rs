use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient is zero, the polynomial is not quadratic")]
    DegenerateLeadingCoefficient,

    #[error("coefficient {0} is not finite")]
    NonFinite(&'static str),

    #[error("{0} left the binary64 range")]
    ScalingRange(&'static str),

    #[error("sign of zero is undefined")]
    ZeroSign,

    #[error("phase of zero is undefined")]
    ZeroPhase,

    #[error("gamma_{0} requires n*u < 1")]
    GammaOutOfRange(u64),

    #[error("stepping {steps} ulps from {from:e} leaves the finite range")]
    UlpOverflow { from: f64, steps: i64 },

    #[error("relative error against an exact zero is infinite")]
    InfiniteRelativeError,

    #[error("extended precision must be at least {min} bits, got {got}")]
    InsufficientPrecision { got: usize, min: usize },

    #[error("counterexample exponent t={0} must satisfy 27 <= t <= 52")]
    InvalidExponent(u32),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("i/o failure: {0}")]
    Io(String),
}
