use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("total degree {degree} exceeds the cap")]
    DegreeCap { degree: u32 },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { offset: usize, name: String },
    #[error("ideal is not m-primary")]
    NotMPrimary,
    #[error("colength is not finite: truncation grew past the degree cap")]
    NonFinite,
    #[error("generators are not monomials")]
    NonMonomial,
    #[error("ideal is not integrally closed")]
    NotIntegrallyClosed,
    #[error("second differences did not stabilize within the power cap")]
    NoStabilization,
    #[error("no certified general choice after {trials} trials (trial values {values:?})")]
    GenericityFailure { trials: usize, values: Vec<Option<u64>> },
    #[error("linkage involution failed")]
    InvolutionFailure,
    #[error("link chain exceeded the length cap")]
    ChainCap,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("submodule is not contained in the module")]
    ContainmentViolated,
    #[error("no area formula matches: e(J) - e(I) - br = {delta}, twice the areas {dark2} and {light2}")]
    AreaMismatch { delta: i64, dark2: u64, light2: u64 },
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
