use alloc::string::String;

/// Errors raised by the combinatorial and numerical routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid setup: {0}")]
    InvalidSetup(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("sub-dimension vector exceeds the ambient vector at vertex `{0}`")]
    SubExceedsAmbient(String),
    #[error("rank of the dimension vector is zero")]
    ZeroRank,
    #[error("enumeration of {candidates} candidates exceeds the cap of {cap}")]
    TooManyCandidates { candidates: u128, cap: u128 },
    #[error("representation does not match the setup: {0}")]
    ShapeMismatch(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
