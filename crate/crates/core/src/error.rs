use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid encoding of {0}")]
    Encoding(&'static str),

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("unsupported security level: {0} bits")]
    UnsupportedSecurityLevel(u32),

    #[error("witness does not satisfy the statement ({0})")]
    WitnessMismatch(&'static str),

    #[error("pseudonym proof did not verify")]
    ProofRejected,

    #[error("opened key does not belong to a registered user")]
    UnknownUser,

    #[error("malformed envelope: {0}")]
    Envelope(String),
}
