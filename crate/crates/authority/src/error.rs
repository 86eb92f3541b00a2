use thiserror::Error;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("identity is already registered")]
    DuplicateRegistration,
    #[error("service provider id {0:?} is already taken")]
    SpIdTaken(String),
    #[error("unknown user id")]
    UnknownUid,
    #[error("unknown service provider {0:?}")]
    UnknownSp(String),
    #[error("authentication failed")]
    AuthFailed,
    #[error("not permitted: {0}")]
    PolicyDenied(String),
    #[error("pseudonym proof does not verify")]
    ProofRejected,
    /// A verifying proof opened to a key nobody was issued; possible
    /// forgery.
    #[error("opened public key belongs to no registered user")]
    UnknownUser,
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("storage: {0}")]
    Storage(String),
    #[error("secret store: {0}")]
    Sealing(&'static str),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Scheme(#[from] bpk_core::Error),
}

impl ServiceError {
    /// Stable machine-readable code used in API error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            Self::DuplicateRegistration => "duplicate-registration",
            Self::SpIdTaken(_) => "sp-id-taken",
            Self::UnknownUid => "unknown-uid",
            Self::UnknownSp(_) => "unknown-sp",
            Self::AuthFailed => "auth-failed",
            Self::PolicyDenied(_) => "policy-denied",
            Self::ProofRejected => "proof-rejected",
            Self::UnknownUser => "unknown-user",
            Self::BadRequest(_) => "bad-request",
            Self::Storage(_) | Self::Sealing(_) | Self::Config(_) | Self::Scheme(_) => "internal",
        }
    }
}

macro_rules! storage_error {
    ($($t:ty),*) => {$(
        impl From<$t> for ServiceError {
            fn from(e: $t) -> Self {
                ServiceError::Storage(e.to_string())
            }
        }
    )*};
}

storage_error!(
    redb::Error,
    redb::DatabaseError,
    redb::TransactionError,
    redb::TableError,
    redb::StorageError,
    redb::CommitError,
    serde_json::Error
);

pub type Result<T, E = ServiceError> = std::result::Result<T, E>;
