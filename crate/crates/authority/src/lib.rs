//! The central authority as a long-running service.
//!
//! [`Authority`] holds the master key pair and a persistent registry of
//! users and service providers. It issues user keys to authenticated
//! users, computes pseudonyms for eligible providers, and opens or links
//! pseudonyms under a configured justification policy. Every release of
//! key material and every privileged computation lands in an append-only
//! audit log. [`http`] exposes the same operations as a JSON API.
//!
//! ```no_run
//! # async fn run() -> Result<(), Box<dyn std::error::Error>> {
//! use std::sync::Arc;
//! use bpk_authority::{Authority, Config};
//!
//! let config = Config::default();
//! let listener = tokio::net::TcpListener::bind(&config.listen).await?;
//! let authority = Arc::new(Authority::open(config, b"passphrase")?);
//! bpk_authority::http::serve(authority, listener).await?;
//! # Ok(())
//! # }
//! ```

pub mod api;
pub mod auth;
mod authority;
pub mod config;
pub mod error;
pub mod http;
pub mod records;
mod sealing;
mod store;

pub use auth::{Authenticator, TokenAuthenticator};
pub use authority::{Authority, Justification, Registration, SpRegistration, SpView, UserView};
pub use config::Config;
pub use error::{Result, ServiceError};
pub use records::{AuditAction, AuditEntry, Trust};
