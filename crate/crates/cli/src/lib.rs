//! The `bpk` command-line tool.
//!
//! Each scheme algorithm is a subcommand reading and writing the envelope
//! files of [`bpk_core::envelope`]; `service` subcommands drive a running
//! authority; `bench` times pseudonym generation and verification.
//!
//! Exit codes: 0 on success, 1 when verification fails or a request is
//! refused, 2 on bad flags or unreadable inputs. With `--seed`, every
//! command's output is a deterministic function of its inputs.

pub mod bench;
pub mod client;
pub mod commands;
pub mod error;
pub mod files;

pub use commands::{run, Cli};
pub use error::CliError;
