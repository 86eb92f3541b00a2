//! Reading and writing the envelope files.

use std::fs;
use std::io::Write;
use std::path::Path;

use bpk_core::envelope::{Envelope, Enveloped};

use crate::error::{CliError, Result};

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Reads an envelope whose contents are trusted inputs (keys, parameters).
/// Any defect is a usage error.
pub fn read<T: Enveloped>(path: &Path) -> Result<T> {
    T::from_json(&read_text(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Reads an envelope whose contents are under test (pseudonyms, proofs).
/// An unreadable file is a usage error; contents that do not decode count
/// as a failed verification.
pub fn read_presented<T: Enveloped>(path: &Path) -> Result<T> {
    let env = Envelope::from_json(&read_text(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    T::from_envelope(&env).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to standard output when no path is given.
pub fn write(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents)
            .map_err(|e| CliError::Failed(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Failed(e.to_string())),
    }
}
