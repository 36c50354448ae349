use std::fs;
use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::CliError;

/// Writes `contents` to `dir/name` through a temp file and rename.
pub(crate) fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> Result<(), CliError> {
    let target = dir.join(name);
    let err = |source| CliError::Output {
        path: target.clone(),
        source,
    };
    fs::create_dir_all(dir).map_err(err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(&target).map_err(|e| err(e.error))?;
    Ok(())
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub(crate) fn file_sha256(path: &Path) -> Result<String, CliError> {
    fs::read(path)
        .map(|b| sha256_hex(&b))
        .map_err(|source| CliError::Input {
            path: path.to_path_buf(),
            source,
        })
}
