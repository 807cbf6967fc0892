//! JSON persistence for the policy document and the tracker registry.
//!
//! Writes go to a temporary file in the same directory which then replaces
//! the target, so readers never see a half-written document.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use trackwall_core::{PolicyConfig, PolicyError, Taxonomy, TrackerRegistry};

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Policy { path: PathBuf, source: PolicyError },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), StoreError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(io_err(path))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.as_file().sync_all().map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| StoreError::Io {
        path: path.to_path_buf(),
        source: e.error,
    })?;
    Ok(())
}

pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<(), StoreError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|source| StoreError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

/// A missing file yields `None`.
fn read_optional(path: &Path) -> Result<Option<String>, StoreError> {
    match fs::read_to_string(path) {
        Ok(s) => Ok(Some(s)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(io_err(path)(e)),
    }
}

/// Loads and validates the policy; a missing file is the empty policy.
pub fn load_policy(path: &Path, taxonomy: &Taxonomy) -> Result<PolicyConfig, StoreError> {
    let Some(text) = read_optional(path)? else {
        return Ok(PolicyConfig::default());
    };
    let raw: PolicyConfig = serde_json::from_str(&text).map_err(|source| StoreError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    raw.validated(taxonomy).map_err(|source| StoreError::Policy {
        path: path.to_path_buf(),
        source,
    })
}

pub fn save_policy(path: &Path, policy: &PolicyConfig) -> Result<(), StoreError> {
    write_json_atomic(path, policy)
}

/// A missing file is the empty registry.
pub fn load_registry(path: &Path) -> Result<TrackerRegistry, StoreError> {
    let Some(text) = read_optional(path)? else {
        return Ok(TrackerRegistry::new());
    };
    let registry: TrackerRegistry =
        serde_json::from_str(&text).map_err(|source| StoreError::Json {
            path: path.to_path_buf(),
            source,
        })?;
    Ok(registry.sanitized())
}

pub fn save_registry(path: &Path, registry: &TrackerRegistry) -> Result<(), StoreError> {
    write_json_atomic(path, registry)
}
