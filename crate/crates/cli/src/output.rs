//! Output destinations and atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use tempfile::NamedTempFile;

use crate::OUT_DIR_ENV;

/// Writes `contents` to `path` through a temporary file in the same
/// directory, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes()).with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path).map_err(|e| e.error).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// The explicit `--out`, or `default_name` inside the directory named by the
/// environment, or nothing (standard output).
pub fn resolve_file(out: Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    out.or_else(|| env_dir().map(|d| d.join(default_name)))
}

pub fn resolve_dir(out: Option<PathBuf>) -> Option<PathBuf> {
    out.or_else(env_dir)
}

fn env_dir() -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Sends `contents` to a file when one is given, else to standard output.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).context("writing to standard output")?;
            stdout.flush().context("writing to standard output")
        }
    }
}

pub fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}
