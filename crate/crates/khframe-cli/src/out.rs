//! Output plumbing: directory resolution and deterministic CSV/JSON writers.

use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::AppError;

pub const OUT_DIR_ENV: &str = "KHFRAME_OUT_DIR";

/// Precedence: --out flag, then the environment override, then ./khframe-out.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(env) = std::env::var_os(OUT_DIR_ENV) {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    PathBuf::from("khframe-out")
}

pub fn ensure_dir(dir: &Path) -> Result<(), AppError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| AppError::Io(format!("creating {}: {e}", dir.display())))
}

/// Fixed-precision scientific notation; the one float format every CSV uses
/// so byte-identical reruns are guaranteed.
pub fn num(value: f64) -> String {
    format!("{value:.12e}")
}

pub struct Csv {
    writer: BufWriter<File>,
    path: PathBuf,
}

impl Csv {
    /// Open and write the header row (column names carry the units).
    pub fn create(dir: &Path, name: &str, header: &str) -> Result<Self, AppError> {
        let path = dir.join(name);
        let file = File::create(&path)
            .map_err(|e| AppError::Io(format!("creating {}: {e}", path.display())))?;
        let mut csv = Self { writer: BufWriter::new(file), path };
        csv.row(header)?;
        Ok(csv)
    }

    pub fn row(&mut self, line: &str) -> Result<(), AppError> {
        writeln!(self.writer, "{line}")
            .map_err(|e| AppError::Io(format!("writing {}: {e}", self.path.display())))
    }

    pub fn finish(mut self) -> Result<PathBuf, AppError> {
        self.writer
            .flush()
            .map_err(|e| AppError::Io(format!("writing {}: {e}", self.path.display())))?;
        Ok(self.path)
    }
}

pub fn write_json<T: Serialize>(
    dir: &Path,
    name: &str,
    value: &T,
) -> Result<PathBuf, AppError> {
    let path = dir.join(name);
    let body = serde_json::to_string_pretty(value)
        .map_err(|e| AppError::Io(format!("serializing {name}: {e}")))?;
    std::fs::write(&path, body + "\n")
        .map_err(|e| AppError::Io(format!("writing {}: {e}", path.display())))?;
    Ok(path)
}
