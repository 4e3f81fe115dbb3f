//! File handling: parameter files, PLU truth tables, CSV dataset export, and
//! atomic writes (temp file + rename, so a reader never sees partial content).

use std::io::Write;
use std::path::{Path, PathBuf};

use cgp_core::params::{parse_parameter_text, CgpParameters};
use cgp_core::problems::{format_plu, parse_plu, SrDataset, TruthTable};

use crate::engine::EngineError;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> EngineError + '_ {
    move |source| EngineError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_err(path: &Path, message: String) -> EngineError {
    EngineError::Parse {
        path: path.to_path_buf(),
        message,
    }
}

/// Writes the full contents to a temp file in the target directory, then
/// renames it over `path`; concurrent readers observe either the old or the
/// new complete file, never a partial one.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn load_parameters(path: &Path) -> Result<CgpParameters, EngineError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_parameter_text(&text).map_err(|e| parse_err(path, e.to_string()))
}

pub fn read_plu(path: &Path) -> Result<TruthTable, EngineError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_plu(&text).map_err(|e| parse_err(path, e.to_string()))
}

pub fn write_plu(table: &TruthTable, path: &Path) -> Result<(), EngineError> {
    write_atomic(path, &format_plu(table)).map_err(io_err(path))
}

/// Renders a dataset as CSV with an `x0,..,target0,..` header row.
pub fn dataset_csv(dataset: &SrDataset) -> String {
    let (inputs, targets) = &dataset.points[0];
    let mut header: Vec<String> = (0..inputs.len()).map(|i| format!("x{i}")).collect();
    header.extend((0..targets.len()).map(|i| format!("target{i}")));
    let mut out = header.join(",");
    out.push('\n');
    for (x, y) in &dataset.points {
        let fields: Vec<String> = x.iter().chain(y).map(|v| v.to_string()).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Default path of the per-job result file.
pub fn result_path(output_dir: &Path, job_index: usize) -> PathBuf {
    output_dir.join(format!("job_{job_index}.result"))
}

/// Default path of the per-job checkpoint file.
pub fn checkpoint_path(output_dir: &Path, job_index: usize) -> PathBuf {
    output_dir.join(format!("job_{job_index}.checkpoint"))
}
