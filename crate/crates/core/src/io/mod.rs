//! On-disk formats shared by the CLI and the FFI layer.
//!
//! Matrices travel as CSV (optional header row) or as a small binary
//! container: magic `NAMX`, a little-endian `u32` format version, a `u32`
//! rank, one `u64` per dimension, then the row-major `f64` payload.

mod atlas;
mod checkpoint;
mod matrix;
mod paired;

pub use atlas::{read_atlas, read_merge_map, read_truth, write_truth};
pub use checkpoint::{read_checkpoint, write_checkpoint, Checkpoint, CHECKPOINT_VERSION};
pub use matrix::{
    read_binary, read_matrix, read_matrix_csv, read_repeats, write_binary, write_matrix_binary, write_matrix_csv,
    Tensor, BINARY_MAGIC, BINARY_VERSION,
};
pub use paired::{read_paired, write_paired_csv, write_paired_jsonl};

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub(crate) fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Shortest decimal that parses back to the same `f64`.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

pub(crate) fn parse_f64(field: &str, path: &Path, line: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::parse(path, format!("line {line}: {field:?} is not a number")))
}

fn extension(path: &Path) -> Option<String> {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
}
