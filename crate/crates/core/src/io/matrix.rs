use std::path::Path;

use nalgebra::DMatrix;

use super::{extension, fmt_f64, parse_f64, read_to_string, write_bytes};
use crate::error::{Error, Result};

pub const BINARY_MAGIC: &[u8; 4] = b"NAMX";
pub const BINARY_VERSION: u32 = 1;

/// Dense row-major array of any rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let n: usize = shape.iter().product();
        if n != data.len() {
            return Err(Error::shape(format!(
                "shape {shape:?} holds {n} values, got {}",
                data.len()
            )));
        }
        Ok(Self { shape, data })
    }

    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        let data = (0..m.nrows())
            .flat_map(|i| m.row(i).iter().copied().collect::<Vec<_>>())
            .collect();
        Self {
            shape: vec![m.nrows(), m.ncols()],
            data,
        }
    }

    pub fn into_matrix(self) -> Result<DMatrix<f64>> {
        match self.shape[..] {
            [r, c] => Ok(DMatrix::from_row_slice(r, c, &self.data)),
            _ => Err(Error::shape(format!(
                "expected a rank-2 array, got shape {:?}",
                self.shape
            ))),
        }
    }

    /// Splits a rank-3 array along its first axis.
    pub fn into_matrices(self) -> Result<Vec<DMatrix<f64>>> {
        match self.shape[..] {
            [r, c] => Ok(vec![DMatrix::from_row_slice(r, c, &self.data)]),
            [k, r, c] => Ok((0..k)
                .map(|i| DMatrix::from_row_slice(r, c, &self.data[i * r * c..(i + 1) * r * c]))
                .collect()),
            _ => Err(Error::shape(format!(
                "expected a rank-2 or rank-3 array, got shape {:?}",
                self.shape
            ))),
        }
    }
}

pub fn write_binary(path: &Path, t: &Tensor) -> Result<()> {
    let mut out = Vec::with_capacity(12 + 8 * t.shape.len() + 8 * t.data.len());
    out.extend_from_slice(BINARY_MAGIC);
    out.extend_from_slice(&BINARY_VERSION.to_le_bytes());
    out.extend_from_slice(&(t.shape.len() as u32).to_le_bytes());
    for &d in &t.shape {
        out.extend_from_slice(&(d as u64).to_le_bytes());
    }
    for v in &t.data {
        out.extend_from_slice(&v.to_le_bytes());
    }
    write_bytes(path, &out)
}

pub fn write_matrix_binary(path: &Path, m: &DMatrix<f64>) -> Result<()> {
    write_binary(path, &Tensor::from_matrix(m))
}

pub fn read_binary(path: &Path) -> Result<Tensor> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let bad = |msg: &str| Error::parse(path, msg.to_owned());
    if bytes.len() < 12 || &bytes[..4] != BINARY_MAGIC {
        return Err(bad("not a binary array file"));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let version = u32_at(4);
    if version != BINARY_VERSION {
        return Err(bad(&format!("unsupported format version {version}")));
    }
    let rank = u32_at(8) as usize;
    let header = 12 + 8 * rank;
    if bytes.len() < header {
        return Err(bad("truncated header"));
    }
    let shape: Vec<usize> = (0..rank)
        .map(|i| u64::from_le_bytes(bytes[12 + 8 * i..20 + 8 * i].try_into().unwrap()) as usize)
        .collect();
    let n = shape
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| bad("shape overflows"))?;
    if bytes.len() - header != 8 * n {
        return Err(bad(&format!(
            "payload holds {} bytes, shape {shape:?} needs {}",
            bytes.len() - header,
            8 * n
        )));
    }
    let data = bytes[header..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Tensor::new(shape, data)
}

pub fn write_matrix_csv(path: &Path, m: &DMatrix<f64>, header: Option<&[String]>) -> Result<()> {
    let mut out = String::new();
    if let Some(h) = header {
        if h.len() != m.ncols() {
            return Err(Error::shape(format!(
                "{} header names for {} columns",
                h.len(),
                m.ncols()
            )));
        }
        out.push_str(&h.join(","));
        out.push('\n');
    }
    for i in 0..m.nrows() {
        let row: Vec<String> = m.row(i).iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_bytes(path, out.as_bytes())
}

/// Reads a numeric CSV. A first row containing any non-numeric field is
/// taken as a header and skipped. A header-only file yields a
/// `0 x n_columns` matrix.
pub fn read_matrix_csv(path: &Path) -> Result<DMatrix<f64>> {
    let text = read_to_string(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut ncols = None;
    let mut values = Vec::new();
    let mut nrows = 0;
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::parse(path, e.to_string()))?;
        if i == 0 && rec.iter().any(|f| f.parse::<f64>().is_err()) {
            ncols = Some(rec.len());
            continue;
        }
        match ncols {
            Some(n) if n != rec.len() => {
                return Err(Error::parse(
                    path,
                    format!("line {}: {} fields, expected {n}", i + 1, rec.len()),
                ))
            }
            _ => ncols = Some(rec.len()),
        }
        for f in rec.iter() {
            values.push(parse_f64(f, path, i + 1)?);
        }
        nrows += 1;
    }
    Ok(DMatrix::from_row_slice(nrows, ncols.unwrap_or(0), &values))
}

/// CSV or binary, chosen by extension (`.bin` is binary).
pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>> {
    if extension(path).as_deref() == Some("bin") {
        read_binary(path)?
            .into_matrix()
            .map_err(|e| Error::parse(path, e.to_string()))
    } else {
        read_matrix_csv(path)
    }
}

/// Repeated responses: each path is either one repeat (a matrix) or, for a
/// rank-3 binary file, a stack of repeats.
pub fn read_repeats(paths: &[impl AsRef<Path>]) -> Result<Vec<DMatrix<f64>>> {
    let mut out = Vec::new();
    for p in paths {
        let p = p.as_ref();
        if extension(p).as_deref() == Some("bin") {
            out.extend(
                read_binary(p)?
                    .into_matrices()
                    .map_err(|e| Error::parse(p, e.to_string()))?,
            );
        } else {
            out.push(read_matrix_csv(p)?);
        }
    }
    Ok(out)
}
