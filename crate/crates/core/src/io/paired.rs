use std::path::Path;

use serde::Deserialize;

use super::{extension, fmt_f64, parse_f64, read_to_string, write_bytes};
use crate::contrastive::PairedSample;
use crate::error::{Error, Result};

/// Writes pairs as CSV with an `image_0..,text_0..` header. The header is
/// written even when there are no samples, so the dimensions survive.
pub fn write_paired_csv(path: &Path, samples: &[PairedSample], image_dim: usize, text_dim: usize) -> Result<()> {
    let mut out: Vec<String> = (0..image_dim).map(|i| format!("image_{i}")).collect();
    out.extend((0..text_dim).map(|i| format!("text_{i}")));
    let mut text = out.join(",");
    text.push('\n');
    for (k, s) in samples.iter().enumerate() {
        if s.image.len() != image_dim || s.text.len() != text_dim {
            return Err(Error::shape(format!(
                "sample {k} does not match dims ({image_dim}, {text_dim})"
            )));
        }
        let row: Vec<String> = s.image.iter().chain(&s.text).map(|&v| fmt_f64(v)).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_bytes(path, text.as_bytes())
}

pub fn write_paired_jsonl(path: &Path, samples: &[PairedSample]) -> Result<()> {
    let mut text = String::new();
    for s in samples {
        text.push_str(&serde_json::to_string(s).expect("samples serialize"));
        text.push('\n');
    }
    write_bytes(path, text.as_bytes())
}

/// Reads `.jsonl` (one `{"image": [..], "text": [..]}` per line) or a CSV
/// whose header names each column `image_*` or `text_*`. Returns the
/// samples and the `(image_dim, text_dim)` pair.
pub fn read_paired(path: &Path) -> Result<(Vec<PairedSample>, (usize, usize))> {
    let text = read_to_string(path)?;
    if extension(path).as_deref() == Some("jsonl") {
        read_jsonl(path, &text)
    } else {
        read_csv(path, &text)
    }
}

fn read_jsonl(path: &Path, text: &str) -> Result<(Vec<PairedSample>, (usize, usize))> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Line {
        image: Vec<f64>,
        text: Vec<f64>,
    }
    let mut samples = Vec::new();
    let mut dims = None;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let l: Line = serde_json::from_str(line).map_err(|e| Error::parse(path, format!("line {}: {e}", i + 1)))?;
        let d = (l.image.len(), l.text.len());
        if *dims.get_or_insert(d) != d {
            return Err(Error::parse(
                path,
                format!("line {}: dims {d:?} differ from earlier lines", i + 1),
            ));
        }
        samples.push(PairedSample {
            image: l.image,
            text: l.text,
        });
    }
    Ok((samples, dims.unwrap_or((0, 0))))
}

fn read_csv(path: &Path, text: &str) -> Result<(Vec<PairedSample>, (usize, usize))> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::parse(path, e.to_string()))?.clone();
    let image_dim = header.iter().take_while(|h| h.starts_with("image_")).count();
    let text_dim = header.len() - image_dim;
    if image_dim == 0 || text_dim == 0 || !header.iter().skip(image_dim).all(|h| h.starts_with("text_")) {
        return Err(Error::parse(
            path,
            "header must list image_* columns followed by text_* columns",
        ));
    }
    let mut samples = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::parse(path, e.to_string()))?;
        let values = rec
            .iter()
            .map(|f| parse_f64(f, path, i + 2))
            .collect::<Result<Vec<_>>>()?;
        let (image, text) = values.split_at(image_dim);
        samples.push(PairedSample {
            image: image.to_vec(),
            text: text.to_vec(),
        });
    }
    Ok((samples, (image_dim, text_dim)))
}
