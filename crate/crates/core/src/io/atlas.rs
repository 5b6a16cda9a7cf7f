use std::collections::BTreeMap;
use std::path::Path;

use super::{read_to_string, write_bytes};
use crate::encoding::RoiAtlas;
use crate::error::{Error, Result};

fn records(path: &Path, text: &str, fields: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::parse(path, e.to_string()))?;
    if header.iter().collect::<Vec<_>>() != fields {
        return Err(Error::parse(path, format!("expected header {}", fields.join(","))));
    }
    reader
        .records()
        .map(|r| r.map_err(|e| Error::parse(path, e.to_string())))
        .collect()
}

fn index(field: &str, path: &Path, line: usize) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(path, format!("line {line}: {field:?} is not an index")))
}

/// Reads `voxel_id,label` rows. Ids must cover `0..n` exactly once, in
/// any order.
pub fn read_atlas(path: &Path, merge_map: BTreeMap<String, String>) -> Result<RoiAtlas> {
    let text = read_to_string(path)?;
    let rows = records(path, &text, &["voxel_id", "label"])?;
    let mut labels: Vec<Option<String>> = vec![None; rows.len()];
    for (i, r) in rows.iter().enumerate() {
        let id = index(&r[0], path, i + 2)?;
        match labels.get_mut(id) {
            Some(slot @ None) => *slot = Some(r[1].to_owned()),
            Some(Some(_)) => return Err(Error::parse(path, format!("voxel {id} listed twice"))),
            None => {
                return Err(Error::parse(
                    path,
                    format!("voxel id {id} out of range for {} rows", rows.len()),
                ))
            }
        }
    }
    let labels = labels.into_iter().map(|l| l.expect("ids cover 0..n")).collect();
    RoiAtlas::new(labels, merge_map).map_err(|e| Error::parse(path, e.to_string()))
}

/// JSON object mapping ROI label to area name.
pub fn read_merge_map(path: &Path) -> Result<BTreeMap<String, String>> {
    serde_json::from_str(&read_to_string(path)?).map_err(|e| Error::parse(path, e.to_string()))
}

/// Reads `query,candidate` rows into per-query truth sets. Every query in
/// `0..n_queries` needs at least one row.
pub fn read_truth(path: &Path, n_queries: usize) -> Result<Vec<Vec<usize>>> {
    let text = read_to_string(path)?;
    let mut truth = vec![Vec::new(); n_queries];
    for (i, r) in records(path, &text, &["query", "candidate"])?.iter().enumerate() {
        let q = index(&r[0], path, i + 2)?;
        let c = index(&r[1], path, i + 2)?;
        truth
            .get_mut(q)
            .ok_or_else(|| Error::parse(path, format!("query {q} out of range for {n_queries} queries")))?
            .push(c);
    }
    if let Some(q) = truth.iter().position(|t| t.is_empty()) {
        return Err(Error::parse(path, format!("query {q} has no ground truth")));
    }
    Ok(truth)
}

pub fn write_truth(path: &Path, truth: &[Vec<usize>]) -> Result<()> {
    let mut text = String::from("query,candidate\n");
    for (q, cs) in truth.iter().enumerate() {
        for c in cs {
            text.push_str(&format!("{q},{c}\n"));
        }
    }
    write_bytes(path, text.as_bytes())
}
