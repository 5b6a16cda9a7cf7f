use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Voxel-to-ROI labels plus an optional coarsening of ROIs into areas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoiAtlas {
    voxel_labels: Vec<String>,
    merge_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoiLevel {
    Roi,
    Area,
}

/// Mean of the selected voxels in one group; `mean` is `None` when no
/// selected voxel falls in the group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupStat {
    pub group: String,
    pub count: usize,
    pub mean: Option<f64>,
}

impl RoiAtlas {
    /// `merge_map` must name an area for every label in use; pass an empty
    /// map when only ROI-level aggregation is wanted.
    pub fn new(voxel_labels: Vec<String>, merge_map: BTreeMap<String, String>) -> Result<Self> {
        if !merge_map.is_empty() {
            if let Some(l) = voxel_labels.iter().find(|l| !merge_map.contains_key(*l)) {
                return Err(Error::arg(format!("label {l:?} has no entry in the merge map")));
            }
        }
        Ok(Self {
            voxel_labels,
            merge_map,
        })
    }

    pub fn n_voxels(&self) -> usize {
        self.voxel_labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.voxel_labels
    }

    pub fn merge_map(&self) -> &BTreeMap<String, String> {
        &self.merge_map
    }

    fn group_of(&self, label: &str, level: RoiLevel) -> Result<String> {
        match level {
            RoiLevel::Roi => Ok(label.to_owned()),
            RoiLevel::Area => self
                .merge_map
                .get(label)
                .cloned()
                .ok_or_else(|| Error::arg(format!("label {label:?} is not mapped to an area"))),
        }
    }

    /// Restricts the atlas to the voxels where `mask` is true.
    pub fn select(&self, mask: &[bool]) -> Result<Self> {
        if mask.len() != self.voxel_labels.len() {
            return Err(Error::shape(format!(
                "mask of length {} for an atlas of {} voxels",
                mask.len(),
                self.voxel_labels.len()
            )));
        }
        Ok(Self {
            voxel_labels: self
                .voxel_labels
                .iter()
                .zip(mask)
                .filter(|(_, &m)| m)
                .map(|(l, _)| l.clone())
                .collect(),
            merge_map: self.merge_map.clone(),
        })
    }
}

/// Per-group arithmetic mean of `values` over voxels with `mask` set (all
/// voxels when `mask` is `None`). Groups are reported in name order and
/// include every group present in the atlas.
pub fn roi_aggregate(
    values: &[f64],
    atlas: &RoiAtlas,
    level: RoiLevel,
    mask: Option<&[bool]>,
) -> Result<Vec<GroupStat>> {
    if values.len() != atlas.n_voxels() {
        return Err(Error::shape(format!(
            "{} values for an atlas of {} voxels",
            values.len(),
            atlas.n_voxels()
        )));
    }
    if let Some(m) = mask {
        if m.len() != values.len() {
            return Err(Error::shape("mask length differs from value count"));
        }
    }
    let mut acc: BTreeMap<String, (usize, f64)> = BTreeMap::new();
    for (v, (label, &x)) in atlas.voxel_labels.iter().zip(values).enumerate() {
        let group = atlas.group_of(label, level)?;
        let slot = acc.entry(group).or_insert((0, 0.0));
        if mask.is_none_or(|m| m[v]) {
            slot.0 += 1;
            slot.1 += x;
        }
    }
    Ok(acc
        .into_iter()
        .map(|(group, (count, sum))| GroupStat {
            group,
            count,
            mean: (count > 0).then(|| sum / count as f64),
        })
        .collect())
}
