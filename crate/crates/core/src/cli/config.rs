use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::contrastive::ContrastiveConfig;
use crate::encoding::{DelaySpec, EV_THRESHOLD};
use crate::error::{Error, Result};
use crate::ridge::LambdaGrid;
use crate::synth::{PairedDataSpec, VoxelSynthSpec};

/// Schema version every run config must declare.
pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixFormat {
    #[default]
    Csv,
    Binary,
}

impl MatrixFormat {
    pub fn extension(self) -> &'static str {
        match self {
            MatrixFormat::Csv => "csv",
            MatrixFormat::Binary => "bin",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenConfig {
    pub version: u32,
    #[serde(default)]
    pub format: MatrixFormat,
    #[serde(default)]
    pub paired: Option<PairedDataSpec>,
    #[serde(default)]
    pub voxels: Option<VoxelGen>,
}

/// `spec.n_samples` training rows plus `test_samples` held-out rows, all
/// drawn with the same ground-truth weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoxelGen {
    pub spec: VoxelSynthSpec,
    pub test_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    pub version: u32,
    pub data: String,
    pub steps: u64,
    /// Required for a fresh run; when resuming it may be omitted, and if
    /// given must match the checkpoint.
    #[serde(default)]
    pub contrastive: Option<ContrastiveConfig>,
    #[serde(default)]
    pub resume: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFiles {
    pub name: String,
    pub layers: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitFiles {
    pub features: Vec<ModelFiles>,
    /// One matrix per repeat, or rank-3 binary stacks of repeats.
    pub responses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CvSettings {
    #[serde(default = "default_folds")]
    pub n_folds: usize,
    #[serde(default)]
    pub grid: LambdaGrid,
}

fn default_folds() -> usize {
    5
}

impl Default for CvSettings {
    fn default() -> Self {
        Self {
            n_folds: default_folds(),
            grid: LambdaGrid::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasFiles {
    pub labels: String,
    #[serde(default)]
    pub merge_map: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodeConfig {
    pub version: u32,
    pub train: SplitFiles,
    pub test: SplitFiles,
    /// Defaults to every layer all models share.
    #[serde(default)]
    pub layers: Option<Vec<usize>>,
    #[serde(default)]
    pub delays: DelaySpec,
    #[serde(default)]
    pub cv: CvSettings,
    #[serde(default = "default_ev_threshold")]
    pub ev_threshold: f64,
    #[serde(default)]
    pub atlas: Option<AtlasFiles>,
}

fn default_ev_threshold() -> f64 {
    EV_THRESHOLD
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    ImageToText,
    TextToImage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RetrieveInput {
    /// Precomputed `queries x candidates` score matrix.
    Scores { path: String },
    /// Embedding rows; each row is L2-normalized before scoring.
    Embeddings { queries: String, candidates: String },
    /// Embeds a paired dataset with a trained checkpoint's online towers.
    Checkpoint {
        checkpoint: String,
        data: String,
        direction: Direction,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetrieveConfig {
    pub version: u32,
    pub input: RetrieveInput,
    /// `query,candidate` CSV. Optional only for checkpoint input, where
    /// sample `i` is the truth for query `i`.
    #[serde(default)]
    pub truth: Option<String>,
}

/// A parsed config for one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Gen(GenConfig),
    Train(TrainConfig),
    Encode(EncodeConfig),
    Retrieve(RetrieveConfig),
}

pub(crate) trait Versioned: Serialize + DeserializeOwned {
    fn version(&self) -> u32;
}

macro_rules! versioned {
    ($($t:ty),*) => {$(
        impl Versioned for $t {
            fn version(&self) -> u32 {
                self.version
            }
        }
    )*};
}
versioned!(GenConfig, TrainConfig, EncodeConfig, RetrieveConfig);

pub(crate) fn parse_config<T: Versioned>(text: &str, origin: &Path) -> Result<T> {
    let cfg: T = serde_json::from_str(text).map_err(|e| Error::Config(format!("{}: {e}", origin.display())))?;
    if cfg.version() != CONFIG_VERSION {
        return Err(Error::Config(format!(
            "{}: config version {} is not supported (expected {CONFIG_VERSION})",
            origin.display(),
            cfg.version()
        )));
    }
    Ok(cfg)
}

pub(crate) fn load_config<T: Versioned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text, path)
}

/// SHA-256 of the effective config in its canonical JSON serialization.
pub fn config_hash<T: Serialize>(cfg: &T) -> String {
    let text = serde_json::to_string(cfg).expect("configs serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Resolves config-relative paths against the config file's directory.
#[derive(Debug, Clone)]
pub struct PathBase(PathBuf);

impl PathBase {
    pub fn of_config(config_path: &Path) -> Self {
        Self(config_path.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self(dir.into())
    }

    pub fn resolve(&self, p: &str) -> PathBuf {
        let p = Path::new(p);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.0.join(p)
        }
    }
}
