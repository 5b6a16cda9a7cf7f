use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{read_to_string, write_bytes};
use crate::contrastive::TrainerState;
use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;

/// Versioned JSON container for a trainer: config, both encoder pairs,
/// optimizer moments, queue contents and the step counter. Floats are
/// written in shortest round-trip form, so reloading is bit-exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checkpoint {
    pub version: u32,
    pub state: TrainerState,
}

pub fn write_checkpoint(path: &Path, state: &TrainerState) -> Result<()> {
    let c = Checkpoint {
        version: CHECKPOINT_VERSION,
        state: state.clone(),
    };
    let mut text = serde_json::to_string(&c).expect("trainer state serializes");
    text.push('\n');
    write_bytes(path, text.as_bytes())
}

pub fn read_checkpoint(path: &Path) -> Result<TrainerState> {
    let text = read_to_string(path)?;
    let c: Checkpoint = serde_json::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))?;
    if c.version != CHECKPOINT_VERSION {
        return Err(Error::parse(
            path,
            format!("unsupported checkpoint version {}", c.version),
        ));
    }
    c.state
        .config
        .validate()
        .map_err(|e| Error::parse(path, e.to_string()))?;
    Ok(c.state)
}
