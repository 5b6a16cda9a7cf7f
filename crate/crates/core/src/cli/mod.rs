//! Command-line entry point.
//!
//! Each subcommand reads one JSON config, applies scalar flag overrides,
//! and writes its outputs under `--out`. Primary outputs depend only on
//! the effective config and the input files; wall-clock times go to a
//! separate `run_meta.json`.

mod config;
mod encode;
mod gen;
mod retrieve;
mod train;

pub use config::{
    config_hash, AtlasFiles, CvSettings, Direction, EncodeConfig, GenConfig, MatrixFormat, ModelFiles, PathBase,
    RetrieveConfig, RetrieveInput, RunConfig, SplitFiles, TrainConfig, VoxelGen, CONFIG_VERSION,
};
pub use encode::cmd_encode;
pub use gen::cmd_gen;
pub use retrieve::cmd_retrieve;
pub use train::cmd_train;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::write_bytes;

#[derive(Debug, Parser)]
#[command(
    name = "neuroalign",
    version,
    about = "Contrastive training, retrieval and voxelwise encoding runs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write synthetic paired data and/or voxel datasets.
    Gen(RunArgs),
    /// Train the two-tower contrastive model.
    Train(RunArgs),
    /// Fit and score layer-wise banded-ridge encoding models.
    Encode(RunArgs),
    /// Compute Recall@k and median rank.
    Retrieve(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON run config.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's seed fields.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<()> {
    let (name, args) = match &command {
        Command::Gen(a) => ("gen", a),
        Command::Train(a) => ("train", a),
        Command::Encode(a) => ("encode", a),
        Command::Retrieve(a) => ("retrieve", a),
    };
    let started = unix_seconds();
    let base = PathBase::of_config(&args.config);
    std::fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    match &command {
        Command::Gen(a) => cmd_gen(&config::load_config(&a.config)?, a.seed, &a.out),
        Command::Train(a) => cmd_train(&config::load_config(&a.config)?, a.seed, &base, &a.out),
        Command::Encode(a) => cmd_encode(&config::load_config(&a.config)?, a.seed, &base, &a.out),
        Command::Retrieve(a) => cmd_retrieve(&config::load_config(&a.config)?, a.seed, &base, &a.out),
    }?;
    let meta = serde_json::json!({
        "subcommand": name,
        "config": args.config,
        "version": crate::VERSION,
        "started_unix": started,
        "finished_unix": unix_seconds(),
    });
    write_json(&args.out.join("run_meta.json"), &meta)
}

fn unix_seconds() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    write_bytes(path, text.as_bytes())
}

/// Fields every report starts with.
#[derive(Debug, Clone, Serialize)]
pub(crate) struct Provenance {
    pub version: &'static str,
    pub config_sha256: String,
}

impl Provenance {
    pub fn of<T: Serialize>(cfg: &T) -> Self {
        Self {
            version: crate::VERSION,
            config_sha256: config_hash(cfg),
        }
    }
}

pub(crate) fn create_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}
