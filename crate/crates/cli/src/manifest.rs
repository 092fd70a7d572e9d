//! Provenance record written next to every report.

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use ritt_core::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputHash {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

/// Two runs whose manifests agree outside `started_unix` and `timings` write identical reports.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub verb: String,
    pub config: serde_json::Value,
    pub inputs: Vec<InputHash>,
    pub seed: u64,
    pub outputs: Vec<PathBuf>,
    pub exit_code: i32,
    pub started_unix: f64,
    pub timings: Vec<StageTiming>,
}

pub fn hash_file(path: &Path) -> Result<InputHash> {
    let bytes = std::fs::read(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(InputHash { path: path.to_path_buf(), sha256: hex::encode(Sha256::digest(&bytes)) })
}

/// Wall-clock stage timer.
pub struct Stopwatch {
    started: SystemTime,
    stages: Vec<StageTiming>,
}

impl Stopwatch {
    pub fn start() -> Self {
        Self { started: SystemTime::now(), stages: Vec::new() }
    }

    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t0 = Instant::now();
        let out = f();
        self.stages.push(StageTiming { stage: name.into(), seconds: t0.elapsed().as_secs_f64() });
        out
    }

    pub fn started_unix(&self) -> f64 {
        self.started.duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
    }

    pub fn into_timings(self) -> Vec<StageTiming> {
        self.stages
    }
}
