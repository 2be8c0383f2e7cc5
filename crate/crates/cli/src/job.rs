use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "otkit/v1";
pub const CAP_ENV: &str = "OTKIT_PRECISION_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    FieldInspect,
    UnitsVerify,
    Admissible,
    BuildOt,
    VerifyLck,
    Normalize,
    Converse,
    Metrics,
    Sol3Demo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::FieldInspect => "field-inspect",
            Command::UnitsVerify => "units-verify",
            Command::Admissible => "admissible",
            Command::BuildOt => "build-ot",
            Command::VerifyLck => "verify-lck",
            Command::Normalize => "normalize",
            Command::Converse => "converse",
            Command::Metrics => "metrics",
            Command::Sol3Demo => "sol3-demo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    A1,
    A3,
}

/// A batch job. Relative paths are resolved against the job file's directory.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub schema: String,
    pub command: Command,
    #[serde(default)]
    pub input: Option<PathBuf>,
    #[serde(default)]
    pub precision: Option<u32>,
    #[serde(default)]
    pub precision_cap: Option<u32>,
    #[serde(default)]
    pub bound: Option<i64>,
    #[serde(default)]
    pub branch: Option<Branch>,
    #[serde(default)]
    pub pairing_search: Option<bool>,
    #[serde(default)]
    pub ideal: Option<PathBuf>,
    #[serde(default)]
    pub branch_offsets: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl JobSpec {
    pub fn load(path: &Path) -> Result<JobSpec, JobError> {
        let text = std::fs::read_to_string(path)?;
        let mut job: JobSpec = serde_json::from_str(&text).map_err(|e| JobError::Schema(e.to_string()))?;
        if job.schema != SCHEMA {
            return Err(JobError::Schema(format!("expected schema \"{SCHEMA}\", got \"{}\"", job.schema)));
        }
        let base = path.parent().unwrap_or(Path::new("."));
        let resolve = |p: &mut Option<PathBuf>| {
            if let Some(q) = p {
                if q.is_relative() {
                    *q = base.join(&*q);
                }
            }
        };
        resolve(&mut job.input);
        resolve(&mut job.ideal);
        resolve(&mut job.output);
        Ok(job)
    }
}

pub fn env_cap() -> Option<u32> {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok())
}
