use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Grover,
    Suppress,
    DepthSweep,
    QaoaCompare,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::Grover => "grover",
            CommandName::Suppress => "suppress",
            CommandName::DepthSweep => "depth-sweep",
            CommandName::QaoaCompare => "qaoa-compare",
        }
    }
}

pub const DEFAULT_OUT: &str = "qsuppress-out";
pub const DEFAULT_SHOTS: u64 = 4096;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_LAYERS: usize = 1;

/// Every knob of every subcommand. A JSON config file holds the same keys as
/// the command-line flags (`n_min` for `--n-min`); unset keys take the
/// subcommand defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Comma-separated labels, as on the command line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub undesired: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_min: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grover_iterations: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Fields set in `flags` replace those in `self`.
    pub fn overlay(self, flags: RunConfig) -> anyhow::Result<Self> {
        let command = match (self.command, flags.command) {
            (Some(a), Some(b)) if a != b => {
                bail!("config file is for `{}` but the command line asks for `{}`", a.as_str(), b.as_str())
            }
            (a, b) => b.or(a),
        };
        Ok(RunConfig {
            command,
            seed: flags.seed.or(self.seed),
            out: flags.out.or(self.out),
            n: flags.n.or(self.n),
            targets: flags.targets.or(self.targets),
            undesired: flags.undesired.or(self.undesired),
            k: flags.k.or(self.k),
            shots: flags.shots.or(self.shots),
            n_min: flags.n_min.or(self.n_min),
            n_max: flags.n_max.or(self.n_max),
            instance: flags.instance.or(self.instance),
            p: flags.p.or(self.p),
            budget: flags.budget.or(self.budget),
            penalty: flags.penalty.or(self.penalty),
            grover_iterations: flags.grover_iterations.or(self.grover_iterations),
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
    }
}
