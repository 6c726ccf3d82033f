//! Run configuration: flag values merged with an optional JSON config
//! file (file wins) and an environment default for the output directory.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SUSY_VCS_OUT";

/// Fully resolved run settings, echoed verbatim into every report. The
/// model fields are populated only by a config file and, when present,
/// override the corresponding subcommand flags.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Truncation level for Fock-space constructions.
    pub n_trunc: usize,
    pub frame_tol: f64,
    pub moment_tol: f64,
    pub residual_tol: f64,
    pub out_dir: PathBuf,
    /// Seed for the randomized spot checks.
    pub seed: u64,
    pub model: Option<String>,
    pub m: Option<u32>,
    pub h: Option<f64>,
    pub x_max: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_trunc: 40,
            frame_tol: 1e-8,
            moment_tol: 1e-10,
            residual_tol: 1e-6,
            out_dir: PathBuf::from("."),
            seed: 7,
            model: None,
            m: None,
            h: None,
            x_max: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.n_trunc < 2 {
            bail!("n_trunc must be at least 2, got {}", self.n_trunc);
        }
        for (name, v) in [
            ("frame_tol", self.frame_tol),
            ("moment_tol", self.moment_tol),
            ("residual_tol", self.residual_tol),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                bail!("{name} must be a positive finite number, got {v}");
            }
        }
        if let Some(m) = self.m {
            if m < 1 {
                bail!("m must be at least 1");
            }
        }
        if let Some(model) = &self.model {
            if model != "oscillator" && model != "landau" {
                bail!("model must be oscillator or landau, got {model:?}");
            }
        }
        for (name, v) in [("h", self.h), ("x_max", self.x_max)] {
            if let Some(v) = v {
                if !(v > 0.0) || !v.is_finite() {
                    bail!("{name} must be a positive finite number, got {v}");
                }
            }
        }
        Ok(())
    }

    pub fn path(&self, file: &str) -> PathBuf {
        self.out_dir.join(file)
    }
}

/// Optional overrides loadable from a JSON file. Unknown keys are
/// rejected. Present fields override the corresponding flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n_trunc: Option<usize>,
    pub frame_tol: Option<f64>,
    pub moment_tol: Option<f64>,
    pub residual_tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub model: Option<String>,
    pub m: Option<u32>,
    pub h: Option<f64>,
    pub x_max: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: FileConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        Ok(cfg)
    }
}

/// Flag values that the config file may override.
#[derive(Debug, Default)]
pub struct FlagValues {
    pub n_trunc: Option<usize>,
    pub frame_tol: Option<f64>,
    pub moment_tol: Option<f64>,
    pub residual_tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

/// Resolution order per field: config file, then flag, then (for the
/// output directory) the environment variable, then the default.
pub fn resolve(file: Option<FileConfig>, flags: FlagValues) -> anyhow::Result<RunConfig> {
    let defaults = RunConfig::default();
    let env_out = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let file = file.unwrap_or_default();
    let cfg = RunConfig {
        n_trunc: file.n_trunc.or(flags.n_trunc).unwrap_or(defaults.n_trunc),
        frame_tol: file
            .frame_tol
            .or(flags.frame_tol)
            .unwrap_or(defaults.frame_tol),
        moment_tol: file
            .moment_tol
            .or(flags.moment_tol)
            .unwrap_or(defaults.moment_tol),
        residual_tol: file
            .residual_tol
            .or(flags.residual_tol)
            .unwrap_or(defaults.residual_tol),
        out_dir: file
            .out_dir
            .or(flags.out)
            .or(env_out)
            .unwrap_or(defaults.out_dir),
        seed: file.seed.or(flags.seed).unwrap_or(defaults.seed),
        model: file.model,
        m: file.m,
        h: file.h,
        x_max: file.x_max,
    };
    cfg.validate()?;
    Ok(cfg)
}
