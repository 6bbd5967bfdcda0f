use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::output::Format;

/// Defaults read from an optional TOML file; command-line flags win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub grid: Option<Vec<usize>>,
    pub tol: Option<f64>,
    pub delta: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        let cfg: FileConfig = toml::from_str(&text).map_err(|e| CliError::Config {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        cfg.validate().map_err(|message| CliError::Config {
            path: path.display().to_string(),
            message,
        })?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        if let Some(t) = self.tol {
            check_tol(t)?;
        }
        if let Some(g) = &self.grid {
            check_grid(g)?;
        }
        Ok(())
    }
}

pub fn check_tol(t: f64) -> Result<(), String> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(format!("tolerance must be positive, got {t}"))
    }
}

pub fn check_grid(g: &[usize]) -> Result<(), String> {
    if g.is_empty() || g.iter().any(|&n| n < 2) {
        Err(format!("grid sizes must be at least 2, got {g:?}"))
    } else {
        Ok(())
    }
}

/// Effective settings of one run after merging flags over the file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub grid: Option<Vec<usize>>,
    pub alpha: Option<f64>,
    pub seed: Option<u64>,
    pub delta: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn merge(file: FileConfig, format: Option<Format>, out: Option<PathBuf>) -> Self {
        Self {
            format: format.or(file.format).unwrap_or(Format::Json),
            out: out.or(file.out),
            tol: file.tol,
            grid: file.grid,
            alpha: file.alpha,
            seed: file.seed,
            delta: file.delta,
        }
    }

    pub fn tol(&self, flag: Option<f64>, default: f64) -> CliResult<f64> {
        let t = flag.or(self.tol).unwrap_or(default);
        check_tol(t).map_err(CliError::Usage)?;
        Ok(t)
    }

    pub fn grid(&self, flag: Option<Vec<usize>>) -> CliResult<Option<Vec<usize>>> {
        let g = flag.or_else(|| self.grid.clone());
        if let Some(g) = &g {
            check_grid(g).map_err(CliError::Usage)?;
        }
        Ok(g)
    }
}
