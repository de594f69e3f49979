//! Layered settings: built-in defaults, then an optional JSON config file,
//! then `AREA_MOMENTS_*` environment variables, then command-line flags.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use area_moments::walk::DEFAULT_STATE_BUDGET;
use clap::ValueEnum;
use serde::Deserialize;

pub const CONFIG_ENV: &str = "AREA_MOMENTS_CONFIG";
pub const DEFAULT_CONFIG_FILE: &str = "area-moments.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub cache_path: Option<PathBuf>,
    pub output_format: Format,
    pub tolerance: f64,
    pub state_budget: u64,
    pub quadrature_margin: usize,
}

/// One layer of overrides. Unset fields leave the layer below untouched.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub cache: Option<PathBuf>,
    pub format: Option<Format>,
    pub tolerance: Option<f64>,
    pub budget: Option<u64>,
    pub quad_margin: Option<usize>,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            cache_path: default_cache_path(),
            output_format: Format::Pretty,
            tolerance: 1e-9,
            state_budget: DEFAULT_STATE_BUDGET,
            quadrature_margin: 0,
        }
    }
}

fn default_cache_path() -> Option<PathBuf> {
    let base = env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("area-moments").join("moments.json"))
}

impl CliConfig {
    fn apply(&mut self, o: Overrides) {
        if let Some(v) = o.cache {
            self.cache_path = Some(v);
        }
        if let Some(v) = o.format {
            self.output_format = v;
        }
        if let Some(v) = o.tolerance {
            self.tolerance = v;
        }
        if let Some(v) = o.budget {
            self.state_budget = v;
        }
        if let Some(v) = o.quad_margin {
            self.quadrature_margin = v;
        }
    }

    /// Resolves all layers. `config_file` comes from `--config`; without it the
    /// `AREA_MOMENTS_CONFIG` path or `./area-moments.json` is used if present.
    pub fn resolve(config_file: Option<&Path>, flags: Overrides) -> Result<Self> {
        let mut config = Self::default();
        let file = match config_file {
            Some(p) => Some(p.to_path_buf()),
            None => env::var_os(CONFIG_ENV).map(PathBuf::from).or_else(|| {
                let p = PathBuf::from(DEFAULT_CONFIG_FILE);
                p.exists().then_some(p)
            }),
        };
        if let Some(path) = file {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            let layer: Overrides = serde_json::from_str(&text)
                .with_context(|| format!("parsing config file {}", path.display()))?;
            config.apply(layer);
        }
        config.apply(env_overrides()?);
        config.apply(flags);
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            bail!("tolerance must be a positive number, got {}", self.tolerance);
        }
        if self.state_budget == 0 {
            bail!("state budget must be positive");
        }
        Ok(())
    }
}

fn env_var<T: std::str::FromStr>(name: &str) -> Result<Option<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    match env::var(name) {
        Ok(s) if !s.is_empty() => Ok(Some(
            s.parse().with_context(|| format!("invalid value {s:?} in {name}"))?,
        )),
        _ => Ok(None),
    }
}

fn env_overrides() -> Result<Overrides> {
    let format = match env::var("AREA_MOMENTS_FORMAT") {
        Ok(s) if !s.is_empty() => Some(
            Format::from_str(&s, true)
                .map_err(|_| anyhow::anyhow!("invalid value {s:?} in AREA_MOMENTS_FORMAT"))?,
        ),
        _ => None,
    };
    Ok(Overrides {
        cache: env::var_os("AREA_MOMENTS_CACHE")
            .filter(|s| !s.is_empty())
            .map(PathBuf::from),
        format,
        tolerance: env_var("AREA_MOMENTS_TOLERANCE")?,
        budget: env_var("AREA_MOMENTS_BUDGET")?,
        quad_margin: env_var("AREA_MOMENTS_QUAD_MARGIN")?,
    })
}
