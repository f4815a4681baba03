use std::path::{Path, PathBuf};

use serde::Deserialize;

use fusion_orbit::exec::ExecMode;
use fusion_orbit::report::Format;

/// Settings read from the `--config` TOML file. Command-line flags override
/// every field.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest accepted cohomological degree `n`.
    pub max_degree: usize,
    /// Largest accepted limit degree (`i` or `d`).
    pub max_limit_degree: usize,
    /// Largest accepted group order.
    pub max_order: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub mode: Option<ExecMode>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_degree: 16,
            max_limit_degree: 6,
            max_order: fusion_orbit::group::DEFAULT_MAX_ORDER,
            cache_dir: None,
            format: None,
            mode: None,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}
