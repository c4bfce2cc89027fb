//! Optional TOML config file, located by `--config` or the `GCS_CONFIG`
//! environment variable. Precedence is total: flag > config file > default.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

pub const CONFIG_ENV: &str = "GCS_CONFIG";

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dim: Option<usize>,
    pub interior_dim: Option<usize>,
    pub tail_tol: Option<f64>,
    pub safe_radius: Option<f64>,
    /// Per-check tolerance overrides for the verify suite.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

pub fn config_path(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from))
}

pub fn load(flag: Option<&Path>) -> Result<FileConfig, String> {
    let Some(path) = config_path(flag) else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

/// Environment settings after precedence resolution.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub dim: usize,
    pub interior_dim: Option<usize>,
    pub tail_tol: f64,
    pub safe_radius: f64,
    pub tolerances: Vec<(String, f64)>,
}

pub fn resolve(
    file: &FileConfig,
    flag_dim: Option<usize>,
    flag_interior: Option<usize>,
    flag_tail_tol: Option<f64>,
) -> Resolved {
    Resolved {
        dim: flag_dim.or(file.dim).unwrap_or(128),
        interior_dim: flag_interior.or(file.interior_dim),
        tail_tol: flag_tail_tol
            .or(file.tail_tol)
            .unwrap_or(gcs_core::space::DEFAULT_TAIL_TOL),
        safe_radius: file
            .safe_radius
            .unwrap_or(gcs_core::operators::DEFAULT_SAFE_RADIUS),
        tolerances: file.tolerances.iter().map(|(k, v)| (k.clone(), *v)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_without_config() {
        let r = resolve(&FileConfig::default(), None, None, None);
        assert_eq!(r.dim, 128);
        assert_eq!(r.tail_tol, 1e-10);
        assert!(r.tolerances.is_empty());
    }

    #[test]
    fn flag_beats_config_beats_default() {
        let file: FileConfig =
            toml::from_str("dim = 64\ntail_tol = 1e-8\n[tolerances]\n\"eq24a-square\" = 1e-6\n")
                .unwrap();
        let r = resolve(&file, Some(256), None, None);
        assert_eq!(r.dim, 256); // flag wins
        assert_eq!(r.tail_tol, 1e-8); // config wins over default
        assert_eq!(r.tolerances, vec![("eq24a-square".to_string(), 1e-6)]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("dimension = 64\n").is_err());
    }
}
