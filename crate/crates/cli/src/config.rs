//! `key = value` configuration files with flag overrides.
//!
//! Every experiment is reproducible from a config file alone; flags
//! exist for ad-hoc overrides and always win over the file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

/// Raw key/value pairs from a config file.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
    path: PathBuf,
}

#[derive(Debug)]
pub struct ConfigError {
    pub path: PathBuf,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}",
            self.path.display(),
            self.line,
            self.message
        )
    }
}

impl std::error::Error for ConfigError {}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            path: path.to_path_buf(),
            line: 0,
            message: e.to_string(),
        })?;
        let mut values = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError {
                path: path.to_path_buf(),
                line: idx + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self {
            values,
            path: path.to_path_buf(),
        })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parses the value under `key`, when present.
    pub fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| ConfigError {
                path: self.path.clone(),
                line: 0,
                message: format!("invalid value `{raw}` for `{key}`: {e}"),
            }),
        }
    }
}

/// Flag value if given, else config value, else the default.
pub fn resolve<T: Clone>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

/// Flag value if given, else config value.
pub fn resolve_opt<T: Clone>(flag: Option<T>, config: Option<T>) -> Option<T> {
    flag.or(config)
}
