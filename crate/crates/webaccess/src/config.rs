//! Optional `key=value` configuration file. Command-line flags take
//! precedence over anything set here.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

pub const KEYS: [&str; 6] = [
    "theta",
    "k_sigma",
    "min_requests",
    "underflow_floor",
    "log_format",
    "normalize",
];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config line {0}: expected `key=value`")]
    Syntax(usize),
    #[error("config line {0}: unknown key `{1}`")]
    UnknownKey(usize, String),
    #[error("config key `{0}`: invalid value `{1}`")]
    BadValue(String, String),
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax(i + 1))?;
            let k = k.trim().replace('-', "_");
            if !KEYS.contains(&k.as_str()) {
                return Err(ConfigError::UnknownKey(i + 1, k));
            }
            values.insert(k, v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| ConfigError::BadValue(key.into(), v.clone())),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}
