//! Session configuration: defaults, a `key=value` file, then flags.

use std::path::{Path, PathBuf};

use thiserror::Error;

use frobforge_core::frobenius::DEFAULT_PUSHFORWARD_BOUND;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

impl std::str::FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(ConfigError(format!("unknown format '{other}', expected json or table"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("configuration error: {0}")]
pub struct ConfigError(pub String);

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub e_list: Vec<u32>,
    /// Upper homological degree; `None` picks `dim R + 1` per ring.
    pub max_i: Option<usize>,
    pub pushforward_bound: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            e_list: vec![1, 2, 3],
            max_i: None,
            pushforward_bound: DEFAULT_PUSHFORWARD_BOUND,
            cache_dir: None,
            format: Format::Json,
            seed: 0,
            parallel: false,
        }
    }
}

/// Parses a comma-separated list of Frobenius exponents, each at least 1.
pub fn parse_e_list(s: &str) -> Result<Vec<u32>, ConfigError> {
    let list = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| ConfigError(format!("bad exponent '{}'", t.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    if list.is_empty() || list.contains(&0) {
        return Err(ConfigError("the e list must be nonempty with entries >= 1".into()));
    }
    Ok(list)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError(format!("bad value '{v}' for {key}")))
}

impl SessionConfig {
    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key=value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "e_list" => self.e_list = parse_e_list(value)?,
                "max_i" => self.max_i = if value == "auto" { None } else { Some(parse_num(key, value)?) },
                "pushforward_bound" => self.pushforward_bound = parse_num(key, value)?,
                "cache_dir" => self.cache_dir = Some(PathBuf::from(value)),
                "format" => self.format = value.parse()?,
                "seed" => self.seed = parse_num(key, value)?,
                "parallel" => self.parallel = parse_num(key, value)?,
                other => return Err(ConfigError(format!("line {}: unknown key '{other}'", n + 1))),
            }
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let mut cfg = SessionConfig::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }
}
