//! Option values merged from command-line flags and a `--config` file.
//!
//! A config file is a flat TOML or JSON table whose keys are the long flag
//! names (`phi`, `weight`, `g`, `K`, `horizon`, ...). Non-string values are
//! re-encoded as JSON text and go through the same parsers as flags, so
//! `g = [1, -2]` and `--g "[1,-2]"` are equivalent. Flags win over the file.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

pub const KNOWN_KEYS: &[&str] = &[
    "phi", "weight", "weights", "g", "gs", "k", "horizon", "eps", "strategy", "seed", "trials",
    "f", "h", "ns", "kind", "y", "step", "x_max", "precision", "output", "csv",
];

#[derive(Debug, Default)]
pub struct Settings {
    flags: BTreeMap<&'static str, Vec<String>>,
    file: BTreeMap<String, Vec<String>>,
}

impl Settings {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Settings::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let value: serde_json::Value = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        } else {
            let t: toml::Table = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            serde_json::to_value(t)?
        };
        let table = value
            .as_object()
            .ok_or_else(|| anyhow!("config {} must be a table", path.display()))?;
        let mut file = BTreeMap::new();
        for (key, v) in table {
            let norm = key.to_ascii_lowercase().replace('-', "_");
            if !KNOWN_KEYS.contains(&norm.as_str()) {
                bail!("unknown config key `{key}` (known: {})", KNOWN_KEYS.join(", "));
            }
            let texts = match (norm.as_str(), v) {
                ("weights" | "gs", serde_json::Value::Array(items)) => items.iter().map(text_of).collect(),
                _ => vec![text_of(v)],
            };
            file.insert(norm, texts);
        }
        Ok(Settings {
            flags: BTreeMap::new(),
            file,
        })
    }

    pub fn flag(&mut self, key: &'static str, value: Option<String>) {
        if let Some(v) = value {
            self.flags.insert(key, vec![v]);
        }
    }

    pub fn flag_list(&mut self, key: &'static str, values: Vec<String>) {
        if !values.is_empty() {
            self.flags.insert(key, values);
        }
    }

    pub fn list(&self, key: &str) -> Vec<String> {
        self.flags
            .get(key)
            .or_else(|| self.file.get(key))
            .cloned()
            .unwrap_or_default()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.flags
            .get(key)
            .or_else(|| self.file.get(key))
            .and_then(|v| v.first())
            .map(String::as_str)
    }

    pub fn text_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.get(key).unwrap_or(default)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| anyhow!("missing required option --{}", key.replace('_', "-")))
    }

    pub fn parse_or<T>(&self, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: std::error::Error + Send + Sync + 'static,
    {
        match self.get(key) {
            Some(s) => s
                .trim()
                .parse()
                .with_context(|| format!("invalid value `{s}` for --{}", key.replace('_', "-"))),
            None => Ok(default),
        }
    }
}

fn text_of(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
