//! Flag / config-file / environment resolution.
//!
//! Precedence: command-line flag, then the `--config` JSON file (keys are the
//! long flag names; `-` and `_` are interchangeable), then the built-in
//! default. `SEMIPHOTON_OUT` overrides every other source of the output
//! directory.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{Map, Value};

use semiphoton::thresholds::Thresholds;

use crate::error::{CliError, Result};

pub const OUT_ENV: &str = "SEMIPHOTON_OUT";

#[derive(Debug, Clone, Default)]
pub struct Settings {
    file: Map<String, Value>,
}

impl Settings {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        match serde_json::from_str(text).map_err(|e| e.to_string())? {
            Value::Object(file) => Ok(Self { file }),
            _ => Err("config must be a JSON object".into()),
        }
    }

    fn lookup(&self, key: &str) -> Option<&Value> {
        self.file
            .get(key)
            .or_else(|| self.file.get(&key.replace('-', "_")))
            .or_else(|| self.file.get(&key.replace('_', "-")))
    }

    /// Config value for `key`, parsed with the same `FromStr` the flag uses.
    pub fn config<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        let Some(v) = self.lookup(key) else { return Ok(None) };
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(_) | Value::Bool(_) => v.to_string(),
            _ => return Err(CliError::usage(format!("config key `{key}` must be a scalar"))),
        };
        text.parse()
            .map(Some)
            .map_err(|e| CliError::usage(format!("config key `{key}`: {e}")))
    }

    pub fn pick<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.config(key)?.unwrap_or(default)),
        }
    }

    pub fn pick_opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.config(key),
        }
    }

    pub fn output_dir(&self, flag: Option<PathBuf>, env: Option<PathBuf>) -> Result<Option<PathBuf>> {
        match env.filter(|p| !p.as_os_str().is_empty()) {
            Some(p) => Ok(Some(p)),
            None => self.pick_opt(flag, "output-dir"),
        }
    }

    /// Defaults, then the config's `thresholds` object, then `--threshold
    /// name=value` flags. Unknown names are rejected.
    pub fn thresholds(&self, overrides: &[String]) -> Result<Thresholds> {
        let mut table = serde_json::to_value(Thresholds::DEFAULT).expect("thresholds serialize");
        let obj = table.as_object_mut().expect("thresholds are an object");
        if let Some(v) = self.lookup("thresholds") {
            let Value::Object(m) = v else {
                return Err(CliError::usage("config key `thresholds` must be an object"));
            };
            for (k, v) in m {
                obj.insert(k.clone(), v.clone());
            }
        }
        for o in overrides {
            let (k, v) = o
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("--threshold expects name=value, got `{o}`")))?;
            let v: Value = serde_json::from_str(v.trim())
                .map_err(|_| CliError::usage(format!("--threshold {k}: `{v}` is not a number")))?;
            obj.insert(k.trim().replace('-', "_"), v);
        }
        serde_json::from_value(table).map_err(|e| CliError::usage(format!("thresholds: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_beats_config_beats_default() {
        let s = Settings::from_json(r#"{"samples": 50, "output_dir": "cfg-out"}"#).unwrap();
        assert_eq!(s.pick(Some(7usize), "samples", 1000).unwrap(), 7);
        assert_eq!(s.pick(None, "samples", 1000usize).unwrap(), 50);
        assert_eq!(s.pick(None, "seed", 42u64).unwrap(), 42);
        assert_eq!(s.output_dir(None, None).unwrap(), Some(PathBuf::from("cfg-out")));
        assert_eq!(
            s.output_dir(Some("flag".into()), Some("env".into())).unwrap(),
            Some(PathBuf::from("env"))
        );
    }

    #[test]
    fn threshold_overrides() {
        let s = Settings::from_json(r#"{"thresholds": {"norm_drift": 1e-3}}"#).unwrap();
        let t = s.thresholds(&["fierz-relative=0.5".into()]).unwrap();
        assert_eq!(t.norm_drift, 1e-3);
        assert_eq!(t.fierz_relative, 0.5);
        assert_eq!(t.energy_drift, Thresholds::DEFAULT.energy_drift);
        assert!(s.thresholds(&["no_such=1".into()]).is_err());
        assert!(s.thresholds(&["norm_drift".into()]).is_err());
    }

    #[test]
    fn bad_config_values_are_usage_errors() {
        let s = Settings::from_json(r#"{"samples": "many", "px": [1]}"#).unwrap();
        assert!(matches!(s.pick(None, "samples", 1usize), Err(CliError::Usage(_))));
        assert!(matches!(s.pick(None, "px", 0.0f64), Err(CliError::Usage(_))));
        assert!(Settings::from_json("[1, 2]").is_err());
    }
}
