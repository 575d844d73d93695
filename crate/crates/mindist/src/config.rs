//! Estimator configuration files and `key=value` overrides.
//!
//! A file holds either `key = value` lines (TOML) or one JSON object. Keys
//! are the field names of [`GaConfig`] and [`MimConfig`]; missing keys keep
//! their defaults and unknown keys are rejected.

use std::fs;
use std::path::Path;

use mindist_core::evolve::GaConfig;
use mindist_core::mim::MimConfig;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Parsed overrides, not yet applied to any defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides(Map<String, Value>);

impl Overrides {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let json = path.extension().is_some_and(|e| e == "json");
        Self::parse(&text, json).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str, json: bool) -> Result<Self> {
        let value: Value = if json {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        };
        match value {
            Value::Object(map) => Ok(Overrides(map)),
            _ => Err(Error::Config("configuration must be a table of key/value pairs".into())),
        }
    }

    /// `key=value` with the value read as a TOML scalar, or as a bare string
    /// when that fails (so `crossover_kind=uniform` works unquoted).
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (key, raw) =
            pair.split_once('=').ok_or_else(|| Error::Config(format!("expected key=value, got {pair:?}")))?;
        let value = toml::from_str::<Map<String, Value>>(&format!("v = {raw}"))
            .ok()
            .and_then(|mut m| m.remove("v"))
            .unwrap_or_else(|| Value::String(raw.trim().to_string()));
        self.0.insert(key.trim().to_string(), value);
        Ok(())
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_string(), value.into());
    }

    pub fn extend(&mut self, other: &Overrides) {
        self.0.extend(other.0.iter().map(|(k, v)| (k.clone(), v.clone())));
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    /// Keys applied on top of `defaults`; keys that are not fields of `T`
    /// are skipped here and reported by [`Overrides::unknown_keys`].
    pub fn apply<T: Serialize + DeserializeOwned>(&self, defaults: &T) -> Result<T> {
        let Value::Object(mut base) = serde_json::to_value(defaults).map_err(|e| Error::Internal(e.to_string()))?
        else {
            return Err(Error::Internal("configuration did not serialize to an object".into()));
        };
        for (k, v) in &self.0 {
            if base.contains_key(k) {
                base.insert(k.clone(), v.clone());
            }
        }
        serde_json::from_value(Value::Object(base)).map_err(|e| Error::Config(e.to_string()))
    }

    /// Keys that belong to none of the given field sets.
    pub fn unknown_keys(&self, known: &[&[String]]) -> Vec<String> {
        self.0.keys().filter(|k| !known.iter().any(|set| set.contains(k))).cloned().collect()
    }
}

pub fn field_names<T: Serialize>(value: &T) -> Vec<String> {
    match serde_json::to_value(value) {
        Ok(Value::Object(m)) => m.keys().cloned().collect(),
        _ => Vec::new(),
    }
}

/// Fields accepted by `estimate` and `table` beyond the estimator configs.
pub const RUN_KEYS: &[&str] = &["seed", "budget", "parallel", "pless"];

pub fn reject_unknown(ov: &Overrides, ga: &GaConfig, mim: &MimConfig) -> Result<()> {
    let run: Vec<String> = RUN_KEYS.iter().map(|s| s.to_string()).collect();
    let unknown = ov.unknown_keys(&[&field_names(ga), &field_names(mim), &run]);
    if unknown.is_empty() {
        Ok(())
    } else {
        Err(Error::Config(format!("unknown configuration keys: {}", unknown.join(", "))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mindist_core::evolve::{CrossoverKind, Variant};

    #[test]
    fn toml_and_json_agree() {
        let t = Overrides::parse("population_size = 200\ncrossover_kind = \"uniform\"\n", false).unwrap();
        let j = Overrides::parse(r#"{"population_size": 200, "crossover_kind": "uniform"}"#, true).unwrap();
        assert_eq!(t, j);
        let cfg = t.apply(&GaConfig::variant_b()).unwrap();
        assert_eq!((cfg.population_size, cfg.crossover_kind, cfg.variant), (200, CrossoverKind::Uniform, Variant::B));
    }

    #[test]
    fn pairs_and_unknown_keys() {
        let mut o = Overrides::default();
        o.set_pair("nb_test=7").unwrap();
        o.set_pair("crossover_kind=two_point").unwrap();
        o.set_pair("elite_count=10").unwrap();
        assert!(o.set_pair("nonsense").is_err());
        let ga = GaConfig::variant_a();
        let mim = MimConfig { d0: 1, d1: 5, nb_test: 1, error_max: 1, osd_order: 1, rng_seed: 0 };
        assert!(reject_unknown(&o, &ga, &mim).is_ok());
        assert_eq!(o.apply(&mim).unwrap().nb_test, 7);
        assert_eq!(o.apply(&ga).unwrap().elite_count, Some(10));
        o.set_pair("popsize=3").unwrap();
        assert!(matches!(reject_unknown(&o, &ga, &mim), Err(Error::Config(m)) if m.contains("popsize")));
    }

    #[test]
    fn bad_values_are_config_errors() {
        let o = Overrides::parse("population_size = \"many\"", false).unwrap();
        assert!(matches!(o.apply(&GaConfig::variant_a()), Err(Error::Config(_))));
        assert!(Overrides::parse("[1, 2]", true).is_err());
    }
}
