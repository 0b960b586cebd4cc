//! Parameter schemas, TOML config sections and `--key value` overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Float,
    Int,
    /// One of a fixed set of words.
    Choice(&'static [&'static str]),
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

impl ParamSpec {
    pub const fn float(name: &'static str, default: &'static str, help: &'static str) -> Self {
        Self { name, kind: Kind::Float, default, help }
    }

    pub const fn int(name: &'static str, default: &'static str, help: &'static str) -> Self {
        Self { name, kind: Kind::Int, default, help }
    }

    pub const fn choice(name: &'static str, options: &'static [&'static str], default: &'static str, help: &'static str) -> Self {
        Self { name, kind: Kind::Choice(options), default, help }
    }

    fn parse(&self, raw: &str) -> Result<Value, CliError> {
        let bad = |what: &str| CliError::Schema(format!("--{} expects {what}, got `{raw}`", self.name));
        match self.kind {
            Kind::Float => {
                let v: f64 = raw.trim().parse().map_err(|_| bad("a number"))?;
                if !v.is_finite() {
                    return Err(bad("a finite number"));
                }
                Ok(Value::Float(v))
            }
            Kind::Int => raw.trim().parse().map(Value::Int).map_err(|_| bad("an integer")),
            Kind::Choice(options) => options
                .iter()
                .find(|o| o.eq_ignore_ascii_case(raw.trim()))
                .map(|o| Value::Choice(o))
                .ok_or_else(|| bad(&format!("one of {}", options.join("|")))),
        }
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            Kind::Float => "float".to_string(),
            Kind::Int => "int".to_string(),
            Kind::Choice(o) => o.join("|"),
        };
        write!(f, "--{} <{kind}> (default {}): {}", self.name, self.default, self.help)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Choice(&'static str),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Float(v) => write!(f, "{v:?}"),
            Value::Int(v) => write!(f, "{v}"),
            Value::Choice(s) => f.write_str(s),
        }
    }
}

/// Fully resolved parameter set of one run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params {
    values: BTreeMap<String, Value>,
}

impl Params {
    /// Defaults, then the config section, then command-line pairs.
    pub fn resolve(schema: &[ParamSpec], section: &[(String, String)], flags: &[(String, String)]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for spec in schema {
            values.insert(spec.name.to_string(), spec.parse(spec.default)?);
        }
        for (key, raw) in section.iter().chain(flags) {
            let spec = schema
                .iter()
                .find(|s| s.name == key)
                .ok_or_else(|| CliError::Schema(format!("unknown parameter `{key}`")))?;
            values.insert(key.clone(), spec.parse(raw)?);
        }
        Ok(Self { values })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn get(&self, key: &str) -> &Value {
        self.values.get(key).unwrap_or_else(|| panic!("parameter `{key}` missing from schema"))
    }

    pub fn f64(&self, key: &str) -> f64 {
        match *self.get(key) {
            Value::Float(v) => v,
            Value::Int(v) => v as f64,
            Value::Choice(_) => panic!("parameter `{key}` is not numeric"),
        }
    }

    pub fn int(&self, key: &str) -> i64 {
        match *self.get(key) {
            Value::Int(v) => v,
            _ => panic!("parameter `{key}` is not an integer"),
        }
    }

    /// Integer parameter constrained to `min..=max`.
    pub fn count(&self, key: &str, min: i64, max: i64) -> Result<usize, CliError> {
        let v = self.int(key);
        if v < min || v > max {
            return Err(CliError::Schema(format!("--{key} = {v} outside {min}..={max}")));
        }
        Ok(v as usize)
    }

    /// Float parameter that must be strictly positive.
    pub fn positive(&self, key: &str) -> Result<f64, CliError> {
        let v = self.f64(key);
        if !(v > 0.0) {
            return Err(CliError::Schema(format!("--{key} = {v} must be positive")));
        }
        Ok(v)
    }

    pub fn choice(&self, key: &str) -> &'static str {
        match *self.get(key) {
            Value::Choice(s) => s,
            _ => panic!("parameter `{key}` is not a choice"),
        }
    }
}

/// Key/value pairs of section `[scenario]` in a TOML config file.
pub fn config_section(path: &Path, scenario: &str) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let table: toml::Table = text.parse().map_err(|e| CliError::Schema(format!("config {}: {e}", path.display())))?;
    for (key, value) in &table {
        if !value.is_table() {
            return Err(CliError::Schema(format!("config key `{key}` must sit inside a [scenario] section")));
        }
    }
    let Some(section) = table.get(scenario).and_then(|v| v.as_table()) else {
        return Ok(Vec::new());
    };
    section
        .iter()
        .map(|(k, v)| {
            let raw = match v {
                toml::Value::Integer(i) => i.to_string(),
                toml::Value::Float(f) => format!("{f:?}"),
                toml::Value::String(s) => s.clone(),
                other => return Err(CliError::Schema(format!("config value for `{k}` has unsupported type {}", other.type_str()))),
            };
            Ok((k.clone(), raw))
        })
        .collect()
}

/// Split `--key value` / `--key=value` words into pairs.
pub fn parse_pairs(words: &[String]) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    let mut it = words.iter();
    while let Some(w) = it.next() {
        let Some(key) = w.strip_prefix("--") else {
            return Err(CliError::Usage(format!("expected `--key value`, found `{w}`")));
        };
        if let Some((k, v)) = key.split_once('=') {
            out.push((k.to_string(), v.to_string()));
        } else {
            let v = it.next().ok_or_else(|| CliError::Usage(format!("missing value for --{key}")))?;
            out.push((key.to_string(), v.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMA: &[ParamSpec] = &[
        ParamSpec::float("radius", "1", "ring radius"),
        ParamSpec::int("mmax", "5", "largest |M|"),
        ParamSpec::choice("kind", &["fixed", "periodic"], "fixed", "boundary"),
    ];

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn flags_override_config() {
        let p = Params::resolve(SCHEMA, &pairs(&[("radius", "2.5"), ("mmax", "3")]), &pairs(&[("radius", "4")])).unwrap();
        assert_eq!(p.f64("radius"), 4.0);
        assert_eq!(p.int("mmax"), 3);
        assert_eq!(p.choice("kind"), "fixed");
    }

    #[test]
    fn unknown_and_malformed_rejected() {
        assert!(matches!(Params::resolve(SCHEMA, &[], &pairs(&[("radios", "1")])), Err(CliError::Schema(_))));
        assert!(matches!(Params::resolve(SCHEMA, &[], &pairs(&[("mmax", "1.5")])), Err(CliError::Schema(_))));
        assert!(matches!(Params::resolve(SCHEMA, &[], &pairs(&[("radius", "nan")])), Err(CliError::Schema(_))));
        assert!(matches!(Params::resolve(SCHEMA, &[], &pairs(&[("kind", "open")])), Err(CliError::Schema(_))));
    }

    #[test]
    fn pair_syntax() {
        let w: Vec<String> = ["--flux", "-0.3", "--mmax=4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_pairs(&w).unwrap(), pairs(&[("flux", "-0.3"), ("mmax", "4")]));
        assert!(parse_pairs(&w[..1]).is_err());
        assert!(parse_pairs(&["flux".to_string()]).is_err());
    }

    #[test]
    fn float_display_round_trips() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 12345.678] {
            let s = Value::Float(v).to_string();
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }
}
