//! Line-oriented `key = value` configuration files.
//!
//! `#` starts a comment anywhere on a line; blank lines are skipped; keys are
//! dotted lowercase identifiers from a fixed vocabulary. Unknown and
//! duplicate keys are hard errors so that typos cannot silently fall back to
//! defaults.
//!
//! [`ConfigReader`] resolves values with their defaults and records every
//! key a command actually consumed, together with its effective value in
//! canonical form. Output files replay that record as `# key = value` lines,
//! which — stripped of the leading `# ` — form a config that reproduces the
//! run byte for byte.

use std::collections::BTreeMap;
use std::path::Path;

use dki_core::io::format_f64;

use crate::errors::CliError;

/// The full key vocabulary.
const KNOWN_KEYS: &[&str] = &[
    "bounds.kappa_list",
    "bounds.n_list",
    "build.max_codewords",
    "build.saturation_t",
    "build.theta",
    "channel.a",
    "channel.g_max",
    "channel.gamma",
    "channel.sigma2",
    "code.b",
    "code.kappa",
    "code.n",
    "seed",
    "sim.codebook",
    "sim.coupling",
    "sim.distances",
    "sim.experiment",
    "sim.grid_points",
    "sim.message_index",
    "sim.message_index2",
    "sim.target_policy",
    "sim.target_size",
    "sim.trials",
    "sweep.kappa_list",
    "sweep.n_list",
];

pub fn load(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut values = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "line {lineno}: expected `key = value`, got `{line}`"
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(CliError::Config(format!("line {lineno}: empty key")));
        }
        if value.is_empty() {
            return Err(CliError::Config(format!(
                "line {lineno}: key `{key}` has an empty value"
            )));
        }
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Config(format!(
                "line {lineno}: unknown key `{key}`"
            )));
        }
        if values.insert(key.to_string(), value.to_string()).is_some() {
            return Err(CliError::Config(format!(
                "line {lineno}: duplicate key `{key}`"
            )));
        }
    }
    Ok(values)
}

fn missing(key: &str) -> CliError {
    CliError::Config(format!("missing required config key `{key}`"))
}

fn bad_value(key: &str, value: &str, wanted: &str) -> CliError {
    CliError::Config(format!("key `{key}`: expected {wanted}, got `{value}`"))
}

/// Resolves config values against defaults and CLI overrides, recording the
/// effective value of every consumed key for the output echo.
pub struct ConfigReader<'a> {
    values: &'a BTreeMap<String, String>,
    echo: BTreeMap<String, String>,
}

impl<'a> ConfigReader<'a> {
    pub fn new(values: &'a BTreeMap<String, String>) -> Self {
        ConfigReader {
            values,
            echo: BTreeMap::new(),
        }
    }

    fn raw(&self, key: &str) -> Option<&'a str> {
        self.values.get(key).map(String::as_str)
    }

    fn parse_f64(key: &str, s: &str) -> Result<f64, CliError> {
        s.parse().map_err(|_| bad_value(key, s, "a number"))
    }

    fn parse_u64(key: &str, s: &str) -> Result<u64, CliError> {
        s.parse()
            .map_err(|_| bad_value(key, s, "a non-negative integer"))
    }

    fn parse_usize(key: &str, s: &str) -> Result<usize, CliError> {
        s.parse()
            .map_err(|_| bad_value(key, s, "a non-negative integer"))
    }

    pub fn require_f64(&mut self, key: &str) -> Result<f64, CliError> {
        let s = self.raw(key).ok_or_else(|| missing(key))?;
        let v = Self::parse_f64(key, s)?;
        self.echo.insert(key.into(), format_f64(v));
        Ok(v)
    }

    pub fn f64_or(&mut self, key: &str, default: f64) -> Result<f64, CliError> {
        let v = match self.raw(key) {
            Some(s) => Self::parse_f64(key, s)?,
            None => default,
        };
        self.echo.insert(key.into(), format_f64(v));
        Ok(v)
    }

    /// Optional value; echoed only when present.
    pub fn opt_f64(&mut self, key: &str) -> Result<Option<f64>, CliError> {
        match self.raw(key) {
            Some(s) => {
                let v = Self::parse_f64(key, s)?;
                self.echo.insert(key.into(), format_f64(v));
                Ok(Some(v))
            }
            None => Ok(None),
        }
    }

    pub fn require_usize(&mut self, key: &str) -> Result<usize, CliError> {
        let s = self.raw(key).ok_or_else(|| missing(key))?;
        let v = Self::parse_usize(key, s)?;
        self.echo.insert(key.into(), v.to_string());
        Ok(v)
    }

    pub fn usize_or(&mut self, key: &str, default: usize) -> Result<usize, CliError> {
        let v = match self.raw(key) {
            Some(s) => Self::parse_usize(key, s)?,
            None => default,
        };
        self.echo.insert(key.into(), v.to_string());
        Ok(v)
    }

    pub fn u64_or(&mut self, key: &str, default: u64) -> Result<u64, CliError> {
        let v = match self.raw(key) {
            Some(s) => Self::parse_u64(key, s)?,
            None => default,
        };
        self.echo.insert(key.into(), v.to_string());
        Ok(v)
    }

    /// Resolution order: CLI flag, then config value, then default.
    pub fn u64_flag_or(
        &mut self,
        key: &str,
        flag: Option<u64>,
        default: u64,
    ) -> Result<u64, CliError> {
        let v = match flag {
            Some(v) => v,
            None => match self.raw(key) {
                Some(s) => Self::parse_u64(key, s)?,
                None => default,
            },
        };
        self.echo.insert(key.into(), v.to_string());
        Ok(v)
    }

    /// A value from a closed vocabulary, with a default.
    pub fn choice_or(
        &mut self,
        key: &str,
        allowed: &[&str],
        default: &str,
    ) -> Result<String, CliError> {
        let v = self.raw(key).unwrap_or(default);
        if !allowed.contains(&v) {
            return Err(bad_value(key, v, &format!("one of {}", allowed.join("|"))));
        }
        self.echo.insert(key.into(), v.to_string());
        Ok(v.to_string())
    }

    pub fn require_choice(&mut self, key: &str, allowed: &[&str]) -> Result<String, CliError> {
        let v = self.raw(key).ok_or_else(|| missing(key))?;
        if !allowed.contains(&v) {
            return Err(bad_value(key, v, &format!("one of {}", allowed.join("|"))));
        }
        self.echo.insert(key.into(), v.to_string());
        Ok(v.to_string())
    }

    /// Optional free-form string (e.g. a path); echoed only when present.
    pub fn opt_str(&mut self, key: &str) -> Option<String> {
        let v = self.raw(key)?.to_string();
        self.echo.insert(key.into(), v.clone());
        Some(v)
    }

    pub fn require_usize_list(&mut self, key: &str) -> Result<Vec<usize>, CliError> {
        let s = self.raw(key).ok_or_else(|| missing(key))?;
        let items: Vec<usize> = s
            .split(',')
            .map(|p| Self::parse_usize(key, p.trim()))
            .collect::<Result<_, _>>()?;
        if items.is_empty() {
            return Err(bad_value(key, s, "a non-empty comma-separated list"));
        }
        self.echo.insert(
            key.into(),
            items
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
        );
        Ok(items)
    }

    pub fn require_f64_list(&mut self, key: &str) -> Result<Vec<f64>, CliError> {
        let s = self.raw(key).ok_or_else(|| missing(key))?;
        let items = Self::split_f64_list(key, s)?;
        self.echo.insert(key.into(), render_f64_list(&items));
        Ok(items)
    }

    pub fn opt_f64_list(&mut self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        match self.raw(key) {
            Some(s) => {
                let items = Self::split_f64_list(key, s)?;
                self.echo.insert(key.into(), render_f64_list(&items));
                Ok(Some(items))
            }
            None => Ok(None),
        }
    }

    fn split_f64_list(key: &str, s: &str) -> Result<Vec<f64>, CliError> {
        let items: Vec<f64> = s
            .split(',')
            .map(|p| Self::parse_f64(key, p.trim()))
            .collect::<Result<_, _>>()?;
        if items.is_empty() {
            return Err(bad_value(key, s, "a non-empty comma-separated list"));
        }
        Ok(items)
    }

    /// Force an echo entry for a value the command derived itself.
    pub fn record_f64(&mut self, key: &str, v: f64) {
        self.echo.insert(key.into(), format_f64(v));
    }

    pub fn record_f64_list(&mut self, key: &str, items: &[f64]) {
        self.echo.insert(key.into(), render_f64_list(items));
    }

    /// The consumed-key record as `# key = value` lines, sorted by key.
    pub fn echo_lines(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.echo {
            out.push_str("# ");
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}

fn render_f64_list(items: &[f64]) -> String {
    items
        .iter()
        .map(|&x| format_f64(x))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_dotted_keys() {
        let text = "\n# full-line comment\ncode.n = 16   # trailing comment\nchannel.a=2.5\n";
        let map = parse(text).unwrap();
        assert_eq!(map.get("code.n").unwrap(), "16");
        assert_eq!(map.get("channel.a").unwrap(), "2.5");
    }

    #[test]
    fn rejects_unknown_duplicate_and_malformed_lines() {
        assert!(matches!(parse("code.q = 1"), Err(CliError::Config(_))));
        assert!(matches!(
            parse("code.n = 1\ncode.n = 2"),
            Err(CliError::Config(_))
        ));
        assert!(matches!(parse("just some words"), Err(CliError::Config(_))));
        assert!(matches!(parse("code.n ="), Err(CliError::Config(_))));
    }

    #[test]
    fn echo_is_sorted_and_canonical() {
        let map = parse("channel.a = 0.5\ncode.n = 7").unwrap();
        let mut reader = ConfigReader::new(&map);
        let n = reader.require_usize("code.n").unwrap();
        let a = reader.require_f64("channel.a").unwrap();
        let kappa = reader.f64_or("code.kappa", 0.0).unwrap();
        assert_eq!((n, a, kappa), (7, 0.5, 0.0));
        let echo = reader.echo_lines();
        let expected = format!(
            "# channel.a = {}\n# code.kappa = {}\n# code.n = 7\n",
            format_f64(0.5),
            format_f64(0.0)
        );
        assert_eq!(echo, expected);
    }

    #[test]
    fn echo_lines_reparse_to_the_same_values() {
        let map = parse("channel.a = 0.25\nsim.distances = 0, 0.5, 1").unwrap();
        let mut reader = ConfigReader::new(&map);
        reader.require_f64("channel.a").unwrap();
        reader.opt_f64_list("sim.distances").unwrap();
        let echoed: String = reader
            .echo_lines()
            .lines()
            .map(|l| l.trim_start_matches("# ").to_string() + "\n")
            .collect();
        let remap = parse(&echoed).unwrap();
        let mut second = ConfigReader::new(&remap);
        assert_eq!(second.require_f64("channel.a").unwrap(), 0.25);
        assert_eq!(
            second.opt_f64_list("sim.distances").unwrap().unwrap(),
            vec![0.0, 0.5, 1.0]
        );
        assert_eq!(second.echo_lines(), reader.echo_lines());
    }

    #[test]
    fn flag_overrides_config_value() {
        let map = parse("seed = 11").unwrap();
        let mut reader = ConfigReader::new(&map);
        assert_eq!(reader.u64_flag_or("seed", Some(99), 0).unwrap(), 99);
        assert!(reader.echo_lines().contains("# seed = 99\n"));
    }
}
