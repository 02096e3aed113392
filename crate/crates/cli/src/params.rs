//! Parameter schemas, the `key = value` config format and merged lookups.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::CliError;

/// Lower-case, with `-` mapped to `_`.
pub fn normalize_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

#[derive(Debug, Clone, Copy)]
pub enum Default {
    Num(f64),
    Int(usize),
    Text(&'static str),
    /// No default; the command decides what absence means.
    Unset,
}

#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub key: &'static str,
    pub default: Default,
    pub help: &'static str,
}

pub const fn num(key: &'static str, value: f64, help: &'static str) -> Param {
    Param {
        key,
        default: Default::Num(value),
        help,
    }
}

pub const fn int(key: &'static str, value: usize, help: &'static str) -> Param {
    Param {
        key,
        default: Default::Int(value),
        help,
    }
}

pub const fn text(key: &'static str, value: &'static str, help: &'static str) -> Param {
    Param {
        key,
        default: Default::Text(value),
        help,
    }
}

pub const fn unset(key: &'static str, help: &'static str) -> Param {
    Param {
        key,
        default: Default::Unset,
        help,
    }
}

/// `key = value` lines; `#` starts a comment. Keys are normalized.
pub fn parse_config(source: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    let mut first_seen = BTreeMap::new();
    for (i, raw) in source.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {line_no}: expected `key = value`, found `{line}`")))?;
        let key = normalize_key(key);
        let value = value.trim();
        if key.is_empty() || value.is_empty() || key.contains(char::is_whitespace) {
            return Err(CliError::Config(format!(
                "line {line_no}: expected `key = value`, found `{line}`"
            )));
        }
        if let Some(prev) = first_seen.insert(key.clone(), line_no) {
            return Err(CliError::Config(format!(
                "line {line_no}: duplicate key `{key}` (first set on line {prev})"
            )));
        }
        out.insert(key, value.to_string());
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let source = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config(&source).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Parameter values of one run after merging file and flags.
#[derive(Debug, Clone)]
pub struct Params {
    schema: &'static [Param],
    values: BTreeMap<String, String>,
}

impl Params {
    /// Flags override the file; keys outside the schema are rejected.
    pub fn merge(
        command: &str,
        schema: &'static [Param],
        file: BTreeMap<String, String>,
        flags: BTreeMap<String, String>,
    ) -> Result<Self, CliError> {
        let mut values = file;
        values.extend(flags);
        for key in values.keys() {
            if !schema.iter().any(|p| p.key == key) {
                return Err(unknown_key(command, key, schema));
            }
        }
        Ok(Self { schema, values })
    }

    fn param(&self, key: &str) -> &Param {
        self.schema
            .iter()
            .find(|p| p.key == key)
            .unwrap_or_else(|| panic!("parameter `{key}` missing from schema"))
    }

    pub fn is_set(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn num(&self, key: &str) -> Result<f64, CliError> {
        match (self.values.get(key), self.param(key).default) {
            (Some(v), _) => v
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("`{key}` expects a number, got `{v}`"))),
            (None, Default::Num(x)) => Ok(x),
            (None, Default::Int(n)) => Ok(n as f64),
            _ => Err(CliError::Config(format!("`{key}` is required"))),
        }
    }

    pub fn opt_num(&self, key: &str) -> Result<Option<f64>, CliError> {
        if self.is_set(key) || !matches!(self.param(key).default, Default::Unset) {
            self.num(key).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn int(&self, key: &str) -> Result<usize, CliError> {
        match (self.values.get(key), self.param(key).default) {
            (Some(v), _) => v
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("`{key}` expects a non-negative integer, got `{v}`"))),
            (None, Default::Int(n)) => Ok(n),
            _ => Err(CliError::Config(format!("`{key}` is required"))),
        }
    }

    pub fn opt_int(&self, key: &str) -> Result<Option<usize>, CliError> {
        if self.is_set(key) || !matches!(self.param(key).default, Default::Unset) {
            self.int(key).map(Some)
        } else {
            Ok(None)
        }
    }

    /// One of `choices`, compared case-insensitively.
    pub fn choice(&self, key: &str, choices: &[&'static str]) -> Result<&'static str, CliError> {
        let raw = match (self.values.get(key), self.param(key).default) {
            (Some(v), _) => v.as_str(),
            (None, Default::Text(t)) => t,
            _ => return Err(CliError::Config(format!("`{key}` is required"))),
        };
        choices
            .iter()
            .find(|c| c.eq_ignore_ascii_case(raw))
            .copied()
            .ok_or_else(|| CliError::Config(format!("`{key}` must be one of {}, got `{raw}`", choices.join(", "))))
    }

    /// Points of the sweep variable `name`: either the single value `name`
    /// or `count` points from `name_start` to `name_stop`, spaced linearly
    /// or geometrically.
    pub fn sweep(&self, name: &str, geometric: bool) -> Result<Vec<f64>, CliError> {
        let (start, stop, count) = (format!("{name}_start"), format!("{name}_stop"), format!("{name}_count"));
        if self.is_set(name) {
            if [&start, &stop, &count].iter().any(|k| self.is_set(k)) {
                return Err(CliError::Config(format!(
                    "`{name}` cannot be combined with `{start}`/`{stop}`/`{count}`"
                )));
            }
            return Ok(vec![self.num(name)?]);
        }
        let (a, b, n) = (self.num(&start)?, self.num(&stop)?, self.int(&count)?);
        if n == 0 {
            return Err(CliError::Config(format!("`{count}` must be at least 1")));
        }
        if geometric && !(a > 0.0 && b > 0.0) {
            return Err(CliError::Config(format!("`{start}` and `{stop}` must be positive")));
        }
        if n == 1 {
            return Ok(vec![a]);
        }
        let step = |i: usize| i as f64 / (n - 1) as f64;
        Ok((0..n)
            .map(|i| {
                if geometric {
                    a * (b / a).powf(step(i))
                } else {
                    a + (b - a) * step(i)
                }
            })
            .collect())
    }
}

pub fn unknown_key(command: &str, key: &str, schema: &[Param]) -> CliError {
    let valid: Vec<&str> = schema.iter().map(|p| p.key).collect();
    CliError::Config(format!(
        "unknown key `{key}` for `{command}`; valid keys: {}",
        valid.join(", ")
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    static SCHEMA: &[Param] = &[
        num("alpha", 0.1, ""),
        int("n", 3, ""),
        text("mode", "log", ""),
        num("x_start", 0.0, ""),
        num("x_stop", 1.0, ""),
        int("x_count", 3, ""),
        unset("x", ""),
    ];

    fn params(file: &str, flags: &[(&str, &str)]) -> Result<Params, CliError> {
        let flags = flags.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        Params::merge("test", SCHEMA, parse_config(file)?, flags)
    }

    #[test]
    fn comments_blank_lines_and_normalization() {
        let cfg = parse_config("# header\n\n Alpha = 0.3  # trailing\nmh-over-m=2\n").unwrap();
        assert_eq!(cfg["alpha"], "0.3");
        assert_eq!(cfg["mh_over_m"], "2");
    }

    #[test]
    fn malformed_line_names_line_number() {
        let err = parse_config("alpha = 1\n\njunk here\n").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        let err = parse_config("alpha =\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
    }

    #[test]
    fn duplicate_keys_rejected() {
        let err = parse_config("alpha = 1\nALPHA = 2\n").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("line 1"), "{err}");
    }

    #[test]
    fn flags_override_file() {
        let p = params("alpha = 0.1\n", &[("alpha", "0.2")]).unwrap();
        assert_eq!(p.num("alpha").unwrap(), 0.2);
        assert_eq!(
            p.num("alpha").unwrap(),
            params("", &[("alpha", "0.2")]).unwrap().num("alpha").unwrap()
        );
    }

    #[test]
    fn unknown_key_lists_valid_keys() {
        let err = params("beta = 1\n", &[]).unwrap_err().to_string();
        assert!(err.contains("beta") && err.contains("alpha, n, mode"), "{err}");
    }

    #[test]
    fn typed_lookups() {
        let p = params("n = 7\nmode = LINEAR\n", &[]).unwrap();
        assert_eq!(p.int("n").unwrap(), 7);
        assert_eq!(p.choice("mode", &["log", "linear"]).unwrap(), "linear");
        assert!(params("n = -1\n", &[]).unwrap().int("n").is_err());
        assert!(params("alpha = abc\n", &[]).unwrap().num("alpha").is_err());
    }

    #[test]
    fn sweeps() {
        let p = params("", &[]).unwrap();
        assert_eq!(p.sweep("x", false).unwrap(), vec![0.0, 0.5, 1.0]);
        let p = params("x = 0.25\n", &[]).unwrap();
        assert_eq!(p.sweep("x", false).unwrap(), vec![0.25]);
        assert!(params("x = 0.25\nx_count = 4\n", &[])
            .unwrap()
            .sweep("x", false)
            .is_err());
        let p = params("x_start = 1\nx_stop = 100\n", &[]).unwrap();
        let g = p.sweep("x", true).unwrap();
        assert!((g[1] - 10.0).abs() < 1e-12);
    }
}
