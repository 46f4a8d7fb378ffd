//! Run configuration: flat `key = value` files merged with command-line
//! flags. Precedence, lowest first: built-in defaults, config file, flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use ellsurj_core::arith::{is_prime, primes_in};

/// Names the offending field; maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: &str, message: impl Into<String>) -> Self {
        ConfigError { field: field.to_string(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Keys that steer execution but never change results; left out of the
/// embedded config so artifacts do not depend on them.
const EXECUTION_KEYS: [&str; 4] = ["threads", "output", "config", "format"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: String,
    values: BTreeMap<String, String>,
}

/// `key = value` lines; `#` starts a comment. Dashes in keys are read as
/// underscores.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::new("config", format!("line {}: expected `key = value`", k + 1)))?;
        out.insert(normalize_key(key), value.trim().to_string());
    }
    Ok(out)
}

fn normalize_key(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl RunConfig {
    /// Merges `defaults`, then the file, then `flags`, and rejects keys the
    /// command does not know.
    pub fn resolve(
        command: &str,
        allowed: &[&str],
        defaults: &[(&str, &str)],
        file: Option<&Path>,
        flags: BTreeMap<String, String>,
    ) -> Result<Self, ConfigError> {
        let mut values: BTreeMap<String, String> =
            defaults.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
            values.extend(parse_config_text(&text)?);
        }
        values.extend(flags.into_iter().map(|(k, v)| (normalize_key(&k), v)));
        for key in values.keys() {
            if !allowed.contains(&key.as_str()) && !EXECUTION_KEYS.contains(&key.as_str()) {
                return Err(ConfigError::new(key, format!("not a setting of `{command}`")));
            }
        }
        Ok(RunConfig { command: command.to_string(), values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError::new(key, "required"))
    }

    pub fn u64(&self, key: &str) -> Result<u64, ConfigError> {
        parse_u64(key, self.require(key)?)
    }

    pub fn positive(&self, key: &str) -> Result<u64, ConfigError> {
        let v = self.u64(key)?;
        if v == 0 {
            return Err(ConfigError::new(key, "must be positive"));
        }
        Ok(v)
    }

    pub fn i64(&self, key: &str) -> Result<i64, ConfigError> {
        let v = self.require(key)?;
        v.parse().map_err(|_| ConfigError::new(key, format!("expected an integer, got {v:?}")))
    }

    pub fn prime(&self, key: &str) -> Result<u64, ConfigError> {
        let v = self.u64(key)?;
        if !is_prime(v) {
            return Err(ConfigError::new(key, format!("{v} is not prime")));
        }
        Ok(v)
    }

    /// `a..b` (inclusive) or a single value.
    pub fn range(&self, key: &str) -> Result<(u64, u64), ConfigError> {
        let v = self.require(key)?;
        let (lo, hi) = match v.split_once("..") {
            Some((a, b)) => (parse_u64(key, a)?, parse_u64(key, b.trim_start_matches('='))?),
            None => {
                let x = parse_u64(key, v)?;
                (x, x)
            }
        };
        if lo > hi {
            return Err(ConfigError::new(key, format!("empty range {v}")));
        }
        Ok((lo, hi))
    }

    /// Primes from a comma list (`7,11,13`) or an inclusive range (`7..37`).
    pub fn primes(&self, key: &str) -> Result<Vec<u64>, ConfigError> {
        let v = self.require(key)?;
        let list = if v.contains("..") {
            let (lo, hi) = self.range(key)?;
            primes_in(lo, hi)
        } else {
            let list = v.split(',').map(|x| parse_u64(key, x)).collect::<Result<Vec<_>, _>>()?;
            if let Some(bad) = list.iter().find(|&&x| !is_prime(x)) {
                return Err(ConfigError::new(key, format!("{bad} is not prime")));
            }
            list
        };
        if list.is_empty() {
            return Err(ConfigError::new(key, format!("no primes in {v}")));
        }
        Ok(list)
    }

    pub fn list_u64(&self, key: &str) -> Result<Vec<u64>, ConfigError> {
        self.require(key)?.split(',').map(|x| parse_u64(key, x)).collect()
    }

    /// Everything that determines the result.
    pub fn embedded(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .filter(|(k, _)| !EXECUTION_KEYS.contains(&k.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

fn parse_u64(key: &str, s: &str) -> Result<u64, ConfigError> {
    let s = s.trim();
    s.parse().map_err(|_| ConfigError::new(key, format!("expected a nonnegative integer, got {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_syntax() {
        let m = parse_config_text("# comment\np-max = 500\n\nell=7 # trailing\n").unwrap();
        assert_eq!(m["p_max"], "500");
        assert_eq!(m["ell"], "7");
        let e = parse_config_text("ell 7").unwrap_err();
        assert_eq!(e.field, "config");
    }

    #[test]
    fn precedence_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "ell = 11\np_max = 300\n").unwrap();
        let flags = BTreeMap::from([("ell".to_string(), "13".to_string())]);
        let c = RunConfig::resolve("certify", &["ell", "p_max"], &[("p_max", "1000")], Some(&path), flags)
            .unwrap();
        assert_eq!(c.prime("ell").unwrap(), 13);
        assert_eq!(c.u64("p_max").unwrap(), 300);

        let bad = BTreeMap::from([("bogus".to_string(), "1".to_string())]);
        let e = RunConfig::resolve("certify", &["ell"], &[], None, bad).unwrap_err();
        assert_eq!(e.field, "bogus");
    }

    #[test]
    fn ranges_and_primes() {
        let flags = BTreeMap::from([
            ("g".to_string(), "0..3".to_string()),
            ("ells".to_string(), "6..20".to_string()),
            ("list".to_string(), "7,9".to_string()),
        ]);
        let c = RunConfig::resolve("x", &["g", "ells", "list"], &[], None, flags).unwrap();
        assert_eq!(c.range("g").unwrap(), (0, 3));
        assert_eq!(c.primes("ells").unwrap(), vec![7, 11, 13, 17, 19]);
        assert_eq!(c.primes("list").unwrap_err().field, "list");
    }
}
