//! `key=value` config files, merged under command-line flags: a flag given
//! on the command line always wins; config supplies the rest.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

pub type ConfigMap = BTreeMap<String, String>;

/// Parses `key=value` lines; `#` starts a comment, blank lines are ignored.
pub fn load(path: &Path) -> io::Result<ConfigMap> {
    let text = fs::read_to_string(path)?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => {
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
            None => {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("config line {}: expected key=value", lineno + 1),
                ));
            }
        }
    }
    Ok(map)
}

/// Returns the flag value if given, otherwise the config entry parsed into
/// the same type.
pub fn merge<T: std::str::FromStr + Clone>(
    flag: &Option<T>,
    config: &ConfigMap,
    key: &str,
) -> Result<Option<T>, String> {
    if let Some(v) = flag {
        return Ok(Some(v.clone()));
    }
    match config.get(key) {
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("config key '{key}': cannot parse '{raw}'")),
        None => Ok(None),
    }
}
