//! `key = value` text blocks used for generator and CLI config files.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Parses one `key = value` (or `key: value`) pair per line. Blank lines and
/// lines starting with `#` are skipped. Keys are lower-cased and `-` is
/// folded to `_`.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .or_else(|| line.split_once(':'))
            .ok_or_else(|| {
                Error::parse("config", format!("line {}: expected key = value", i + 1))
            })?;
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        if key.is_empty() {
            return Err(Error::parse("config", format!("line {}: empty key", i + 1)));
        }
        if out.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(Error::parse("config", format!("duplicate key {key:?}")));
        }
    }
    Ok(out)
}
