//! Flat `key = value` config files. Keys are long flag names without the
//! leading dashes; entries become flags appended to the command line unless
//! the same flag was given explicitly.

use std::ffi::OsString;
use std::path::Path;

use crate::error::{Error, Result};

/// Parses the file body into ordered (key, value) pairs. `#` starts a comment line.
pub fn parse(body: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in body.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Domain(format!("config line {}: expected key = value, got '{line}'", n + 1)))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() {
            return Err(Error::Domain(format!("config line {}: empty key", n + 1)));
        }
        if k == "config" {
            return Err(Error::Domain(format!("config line {}: config files do not nest", n + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// The value of `--config`, if present, without invoking the full parser.
pub fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

fn has_flag(args: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let eq = format!("--{key}=");
    args.iter().map(|a| a.to_string_lossy()).any(|s| s == flag || s.starts_with(&eq))
}

/// Appends config entries not already present as flags. A value of `true`
/// becomes a bare switch and `false` is dropped.
pub fn merge(args: Vec<OsString>, entries: &[(String, String)]) -> Vec<OsString> {
    let explicit = args.clone();
    let mut out = args;
    for (k, v) in entries {
        if has_flag(&explicit, k) {
            continue;
        }
        match v.as_str() {
            "true" => out.push(format!("--{k}").into()),
            "false" => {}
            _ => out.push(format!("--{k}={v}").into()),
        }
    }
    out
}

/// Reads `--config` (if any) and merges it under the explicit flags.
pub fn apply(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let body = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| Error::Domain(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    Ok(merge(args, &parse(&body)?))
}
