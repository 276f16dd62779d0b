//! Plain-text `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored; trailing `# ...` on a
//! value line is a comment. Keys are the field names of the config struct.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A config type settable from `key = value` pairs.
pub trait KeyValueConfig {
    /// Applies one pair; the error message names what was wrong with it.
    fn set(&mut self, key: &str, value: &str) -> Result<(), String>;

    /// Every effective parameter, in a stable order.
    fn pairs(&self) -> Vec<(&'static str, String)>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

pub fn parse_str(text: &str, path: &Path) -> Result<Vec<Entry>> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let Some((k, v)) = content.split_once('=') else {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let key = k.trim();
        if key.is_empty() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                message: "empty key".into(),
            });
        }
        entries.push(Entry {
            key: key.to_string(),
            value: v.trim().to_string(),
            line,
        });
    }
    Ok(entries)
}

pub fn read_file(path: &Path) -> Result<Vec<Entry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_str(&text, path)
}

pub fn apply<C: KeyValueConfig>(cfg: &mut C, entries: &[Entry], path: &Path) -> Result<()> {
    for e in entries {
        cfg.set(&e.key, &e.value).map_err(|message| Error::Parse {
            path: path.to_path_buf(),
            line: e.line,
            message,
        })?;
    }
    Ok(())
}

/// Applies command-line `key=value` overrides.
pub fn apply_overrides<C: KeyValueConfig>(cfg: &mut C, overrides: &[String]) -> Result<()> {
    for (i, o) in overrides.iter().enumerate() {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("override `{o}` is not key=value")))?;
        cfg.set(k.trim(), v.trim()).map_err(|message| Error::Parse {
            path: PathBuf::from("<command line>"),
            line: i + 1,
            message,
        })?;
    }
    Ok(())
}

/// `key = value` lines, loadable again with [`read_file`].
pub fn render<C: KeyValueConfig>(cfg: &C) -> String {
    cfg.pairs()
        .into_iter()
        .map(|(k, v)| format!("{k} = {v}\n"))
        .collect()
}

/// The rendered config as `# ` comment lines for embedding in output files.
pub fn comment_block<C: KeyValueConfig>(cfg: &C) -> String {
    cfg.pairs()
        .into_iter()
        .map(|(k, v)| format!("# {k} = {v}\n"))
        .collect()
}

/// SHA-256 of the rendered config, hex encoded.
pub fn config_hash<C: KeyValueConfig>(cfg: &C) -> String {
    hex::encode(Sha256::digest(render(cfg).as_bytes()))
}

pub(crate) fn unknown(key: &str) -> String {
    format!("unknown key `{key}`")
}

pub(crate) fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse::<T>()
        .map_err(|_| format!("invalid value `{value}` for `{key}`"))
}

pub(crate) fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(key, s))
        .collect()
}

pub(crate) fn render_list<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
