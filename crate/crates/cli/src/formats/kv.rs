//! `key=value` files used for configuration, training history and reports.
//! Blank lines and `#` comments are ignored; keys are unique.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{content_lines, CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct KvEntry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

pub fn parse_kv(file: &str, text: &str) -> CliResult<Vec<KvEntry>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (line, content) in content_lines(text) {
        let err = |field: &str, message: String| CliError::Parse {
            file: file.to_string(),
            line,
            field: field.to_string(),
            message,
        };
        let Some((k, v)) = content.split_once('=') else {
            return Err(err("key", "expected key=value".into()));
        };
        let key = k.trim();
        if key.is_empty() {
            return Err(err("key", "empty key".into()));
        }
        if !seen.insert(key.to_string()) {
            return Err(err(key, "duplicate key".into()));
        }
        out.push(KvEntry {
            key: key.to_string(),
            value: v.trim().to_string(),
            line,
        });
    }
    Ok(out)
}

pub fn write_kv(header: Option<&str>, entries: &[(String, String)]) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        let _ = writeln!(out, "# {h}");
    }
    for (k, v) in entries {
        let _ = writeln!(out, "{k}={v}");
    }
    out
}

/// Typed access to one entry, with errors naming the file, line and key.
pub(crate) struct KvValue<'a> {
    pub file: &'a str,
    pub entry: &'a KvEntry,
}

impl KvValue<'_> {
    pub fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            file: self.file.to_string(),
            line: self.entry.line,
            field: self.entry.key.clone(),
            message: message.into(),
        }
    }

    pub fn parse<T: std::str::FromStr>(&self) -> CliResult<T> {
        self.entry
            .value
            .parse()
            .map_err(|_| self.error(format!("cannot parse {:?}", self.entry.value)))
    }

    pub fn finite(&self) -> CliResult<f64> {
        let v: f64 = self.parse()?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.error("not finite"))
        }
    }

    pub fn boolean(&self) -> CliResult<bool> {
        match self.entry.value.as_str() {
            "true" | "1" => Ok(true),
            "false" | "0" => Ok(false),
            v => Err(self.error(format!("expected true or false, got {v:?}"))),
        }
    }

    pub fn str(&self) -> &str {
        &self.entry.value
    }
}
