use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{file}:{line}: field `{field}`: {message}")]
    Parse {
        file: String,
        line: usize,
        field: String,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] sthg_core::Error),
}

impl CliError {
    /// 2 for anything the user can fix in their inputs, 1 for IO failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Cursor over the whitespace-separated fields of one input line, producing
/// errors that name the file, line and field.
pub(crate) struct Fields<'a> {
    pub file: &'a str,
    pub line: usize,
    rest: std::str::SplitWhitespace<'a>,
}

impl<'a> Fields<'a> {
    pub fn new(file: &'a str, line: usize, text: &'a str) -> Self {
        Fields {
            file,
            line,
            rest: text.split_whitespace(),
        }
    }

    pub fn error(&self, field: &str, message: impl Into<String>) -> CliError {
        CliError::Parse {
            file: self.file.to_string(),
            line: self.line,
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub fn next_str(&mut self, field: &str) -> CliResult<&'a str> {
        self.rest.next().ok_or_else(|| self.error(field, "missing"))
    }

    pub fn parse<T: std::str::FromStr>(&mut self, field: &str) -> CliResult<T> {
        let s = self.next_str(field)?;
        s.parse()
            .map_err(|_| self.error(field, format!("cannot parse {s:?}")))
    }

    pub fn finite(&mut self, field: &str) -> CliResult<f64> {
        let v: f64 = self.parse(field)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.error(field, "not finite"))
        }
    }

    pub fn remaining(&mut self) -> Vec<&'a str> {
        self.rest.by_ref().collect()
    }

    pub fn end(&mut self) -> CliResult<()> {
        match self.rest.next() {
            None => Ok(()),
            Some(extra) => Err(self.error("<end>", format!("unexpected trailing field {extra:?}"))),
        }
    }
}

/// Lines of a text file that are neither blank nor `#` comments, numbered
/// from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, t))
    })
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}
