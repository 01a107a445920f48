use std::io::Write;
use std::path::Path;

use crate::error::{CliError, CliResult};
use crate::Format;

/// Header plus rows of already formatted fields.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        let (lead, sep) = match format {
            Format::Csv => ("", ","),
            Format::Gnuplot => ("# ", " "),
        };
        let mut out = format!("{lead}{}\n", self.header.join(sep));
        for row in &self.rows {
            out.push_str(&row.join(sep));
            out.push('\n');
        }
        out
    }
}

pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: "stdout".into(), source })
        }
    }
}
