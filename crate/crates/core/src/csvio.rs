//! Small numeric CSV tables with optional `#` comment lines before the header.

use std::path::Path;

use crate::error::{Error, Result};

/// A numeric table read from CSV. Non-numeric cells are kept as strings in
/// `text` and read as NaN in `rows`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub text: Vec<Vec<String>>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Numeric column by name; fails if missing or if any cell is not a number.
    pub fn column(&self, name: &str, path: &Path) -> Result<Vec<f64>> {
        let k = self.column_index(name).ok_or_else(|| Error::Format(format!(
            "{}: missing column `{name}` (header: {})",
            path.display(),
            self.header.join(",")
        )))?;
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let v = r[k];
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Format(format!(
                        "{}: row {}: `{name}` is not a finite number",
                        path.display(),
                        i + 1
                    )))
                }
            })
            .collect()
    }
}

pub fn parse_table(text: &str, path: &Path) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        rows.push(rec.iter().map(|c| c.parse::<f64>().unwrap_or(f64::NAN)).collect());
        cells.push(rec.iter().map(str::to_string).collect());
    }
    Ok(Table { header, rows, text: cells })
}

pub fn read_table(path: &Path) -> Result<Table> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_table(&text, path)
}

/// Writes `contents` to `path`, creating parent directories.
pub fn write_text(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
