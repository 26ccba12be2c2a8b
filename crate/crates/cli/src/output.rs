//! CSV/JSON output plumbing shared by all subcommands.

use anyhow::{Context, Result};
use std::io::Write;
use std::path::Path;

/// Floats carry 15 significant digits so runs are byte-comparable.
pub fn fmt_f(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.14e}")
}

/// A named table of string cells.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

enum Target {
    Stdout,
    File(std::fs::File),
}

impl Write for Target {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        match self {
            Target::Stdout => std::io::stdout().write(buf),
            Target::File(f) => f.write(buf),
        }
    }

    fn flush(&mut self) -> std::io::Result<()> {
        match self {
            Target::Stdout => std::io::stdout().flush(),
            Target::File(f) => f.flush(),
        }
    }
}

/// Collects tables and writes them as CSV sections or one JSON object.
pub struct Sink {
    target: Target,
    json: bool,
    sections: Vec<(String, serde_json::Value)>,
    wrote_csv: bool,
}

impl Sink {
    pub fn new(out: Option<&Path>, json: bool) -> Result<Self> {
        let target = match out {
            Some(path) => Target::File(
                std::fs::File::create(path)
                    .with_context(|| format!("creating {}", path.display()))?,
            ),
            None => Target::Stdout,
        };
        Ok(Sink { target, json, sections: Vec::new(), wrote_csv: false })
    }

    fn csv_escape(cell: &str) -> String {
        if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
            format!("\"{}\"", cell.replace('"', "\"\""))
        } else {
            cell.to_string()
        }
    }

    pub fn table(&mut self, name: &str, table: Table) -> Result<()> {
        if self.json {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj: serde_json::Map<String, serde_json::Value> = table
                        .header
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                        .collect();
                    serde_json::Value::Object(obj)
                })
                .collect();
            self.sections.push((name.to_string(), serde_json::Value::Array(rows)));
        } else {
            if self.wrote_csv {
                writeln!(self.target)?;
            }
            writeln!(self.target, "# {name}")?;
            writeln!(self.target, "{}", table.header.join(","))?;
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|c| Self::csv_escape(c)).collect();
                writeln!(self.target, "{}", cells.join(","))?;
            }
            self.wrote_csv = true;
        }
        Ok(())
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.json {
            let obj: serde_json::Map<String, serde_json::Value> =
                self.sections.drain(..).collect();
            writeln!(self.target, "{}", serde_json::to_string_pretty(&obj)?)?;
        }
        self.target.flush()?;
        Ok(())
    }
}
