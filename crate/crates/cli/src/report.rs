//! Plain-text and CSV rendering of command reports.

use std::io::Write;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(
        title: impl Into<String>,
        header: impl IntoIterator<Item = S>,
    ) -> Self {
        Self {
            title: title.into(),
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows
            .push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

/// Key-value summary followed by zero or more tables.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub summary: Vec<(String, String)>,
    pub tables: Vec<Table>,
    /// Tables shown only in CSV output.
    pub csv_only: Vec<Table>,
}

impl Report {
    pub fn kv(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.summary
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Text => self.render_text(out),
            Format::Csv => self.render_csv(out),
        }
    }

    fn render_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            writeln!(out, "{k:<width$}  {v}")?;
        }
        for t in &self.tables {
            writeln!(out)?;
            writeln!(out, "{}", t.title)?;
            let cols = t.header.len();
            let mut widths: Vec<usize> = t.header.iter().map(String::len).collect();
            for r in &t.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{c:>w$}", w = widths[i]))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(&t.header))?;
            for r in &t.rows {
                debug_assert_eq!(r.len(), cols);
                writeln!(out, "{}", line(r))?;
            }
        }
        Ok(())
    }

    fn render_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut blocks: Vec<Table> = Vec::new();
        if !self.summary.is_empty() {
            let mut s = Table::new("summary", ["key", "value"]);
            for (k, v) in &self.summary {
                s.push([k, v]);
            }
            blocks.push(s);
        }
        blocks.extend(self.tables.iter().cloned());
        blocks.extend(self.csv_only.iter().cloned());
        for (i, t) in blocks.iter().enumerate() {
            if i > 0 {
                out.write_all(b"\n")?;
            }
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(std::iter::once("section").chain(t.header.iter().map(String::as_str)))
                .map_err(csv_io)?;
            for r in &t.rows {
                w.write_record(
                    std::iter::once(t.title.as_str()).chain(r.iter().map(String::as_str)),
                )
                .map_err(csv_io)?;
            }
            w.flush()?;
        }
        Ok(())
    }
}

// keep the io kind so a closed pipe is still recognisable
fn csv_io(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => std::io::Error::other(format!("{other:?}")),
    }
}
