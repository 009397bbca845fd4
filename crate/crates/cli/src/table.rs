//! Result rows rendered as aligned text or CSV.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.len());
                    }
                }
                let line = |cells: &mut dyn Iterator<Item = &str>| {
                    let parts: Vec<String> = cells
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:>w$}"))
                        .collect();
                    parts.join("  ")
                };
                writeln!(out, "{}", line(&mut self.columns.iter().copied()))?;
                for row in &self.rows {
                    writeln!(out, "{}", line(&mut row.iter().map(String::as_str)))?;
                }
                Ok(())
            }
        }
    }
}

/// `a b c` joined with spaces, as in the instance lists.
pub fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn percent(num: u64, den: u64) -> String {
    if den == 0 {
        "0.00".into()
    } else {
        format!("{:.2}", 100.0 * num as f64 / den as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_formats() {
        let mut t = Table::new(&["a", "bb"]);
        t.push(vec!["1".into(), "x,y".into()]);
        let mut csv = Vec::new();
        t.write(Format::Csv, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap(), "a,bb\n1,\"x,y\"\n");
        let mut text = Vec::new();
        t.write(Format::Text, &mut text).unwrap();
        assert_eq!(String::from_utf8(text).unwrap(), "a   bb\n1  x,y\n");
    }
}
