//! Tabular output shared by every subcommand.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        i64::try_from(v).map_or_else(|_| Cell::Text(v.to_string()), Cell::Int)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::from(v as u64)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

/// A header and rows of equal width.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Table => self.write_table(out),
            Format::Csv => {
                // cells holding commas (partitions) are quoted
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::render))?;
                }
                w.flush()
            }
            Format::Json => {
                // one object per row, keys in column order
                for row in &self.rows {
                    let fields: Vec<String> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| format!("{}:{}", Value::from(*c), v.json()))
                        .collect();
                    writeln!(out, "{{{}}}", fields.join(","))?;
                }
                Ok(())
            }
        }
    }

    fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        // a single value needs no decoration
        if let [row] = self.rows.as_slice() {
            if let [cell] = row.as_slice() {
                return writeln!(out, "{}", cell.render());
            }
        }
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                rendered
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([self.columns[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_owned()
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for r in &rendered {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(&["d", "chi"]);
        r.push(vec![Cell::from(12u64), Cell::from("111/11449")]);
        r.push(vec![Cell::from(130u64), Cell::from("-1/2")]);
        r
    }

    fn render(r: &Report, f: Format) -> String {
        let mut buf = Vec::new();
        r.write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        let r = sample();
        assert_eq!(
            render(&r, Format::Table),
            "d    chi\n12   111/11449\n130  -1/2\n"
        );
        assert_eq!(render(&r, Format::Csv), "d,chi\n12,111/11449\n130,-1/2\n");
        assert_eq!(
            render(&r, Format::Json),
            "{\"d\":12,\"chi\":\"111/11449\"}\n{\"d\":130,\"chi\":\"-1/2\"}\n"
        );
    }

    #[test]
    fn csv_quotes_commas() {
        let mut r = Report::new(&["lambda", "k"]);
        r.push(vec![Cell::from("(2,1)"), Cell::from(0u64)]);
        assert_eq!(render(&r, Format::Csv), "lambda,k\n\"(2,1)\",0\n");
    }

    #[test]
    fn single_value_is_bare() {
        let mut r = Report::new(&["chi"]);
        r.push(vec![Cell::from("1/2")]);
        assert_eq!(render(&r, Format::Table), "1/2\n");
        assert_eq!(render(&r, Format::Csv), "chi\n1/2\n");
    }
}
