//! Tabular and chart output. Every table renders at a display precision and
//! at full precision (shortest round-trip representation).

mod svg;
mod tables;

pub use svg::{emit_svg_bars, SvgStyle};
pub use tables::{
    channel_table, chart_table, collapse_table, decomposition_table, estimate_table,
    oil_segment_table, scenario_exports_table, scenario_migration_table, EstimateRow, EstimateValues,
};

use std::io::Write;

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Number(f64),
    Integer(i64),
    Empty,
}

impl Cell {
    fn render(&self, precision: Option<usize>) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Number(v) => match precision {
                Some(p) => format!("{v:.p$}"),
                None => format!("{v}"),
            },
            Cell::Integer(i) => i.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Number(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Number)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// `None` writes full precision.
    pub fn write_csv<W: Write>(&self, precision: Option<usize>, sink: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(sink);
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(|c| c.render(precision)))?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self, precision: Option<usize>) -> String {
        let mut buf = Vec::new();
        self.write_csv(precision, &mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}
