//! Text, CSV and JSON renderings of triangles, pyramids and reports.

use std::fmt::Write as _;

use binomid::{ClassificationReport, ExactRational, Pyramid, Triangle};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// The JSON shape of a triangle; also what [`parse_triangle_json`] reads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleJson {
    pub source: String,
    pub depth: usize,
    pub rows: Vec<Vec<ExactRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidJson {
    pub source: String,
    pub depth: usize,
    pub slices: Vec<TriangleJson>,
}

impl TriangleJson {
    pub fn new(source: impl Into<String>, tri: &Triangle) -> Self {
        Self {
            source: source.into(),
            depth: tri.depth(),
            rows: tri.rows().to_vec(),
        }
    }
}

pub fn parse_triangle_json(text: &str) -> serde_json::Result<TriangleJson> {
    serde_json::from_str(text)
}

/// Left-aligned columns, two-space gutters, no trailing blanks.
fn table(cells: &[Vec<String>]) -> String {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            cells
                .iter()
                .filter_map(|row| row.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in cells {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<width$}", width = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn text_rows(rows: &[Vec<ExactRational>]) -> String {
    let depth = rows.len().saturating_sub(1);
    let mut cells = Vec::with_capacity(rows.len() + 1);
    let mut header = vec!["n\\k".to_string()];
    header.extend((0..=depth).map(|k| k.to_string()));
    cells.push(header);
    for (n, row) in rows.iter().enumerate() {
        let mut line = vec![n.to_string()];
        line.extend(row.iter().map(ToString::to_string));
        cells.push(line);
    }
    table(&cells)
}

fn csv_rows(rows: &[Vec<ExactRational>]) -> String {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
                + "\n"
        })
        .collect()
}

pub fn render_triangle(source: &str, tri: &Triangle, format: Format) -> String {
    match format {
        Format::Text => text_rows(tri.rows()),
        Format::Csv => csv_rows(tri.rows()),
        Format::Json => to_json_line(&TriangleJson::new(source, tri)),
    }
}

pub fn render_pyramid(source: &str, pyr: &Pyramid, format: Format) -> String {
    let slice_source = |m: usize| format!("row({m},{source})");
    match format {
        Format::Text | Format::Csv => {
            let mut out = String::new();
            for (m, slice) in pyr.slices().iter().enumerate() {
                if m > 0 {
                    out.push('\n');
                }
                if format == Format::Text {
                    let _ = writeln!(out, "slice {m}");
                    out.push_str(&text_rows(slice.rows()));
                } else {
                    out.push_str(&csv_rows(slice.rows()));
                }
            }
            out
        }
        Format::Json => to_json_line(&PyramidJson {
            source: source.to_string(),
            depth: pyr.depth(),
            slices: pyr
                .slices()
                .iter()
                .enumerate()
                .map(|(m, t)| TriangleJson::new(slice_source(m), t))
                .collect(),
        }),
    }
}

/// One line of text per report; JSON is an array of report objects.
pub fn render_reports(reports: &[ClassificationReport], format: Format) -> String {
    match format {
        Format::Json => to_json_line(&reports),
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
        Format::Csv => reports
            .iter()
            .map(|r| {
                let witness = r
                    .witness
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                format!(
                    "{},{},{},\"{}\"\n",
                    r.property,
                    r.effective_bound,
                    r.verdict,
                    witness.replace('"', "\"\"")
                )
            })
            .collect(),
    }
}

pub fn to_json_line<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}
