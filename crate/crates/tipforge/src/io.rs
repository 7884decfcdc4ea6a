//! Input parsing and output rendering for the CLI surface: matrix and
//! pattern readers, aligned text tables, CSV emission, and the eigenvalue
//! scatter SVG.

use crate::census::{SensitivityTable, SignPattern, WeightedCycleSet};
use crate::eig::ComplexSpectrum;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Accepted on-disk matrix encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
}

/// Replaces typeset minus signs with ASCII hyphens so pasted values parse.
fn normalize_minus(text: &str) -> String {
    text.replace('\u{2212}', "-")
}

/// Parses a square matrix from JSON (`{"n": k, "entries": [[...], ...]}`) or
/// CSV (k rows of k comma-separated numbers).
pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<DenseMatrix> {
    match format {
        MatrixFormat::Json => {
            serde_json::from_str(&normalize_minus(text)).map_err(|e| Error::ParseError {
                row: e.line(),
                column: e.column(),
                message: e.to_string(),
            })
        }
        MatrixFormat::Csv => parse_matrix_csv(text),
    }
}

fn parse_matrix_csv(text: &str) -> Result<DenseMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (j, cell) in line.split(',').enumerate() {
            let cell = normalize_minus(cell.trim());
            let value: f64 = cell.parse().map_err(|_| Error::ParseError {
                row: i + 1,
                column: j + 1,
                message: format!("expected a number, got {:?}", cell),
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::ParseError {
            row: 1,
            column: 1,
            message: "empty matrix input".to_string(),
        });
    }
    let n = rows[0].len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                message: format!("row {} has {} entries, expected {}", i + 1, row.len(), n),
            });
        }
    }
    if rows.len() != n {
        return Err(Error::DimensionMismatch {
            message: format!("{} rows of {} entries do not form a square", rows.len(), n),
        });
    }
    DenseMatrix::from_rows(&rows)
}

/// Parses a sign pattern: rows of `+`, `-` (ASCII or typeset minus), `0`,
/// separated by `;` or newlines.
pub fn parse_pattern(text: &str) -> Result<SignPattern> {
    let mut rows: Vec<Vec<i8>> = Vec::new();
    for (i, raw) in text.split([';', '\n']).enumerate() {
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (j, ch) in raw.chars().enumerate() {
            let sign = match ch {
                '+' => 1,
                '-' | '\u{2212}' => -1,
                '0' => 0,
                other => {
                    return Err(Error::ParseError {
                        row: i + 1,
                        column: j + 1,
                        message: format!("bad sign character {:?}", other),
                    })
                }
            };
            row.push(sign);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::ParseError {
            row: 1,
            column: 1,
            message: "empty pattern input".to_string(),
        });
    }
    SignPattern::from_signs(&rows)
}

/// RFC-4180 line ending.
const CRLF: &str = "\r\n";

/// Renders the two sensitivity tables as one CSV: columns
/// `n,coefficient,tipping,total` with `a<i>` rows for the plain table and
/// `s<j>` rows for the forced decomposition. Cells with no terms are
/// omitted, matching the blanks of the text layout.
pub fn tables_to_csv(plain: &SensitivityTable, forced: &SensitivityTable) -> String {
    let mut out = String::from("n,coefficient,tipping,total");
    out.push_str(CRLF);
    for row in &plain.rows {
        for (i, cell) in row.cells.iter().enumerate().rev() {
            out.push_str(&format!(
                "{},a{},{},{}{}",
                row.n, i, cell.tipping, cell.total, CRLF
            ));
        }
    }
    for row in &forced.rows {
        for (j, cell) in row.cells.iter().enumerate().rev() {
            if cell.total == 0 {
                continue;
            }
            out.push_str(&format!(
                "{},s{},{},{}{}",
                row.n, j, cell.tipping, cell.total, CRLF
            ));
        }
    }
    out
}

/// Aligned text rendering of a sensitivity table. Zero-tipping cells print
/// as `+`, populated cells as `tipping/total`, empty cells stay blank.
pub fn table_to_text(table: &SensitivityTable, label: &str, prefix: &str) -> String {
    let n_max = table.rows.iter().map(|r| r.n).max().unwrap_or(0);
    let mut header: Vec<String> = vec!["n".to_string()];
    for i in (0..=n_max).rev() {
        header.push(format!("{}{}", prefix, i));
    }
    let mut grid: Vec<Vec<String>> = vec![header];
    for row in &table.rows {
        let mut line = vec![row.n.to_string()];
        for i in (0..=n_max).rev() {
            let cell = if i < row.cells.len() {
                let c = row.cells[i];
                if c.total == 0 {
                    String::new()
                } else if c.tipping == 0 {
                    "+".to_string()
                } else {
                    format!("{}/{}", c.tipping, c.total)
                }
            } else {
                String::new()
            };
            line.push(cell);
        }
        grid.push(line);
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|row| row[c].len()).max().unwrap())
        .collect();
    let mut out = format!("{}\n", label);
    for row in &grid {
        let cells: Vec<String> = row
            .iter()
            .zip(widths.iter())
            .map(|(cell, w)| format!("{:>width$}", cell, width = w))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Text rendering of one weighted cycle set.
pub fn weights_to_text(w: &WeightedCycleSet, label: &str) -> String {
    let mut out = format!("{}\n", label);
    let render_u = |grid: &Vec<Vec<u64>>| -> Vec<String> {
        grid.iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    };
    let render_i = |grid: &Vec<Vec<i64>>| -> Vec<String> {
        grid.iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    };
    out.push_str("  positive:\n");
    for line in render_u(&w.w_plus) {
        out.push_str(&format!("    [{}]\n", line));
    }
    out.push_str("  negative:\n");
    for line in render_u(&w.w_minus) {
        out.push_str(&format!("    [{}]\n", line));
    }
    out.push_str("  difference:\n");
    for line in render_i(&w.diff) {
        out.push_str(&format!("    [{}]\n", line));
    }
    out
}

/// Spectrum as CSV with `re,im` columns.
pub fn spectrum_to_csv(spectrum: &ComplexSpectrum) -> String {
    let mut out = String::from("re,im");
    out.push_str(CRLF);
    for z in spectrum.values() {
        out.push_str(&format!("{:e},{:e}{}", z.re, z.im, CRLF));
    }
    out
}

/// Complex-plane scatter of a spectrum: axes, a unit-circle guide, and one
/// marker per eigenvalue. SVG 1.1, 480x480 pixels.
pub fn spectrum_to_svg(spectrum: &ComplexSpectrum) -> String {
    let size = 480.0;
    let margin = 30.0;
    let mut radius = 1.0f64;
    for z in spectrum.values() {
        radius = radius.max(z.re.abs()).max(z.im.abs());
    }
    radius *= 1.15;
    let scale = (size / 2.0 - margin) / radius;
    let center = size / 2.0;
    let to_x = |re: f64| center + re * scale;
    let to_y = |im: f64| center - im * scale;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = size
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n",
        s = size
    ));
    svg.push_str(&format!(
        "  <line class=\"axis\" x1=\"{m}\" y1=\"{c}\" x2=\"{e}\" y2=\"{c}\" stroke=\"#888\" stroke-width=\"1\"/>\n",
        m = margin,
        c = center,
        e = size - margin
    ));
    svg.push_str(&format!(
        "  <line class=\"axis\" x1=\"{c}\" y1=\"{m}\" x2=\"{c}\" y2=\"{e}\" stroke=\"#888\" stroke-width=\"1\"/>\n",
        m = margin,
        c = center,
        e = size - margin
    ));
    svg.push_str(&format!(
        "  <circle class=\"unit-guide\" cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"none\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n",
        c = center,
        r = scale
    ));
    for z in spectrum.values() {
        svg.push_str(&format!(
            "  <circle class=\"eig\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"#1f5fa8\" fill-opacity=\"0.75\"/>\n",
            to_x(z.re),
            to_y(z.im)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
