//! CSV and SVG emission.

use std::fmt::Write as _;
use std::path::Path;

use ncwave_core::Error;

use crate::error::{CliError, CliResult};

pub const AXIS_NAMES: [&str; 3] = ["x", "y", "z"];

/// Formats a value with 17 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// In-memory CSV table with a fixed header; rows are rejected if any value is not finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// `time` is reported in the error when the row holds a NaN or infinity.
    pub fn push(&mut self, row: Vec<f64>, time: f64) -> CliResult<()> {
        if row.len() != self.header.len() {
            return Err(Error::ShapeMismatch { expected: self.header.len(), got: row.len() }.into());
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { time }.into());
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        write_text(path, &self.render())
    }
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Column names `prefix_x`, `prefix_y`, ... for `n` axes.
pub fn axis_columns(prefix: &str, n: usize) -> Vec<String> {
    AXIS_NAMES[..n].iter().map(|a| format!("{prefix}_{a}")).collect()
}

const PANEL_WIDTH: f64 = 640.0;
const PANEL_HEIGHT: f64 = 200.0;
const MARGIN: f64 = 50.0;

/// Stacked line plots of each `(label, ys)` series against `xs`.
pub fn svg_plot(xs: &[f64], series: &[(&str, &[f64])]) -> String {
    let height = MARGIN + series.len() as f64 * (PANEL_HEIGHT + MARGIN);
    let width = PANEL_WIDTH + 2.0 * MARGIN;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x_lo, x_hi) = range(xs);
    for (panel, (label, ys)) in series.iter().enumerate() {
        let top = MARGIN + panel as f64 * (PANEL_HEIGHT + MARGIN);
        let (y_lo, y_hi) = range(ys);
        let _ = writeln!(
            svg,
            r#"<rect x="{MARGIN}" y="{top}" width="{PANEL_WIDTH}" height="{PANEL_HEIGHT}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{MARGIN}" y="{}" font-family="monospace" font-size="12">{label}: [{y_lo:.6e}, {y_hi:.6e}] over t in [{x_lo:.4}, {x_hi:.4}]</text>"#,
            top - 8.0
        );
        let points: Vec<String> = xs
            .iter()
            .zip(ys.iter())
            .map(|(&x, &y)| {
                let px = MARGIN + scale(x, x_lo, x_hi) * PANEL_WIDTH;
                let py = top + (1.0 - scale(y, y_lo, y_hi)) * PANEL_HEIGHT;
                format!("{px:.2},{py:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn range(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() && hi.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn scale(v: f64, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        (v - lo) / (hi - lo)
    } else {
        0.5
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::f64::consts::PI] {
            assert_eq!(format_value(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_value(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn table_rejects_non_finite_rows() {
        let mut t = Table::new(["time", "norm"]);
        t.push(vec![0.0, 1.0], 0.0).unwrap();
        let err = t.push(vec![0.5, f64::NAN], 0.5).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(t.push(vec![1.0], 1.0).is_err());
        assert_eq!(t.render(), "time,norm\n0.0000000000000000e0,1.0000000000000000e0\n");
        assert_eq!(t.column("norm"), Some(vec![1.0]));
    }

    #[test]
    fn svg_has_one_polyline_per_series() {
        let xs = [0.0, 1.0, 2.0];
        let svg = svg_plot(&xs, &[("norm", &[1.0, 0.9, 0.8]), ("mean_x", &[0.0, 0.0, 0.0])]);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
