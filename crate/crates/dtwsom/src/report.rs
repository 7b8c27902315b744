//! Reports over a trained map: neighbor-distance and winner-count matrices,
//! rendered to SVG heat grids, per-unit shape plots, and CSV tables.
//!
//! Rendering is fully deterministic: fixed layout constants, fixed number
//! formatting, and no timestamps, so re-rendering the same inputs produces
//! byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::dtw::dtw_distance;
use crate::error::{ReportError, SomError};
use crate::series::Sequence;
use crate::som::SomNetwork;

/// Mean warping distance from each unit to its existing grid neighbors
/// (up/down/left/right), computed with the training window. High values mark
/// cluster boundaries on the map.
#[derive(Debug, Clone, PartialEq)]
pub struct UMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl UMatrix {
    /// Grid rows.
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Grid columns.
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major mean neighbor distances.
    #[must_use]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at a grid cell.
    ///
    /// # Panics
    ///
    /// Panics if the cell is out of range.
    #[must_use]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }
}

/// How many patterns chose each unit as their best match.
#[derive(Debug, Clone, PartialEq)]
pub struct WinnerMatrix {
    rows: usize,
    cols: usize,
    counts: Vec<usize>,
}

impl WinnerMatrix {
    /// Grid rows.
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Grid columns.
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major winner counts.
    #[must_use]
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Count at a grid cell.
    ///
    /// # Panics
    ///
    /// Panics if the cell is out of range.
    #[must_use]
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.counts[row * self.cols + col]
    }

    /// Sum of all counts; equals the number of mapped patterns.
    #[must_use]
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Computes the neighbor-distance matrix of a network.
///
/// # Errors
///
/// Propagates [`SomError::Dtw`] when the training window cannot bridge two
/// neighboring units of very different lengths.
pub fn u_matrix(network: &SomNetwork) -> Result<UMatrix, SomError> {
    let rows = network.rows();
    let cols = network.cols();
    let window = network.config().window();
    let mut values = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let unit = network.unit(r * cols + c);
            let mut sum = 0.0;
            let mut count = 0;
            let mut neighbors: Vec<(usize, usize)> = Vec::with_capacity(4);
            if r > 0 {
                neighbors.push((r - 1, c));
            }
            if r + 1 < rows {
                neighbors.push((r + 1, c));
            }
            if c > 0 {
                neighbors.push((r, c - 1));
            }
            if c + 1 < cols {
                neighbors.push((r, c + 1));
            }
            for (nr, nc) in neighbors {
                sum += dtw_distance(unit, network.unit(nr * cols + nc), window)?;
                count += 1;
            }
            values.push(if count == 0 { 0.0 } else { sum / count as f64 });
        }
    }
    Ok(UMatrix { rows, cols, values })
}

/// Maps every pattern to its best-matching unit and counts winners per cell.
///
/// # Errors
///
/// Same conditions as [`SomNetwork::bmu`].
pub fn winner_matrix(
    network: &SomNetwork,
    patterns: &[Sequence],
) -> Result<WinnerMatrix, SomError> {
    let winners: Vec<usize> = patterns
        .par_iter()
        .map(|p| network.bmu(p).map(|(index, _)| index))
        .collect::<Result<_, _>>()?;
    let mut counts = vec![0usize; network.rows() * network.cols()];
    for winner in winners {
        counts[winner] += 1;
    }
    Ok(WinnerMatrix {
        rows: network.rows(),
        cols: network.cols(),
        counts,
    })
}

/// Paths of the files [`render`] wrote.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedFiles {
    pub u_matrix_svg: PathBuf,
    pub winner_matrix_svg: PathBuf,
    pub units_svg: PathBuf,
    pub u_matrix_csv: PathBuf,
    pub winner_matrix_csv: PathBuf,
}

impl RenderedFiles {
    /// All five paths in a fixed order.
    #[must_use]
    pub fn all(&self) -> [&Path; 5] {
        [
            &self.u_matrix_svg,
            &self.winner_matrix_svg,
            &self.units_svg,
            &self.u_matrix_csv,
            &self.winner_matrix_csv,
        ]
    }
}

const CELL: usize = 96;
const PLOT_CELL: f64 = 140.0;
const PLOT_MARGIN: f64 = 12.0;
const LINE_COLORS: [&str; 6] = [
    "#1f6fb4", "#d63b2f", "#2c9e4b", "#8e5bb8", "#c78a1f", "#3aa6a6",
];

/// Maps a value onto a grey level: the maximum becomes black, the minimum
/// white, and a constant matrix renders mid-grey.
fn grey_level(value: f64, min: f64, max: f64) -> u8 {
    let range = max - min;
    if range <= 0.0 {
        return 128;
    }
    let norm = (value - min) / range;
    (255.0 * (1.0 - norm)).round() as u8
}

fn heat_svg(rows: usize, cols: usize, values: &[f64], labels: &[String]) -> String {
    let width = cols * CELL;
    let height = rows * CELL;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    svg.push('\n');
    for r in 0..rows {
        for c in 0..cols {
            let value = values[r * cols + c];
            let grey = grey_level(value, min, max);
            let x = c * CELL;
            let y = r * CELL;
            let _ = write!(
                svg,
                r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="rgb({grey},{grey},{grey})" stroke="#555" stroke-width="1"/>"##
            );
            svg.push('\n');
            let text_fill = if grey < 128 { "#ffffff" } else { "#000000" };
            let tx = x + CELL / 2;
            let ty = y + CELL / 2;
            let _ = write!(
                svg,
                r#"<text x="{tx}" y="{ty}" fill="{text_fill}" font-family="sans-serif" font-size="15" text-anchor="middle" dominant-baseline="central">{}</text>"#,
                labels[r * cols + c]
            );
            svg.push('\n');
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn units_svg(network: &SomNetwork) -> String {
    let rows = network.rows();
    let cols = network.cols();
    let width = cols as f64 * PLOT_CELL;
    let height = rows as f64 * PLOT_CELL;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for unit in network.units() {
        for &v in unit.values() {
            min = min.min(v);
            max = max.max(v);
        }
    }
    // Shared y-range across units keeps the shapes comparable; widen a
    // degenerate range so flat units draw mid-cell.
    if max - min <= 0.0 {
        min -= 1.0;
        max += 1.0;
    }
    let range = max - min;

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    svg.push('\n');
    for r in 0..rows {
        for c in 0..cols {
            let unit = network.unit(r * cols + c);
            let x0 = c as f64 * PLOT_CELL;
            let y0 = r as f64 * PLOT_CELL;
            let _ = write!(
                svg,
                r##"<rect x="{x0:.2}" y="{y0:.2}" width="{PLOT_CELL:.2}" height="{PLOT_CELL:.2}" fill="#ffffff" stroke="#555" stroke-width="1"/>"##
            );
            svg.push('\n');
            let inner = PLOT_CELL - 2.0 * PLOT_MARGIN;
            let len = unit.len();
            for d in 0..unit.dim() {
                let color = LINE_COLORS[d % LINE_COLORS.len()];
                let mut points = String::new();
                for i in 0..len {
                    let t = if len > 1 {
                        i as f64 / (len - 1) as f64
                    } else {
                        0.5
                    };
                    let v = unit.point(i)[d];
                    let px = x0 + PLOT_MARGIN + t * inner;
                    let py = y0 + PLOT_MARGIN + (1.0 - (v - min) / range) * inner;
                    if i > 0 {
                        points.push(' ');
                    }
                    let _ = write!(points, "{px:.2},{py:.2}");
                }
                let _ = write!(
                    svg,
                    r#"<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>"#
                );
                svg.push('\n');
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn csv_table<T: std::fmt::Display>(rows: usize, cols: usize, values: &[T]) -> String {
    let mut out = String::new();
    for r in 0..rows {
        for c in 0..cols {
            if c > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", values[r * cols + c]);
        }
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, content: &str) -> Result<(), ReportError> {
    std::fs::write(path, content).map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Renders both matrices and the per-unit shape plots into a directory,
/// creating it if needed. Writes `u_matrix.svg`, `winner_matrix.svg`,
/// `units.svg`, `u_matrix.csv`, and `winner_matrix.csv`; the CSV tables carry
/// full `f64` precision.
///
/// # Errors
///
/// | condition | error |
/// |---|---|
/// | matrix shape differs from the network | [`ReportError::ShapeMismatch`] |
/// | directory or file not writable | [`ReportError::Io`] |
pub fn render(
    network: &SomNetwork,
    u: &UMatrix,
    winners: &WinnerMatrix,
    out_dir: impl AsRef<Path>,
) -> Result<RenderedFiles, ReportError> {
    let out_dir = out_dir.as_ref();
    for (rows, cols) in [(u.rows(), u.cols()), (winners.rows(), winners.cols())] {
        if rows != network.rows() || cols != network.cols() {
            return Err(ReportError::ShapeMismatch {
                rows: network.rows(),
                cols: network.cols(),
                got_rows: rows,
                got_cols: cols,
            });
        }
    }
    std::fs::create_dir_all(out_dir).map_err(|source| ReportError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;

    let u_labels: Vec<String> = u.values().iter().map(|v| format!("{v:.3}")).collect();
    let u_svg = heat_svg(u.rows(), u.cols(), u.values(), &u_labels);

    let count_values: Vec<f64> = winners.counts().iter().map(|&c| c as f64).collect();
    let count_labels: Vec<String> = winners.counts().iter().map(|c| c.to_string()).collect();
    let w_svg = heat_svg(winners.rows(), winners.cols(), &count_values, &count_labels);

    let shapes_svg = units_svg(network);
    let u_csv = csv_table(u.rows(), u.cols(), u.values());
    let w_csv = csv_table(winners.rows(), winners.cols(), winners.counts());

    let files = RenderedFiles {
        u_matrix_svg: out_dir.join("u_matrix.svg"),
        winner_matrix_svg: out_dir.join("winner_matrix.svg"),
        units_svg: out_dir.join("units.svg"),
        u_matrix_csv: out_dir.join("u_matrix.csv"),
        winner_matrix_csv: out_dir.join("winner_matrix.csv"),
    };
    write_file(&files.u_matrix_svg, &u_svg)?;
    write_file(&files.winner_matrix_svg, &w_svg)?;
    write_file(&files.units_svg, &shapes_svg)?;
    write_file(&files.u_matrix_csv, &u_csv)?;
    write_file(&files.winner_matrix_csv, &w_csv)?;
    Ok(files)
}
