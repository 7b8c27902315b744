//! Dynamic time warping between multi-dimensional sequences.
//!
//! The local cost between two points is their squared Euclidean distance
//! summed over dimensions, and the reported distance is the square root of
//! the accumulated cost along the optimal warping path. An optional window
//! constrains the path to a band around the resampled diagonal: cell `(i, j)`
//! is admissible iff `|i * len(b) / len(a) - j| <= window`. On equal lengths
//! this is the classic fixed-width band; on unequal lengths the band follows
//! the stretched diagonal, and it stays connected whenever
//! `window >= |len(a) - len(b)|`.

use crate::error::DtwError;
use crate::series::Sequence;

/// A monotone alignment between a unit sequence (first index) and a pattern
/// sequence (second index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentPath {
    matches: Vec<(usize, usize)>,
}

impl AlignmentPath {
    /// Matched index pairs in path order.
    #[must_use]
    pub fn matches(&self) -> &[(usize, usize)] {
        &self.matches
    }

    /// Number of matched pairs.
    #[must_use]
    pub fn len(&self) -> usize {
        self.matches.len()
    }

    /// Always false; a path holds at least the start cell.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.matches.is_empty()
    }

    /// Checks every structural property a warping path must satisfy for
    /// sequences of the given lengths: endpoints, unit monotone steps, and
    /// full coverage of both index sets.
    ///
    /// # Errors
    ///
    /// Returns a short description of the first violated property.
    pub fn validate(&self, len_a: usize, len_b: usize) -> Result<(), &'static str> {
        let first = *self.matches.first().ok_or("path is empty")?;
        if first != (0, 0) {
            return Err("path does not start at (0, 0)");
        }
        let last = *self.matches.last().expect("non-empty checked above");
        if last != (len_a - 1, len_b - 1) {
            return Err("path does not end at the final cell");
        }
        for pair in self.matches.windows(2) {
            let (i0, j0) = pair[0];
            let (i1, j1) = pair[1];
            let step = (i1.wrapping_sub(i0), j1.wrapping_sub(j0));
            if !matches!(step, (0, 1) | (1, 0) | (1, 1)) {
                return Err("path step is not monotone by one");
            }
        }
        let mut seen_a = vec![false; len_a];
        let mut seen_b = vec![false; len_b];
        for &(i, j) in &self.matches {
            seen_a[i] = true;
            seen_b[j] = true;
        }
        if !seen_a.iter().all(|&s| s) {
            return Err("path skips an index of the first sequence");
        }
        if !seen_b.iter().all(|&s| s) {
            return Err("path skips an index of the second sequence");
        }
        Ok(())
    }
}

/// Distance plus the alignment that produced it.
#[derive(Debug, Clone)]
pub struct DtwResult {
    distance: f64,
    path: AlignmentPath,
}

impl DtwResult {
    /// Square root of the accumulated squared-Euclidean cost.
    #[must_use]
    pub fn distance(&self) -> f64 {
        self.distance
    }

    /// The optimal alignment.
    #[must_use]
    pub fn path(&self) -> &AlignmentPath {
        &self.path
    }

    /// Consumes the result, keeping only the alignment.
    #[must_use]
    pub fn into_path(self) -> AlignmentPath {
        self.path
    }
}

fn check_inputs(a: &Sequence, b: &Sequence, window: Option<usize>) -> Result<(), DtwError> {
    if a.dim() != b.dim() {
        return Err(DtwError::DimensionMismatch {
            a: a.dim(),
            b: b.dim(),
        });
    }
    if let Some(w) = window {
        if w < a.len().abs_diff(b.len()) {
            return Err(DtwError::InfeasibleWindow {
                window: w,
                len_a: a.len(),
                len_b: b.len(),
            });
        }
    }
    Ok(())
}

/// Inclusive admissible column range for row `i`, derived from
/// `|i * m / n - j| <= w` in exact integer arithmetic
/// (`|i * m - j * n| <= w * n`).
fn band_range(i: usize, n: usize, m: usize, window: Option<usize>) -> (usize, usize) {
    match window {
        None => (0, m - 1),
        Some(w) => {
            let center = i * m;
            let slack = w * n;
            let lo = if center > slack {
                (center - slack).div_ceil(n)
            } else {
                0
            };
            let hi = ((center + slack) / n).min(m - 1);
            (lo, hi)
        }
    }
}

fn local_cost(pa: &[f64], pb: &[f64]) -> f64 {
    pa.iter()
        .zip(pb)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

/// Computes only the warping distance using two rolling rows.
///
/// # Errors
///
/// | condition | error |
/// |---|---|
/// | `a.dim() != b.dim()` | [`DtwError::DimensionMismatch`] |
/// | `window < |len(a) - len(b)|` | [`DtwError::InfeasibleWindow`] |
pub fn dtw_distance(a: &Sequence, b: &Sequence, window: Option<usize>) -> Result<f64, DtwError> {
    check_inputs(a, b, window)?;
    let n = a.len();
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut curr = vec![f64::INFINITY; m];
    for i in 0..n {
        curr.fill(f64::INFINITY);
        let (lo, hi) = band_range(i, n, m, window);
        let pa = a.point(i);
        for j in lo..=hi {
            let cost = local_cost(pa, b.point(j));
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let diag = if i > 0 && j > 0 {
                    prev[j - 1]
                } else {
                    f64::INFINITY
                };
                let up = if i > 0 { prev[j] } else { f64::INFINITY };
                let left = if j > 0 { curr[j - 1] } else { f64::INFINITY };
                diag.min(up).min(left)
            };
            curr[j] = cost + best;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    let total = prev[m - 1];
    debug_assert!(total.is_finite(), "feasible window leaves a connected band");
    Ok(total.sqrt())
}

const DIR_START: u8 = 0;
const DIR_DIAG: u8 = 1;
const DIR_UP: u8 = 2;
const DIR_LEFT: u8 = 3;

/// Computes the warping distance and the optimal alignment.
///
/// Cost ties are broken in favor of the diagonal step, then the step
/// advancing the first sequence's index, then the step advancing the second
/// sequence's index, so the reported path is unique.
///
/// # Errors
///
/// Same conditions as [`dtw_distance`].
pub fn dtw(a: &Sequence, b: &Sequence, window: Option<usize>) -> Result<DtwResult, DtwError> {
    check_inputs(a, b, window)?;
    let n = a.len();
    let m = b.len();
    let mut cost = vec![f64::INFINITY; n * m];
    let mut dir = vec![DIR_START; n * m];
    for i in 0..n {
        let (lo, hi) = band_range(i, n, m, window);
        let pa = a.point(i);
        for j in lo..=hi {
            let local = local_cost(pa, b.point(j));
            let idx = i * m + j;
            if i == 0 && j == 0 {
                cost[idx] = local;
                continue;
            }
            let diag = if i > 0 && j > 0 {
                cost[idx - m - 1]
            } else {
                f64::INFINITY
            };
            let up = if i > 0 { cost[idx - m] } else { f64::INFINITY };
            let left = if j > 0 { cost[idx - 1] } else { f64::INFINITY };
            let (best, step) = if diag <= up && diag <= left {
                (diag, DIR_DIAG)
            } else if up <= left {
                (up, DIR_UP)
            } else {
                (left, DIR_LEFT)
            };
            cost[idx] = local + best;
            dir[idx] = step;
        }
    }
    let total = cost[n * m - 1];
    debug_assert!(total.is_finite(), "feasible window leaves a connected band");

    let mut matches = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n - 1, m - 1);
    loop {
        matches.push((i, j));
        match dir[i * m + j] {
            DIR_DIAG => {
                i -= 1;
                j -= 1;
            }
            DIR_UP => i -= 1,
            DIR_LEFT => j -= 1,
            _ => break,
        }
    }
    matches.reverse();
    Ok(DtwResult {
        distance: total.sqrt(),
        path: AlignmentPath { matches },
    })
}

/// Groups the pattern indices matched to each unit index: entry `i` lists the
/// `j` with `(i, j)` on the path, in ascending order.
///
/// # Panics
///
/// Panics if the path refers to a unit index `>= unit_len`.
#[must_use]
pub fn path_groups(path: &AlignmentPath, unit_len: usize) -> Vec<Vec<usize>> {
    let mut groups = vec![Vec::new(); unit_len];
    for &(i, j) in path.matches() {
        groups[i].push(j);
    }
    groups
}
