//! Loader for whitespace-delimited classification archives: one sequence per
//! line, a numeric class token first, then the values, separated by tabs or
//! commas.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::UcrError;
use crate::series::{concatenate, LongSeries, Sequence};

/// Sequences with their class labels, all the same length and univariate.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    sequences: Vec<Sequence>,
    labels: Vec<f64>,
    source: String,
}

impl LabeledDataset {
    /// Sequences in file order.
    #[must_use]
    pub fn sequences(&self) -> &[Sequence] {
        &self.sequences
    }

    /// Class labels aligned with [`LabeledDataset::sequences`].
    #[must_use]
    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    /// Path the dataset was loaded from.
    #[must_use]
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Number of sequences.
    #[must_use]
    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    /// True when the dataset holds no sequences (never after a successful
    /// load).
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Length of every sequence.
    #[must_use]
    pub fn sequence_len(&self) -> usize {
        self.sequences[0].len()
    }
}

fn parse_number(path: &str, row: usize, token: &str) -> Result<f64, UcrError> {
    let value: f64 = token.parse().map_err(|_| UcrError::BadNumber {
        path: path.to_string(),
        row,
        token: token.to_string(),
    })?;
    if !value.is_finite() {
        return Err(UcrError::BadNumber {
            path: path.to_string(),
            row,
            token: token.to_string(),
        });
    }
    Ok(value)
}

/// Loads a labeled dataset. Blank lines are skipped; every data row must
/// carry the same number of values. Row numbers in errors are 1-based
/// physical line numbers.
///
/// # Errors
///
/// | condition | error |
/// |---|---|
/// | unreadable file | [`UcrError::Io`] |
/// | no data rows | [`UcrError::EmptyFile`] |
/// | row with a label but no values | [`UcrError::MissingValues`] |
/// | row length differs from the first row | [`UcrError::RaggedRow`] |
/// | unparsable or non-finite token | [`UcrError::BadNumber`] |
pub fn load_ucr(path: impl AsRef<Path>) -> Result<LabeledDataset, UcrError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| UcrError::Io {
        path: display.clone(),
        source,
    })?;

    let mut sequences = Vec::new();
    let mut labels = Vec::new();
    let mut expected_len: Option<usize> = None;
    for (line_index, line) in text.lines().enumerate() {
        let row = line_index + 1;
        if line.trim().is_empty() {
            continue;
        }
        let delimiter = if line.contains('\t') { '\t' } else { ',' };
        let mut tokens = line.split(delimiter).map(str::trim).filter(|t| !t.is_empty());
        let label_token = tokens.next().expect("non-blank line has a first token");
        let label = parse_number(&display, row, label_token)?;
        let mut values = Vec::new();
        for token in tokens {
            values.push(parse_number(&display, row, token)?);
        }
        if values.is_empty() {
            return Err(UcrError::MissingValues { path: display, row });
        }
        match expected_len {
            None => expected_len = Some(values.len()),
            Some(expected) if expected != values.len() => {
                return Err(UcrError::RaggedRow {
                    path: display,
                    row,
                    expected,
                    found: values.len(),
                });
            }
            Some(_) => {}
        }
        let sequence = Sequence::univariate(values).expect("tokens were checked finite");
        sequences.push(sequence.with_id(format!("row-{row}")));
        labels.push(label);
    }
    if sequences.is_empty() {
        return Err(UcrError::EmptyFile { path: display });
    }
    Ok(LabeledDataset {
        sequences,
        labels,
        source: display,
    })
}

/// Filters out excluded classes, optionally samples without replacement, and
/// concatenates what remains into one long series. Sampling order follows the
/// seeded draw, so the same seed always yields the same series.
///
/// # Errors
///
/// | condition | error |
/// |---|---|
/// | nothing left after filtering (or `sample == Some(0)`) | [`UcrError::EmptyAfterFilter`] |
/// | sample larger than the filtered dataset | [`UcrError::SampleTooLarge`] |
pub fn prepare(
    dataset: &LabeledDataset,
    exclude: &[f64],
    sample: Option<usize>,
    seed: u64,
) -> Result<LongSeries, UcrError> {
    let kept: Vec<usize> = (0..dataset.len())
        .filter(|&i| !exclude.contains(&dataset.labels[i]))
        .collect();
    if kept.is_empty() || sample == Some(0) {
        return Err(UcrError::EmptyAfterFilter);
    }
    let chosen: Vec<usize> = match sample {
        None => kept.clone(),
        Some(n) => {
            if n > kept.len() {
                return Err(UcrError::SampleTooLarge {
                    requested: n,
                    available: kept.len(),
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rand::seq::index::sample(&mut rng, kept.len(), n)
                .into_iter()
                .map(|i| kept[i])
                .collect()
        }
    };
    let selected: Vec<Sequence> = chosen.iter().map(|&i| dataset.sequences[i].clone()).collect();
    Ok(concatenate(&selected)?)
}
