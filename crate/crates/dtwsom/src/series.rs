//! Sequence containers and elementary transforms.
//!
//! A [`Sequence`] is a finite, variable-length run of `d`-dimensional points
//! stored flat in row-major order (`values[i * dim + k]` is coordinate `k` of
//! point `i`). A [`LongSeries`] is the concatenation of many sequences into a
//! single run, remembering where each original sequence began.

use serde::{Deserialize, Serialize};

use crate::error::SeriesError;

/// Standard deviations below this are treated as zero by normalization and by
/// the z-normalized subsequence metric.
pub const FLAT_SIGMA: f64 = 1e-8;

/// An immutable multi-dimensional time series of at least one point.
///
/// All values are finite. Construction through [`Sequence::new`] enforces the
/// invariants, and deserialization re-validates them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct Sequence {
    values: Vec<f64>,
    dim: usize,
    id: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RawSequence {
    dim: usize,
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
}

impl TryFrom<RawSequence> for Sequence {
    type Error = SeriesError;

    fn try_from(raw: RawSequence) -> Result<Self, SeriesError> {
        let seq = Sequence::new(raw.values, raw.dim)?;
        Ok(match raw.id {
            Some(id) => seq.with_id(id),
            None => seq,
        })
    }
}

impl From<Sequence> for RawSequence {
    fn from(seq: Sequence) -> Self {
        RawSequence {
            dim: seq.dim,
            values: seq.values,
            id: seq.id,
        }
    }
}

impl Sequence {
    /// Builds a sequence from row-major values.
    ///
    /// # Errors
    ///
    /// | condition | error |
    /// |---|---|
    /// | `dim == 0` | [`SeriesError::ZeroDimension`] |
    /// | `values.is_empty()` | [`SeriesError::Empty`] |
    /// | `values.len() % dim != 0` | [`SeriesError::RaggedValues`] |
    /// | any NaN or infinity | [`SeriesError::NonFinite`] |
    pub fn new(values: Vec<f64>, dim: usize) -> Result<Self, SeriesError> {
        if dim == 0 {
            return Err(SeriesError::ZeroDimension);
        }
        if values.is_empty() {
            return Err(SeriesError::Empty);
        }
        if !values.len().is_multiple_of(dim) {
            return Err(SeriesError::RaggedValues {
                count: values.len(),
                dim,
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(SeriesError::NonFinite { index });
        }
        Ok(Sequence {
            values,
            dim,
            id: None,
        })
    }

    /// Builds a one-dimensional sequence.
    ///
    /// # Errors
    ///
    /// Same conditions as [`Sequence::new`] with `dim = 1`.
    pub fn univariate(values: Vec<f64>) -> Result<Self, SeriesError> {
        Sequence::new(values, 1)
    }

    /// Attaches an opaque identifier.
    #[must_use]
    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    /// Number of points.
    #[must_use]
    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    /// Always false; sequences hold at least one point.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Point dimension.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flat row-major values.
    #[must_use]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Coordinates of point `i`.
    ///
    /// # Panics
    ///
    /// Panics if `i >= self.len()`.
    #[must_use]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    /// Iterates over points in order.
    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    /// Optional identifier.
    #[must_use]
    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }
}

/// Concatenation of several sequences into one long run of points.
#[derive(Debug, Clone, PartialEq)]
pub struct LongSeries {
    values: Vec<f64>,
    dim: usize,
    boundaries: Vec<usize>,
}

impl LongSeries {
    /// Wraps a flat value buffer as a single-segment series.
    ///
    /// # Errors
    ///
    /// Same conditions as [`Sequence::new`].
    pub fn from_values(values: Vec<f64>, dim: usize) -> Result<Self, SeriesError> {
        let seq = Sequence::new(values, dim)?;
        Ok(LongSeries {
            values: seq.values,
            dim: seq.dim,
            boundaries: vec![0],
        })
    }

    /// Total number of points across all segments.
    #[must_use]
    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    /// Always false; every segment holds at least one point.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Point dimension.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flat row-major values.
    #[must_use]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Start offsets (in points) of the original sequences, strictly
    /// increasing and beginning with 0.
    #[must_use]
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }
}

/// Z-normalizes each dimension of a sequence to zero mean and unit standard
/// deviation (population form). A dimension whose standard deviation falls
/// below [`FLAT_SIGMA`] comes back as all zeros.
#[must_use]
pub fn znormalize(seq: &Sequence) -> Sequence {
    let dim = seq.dim();
    let n = seq.len() as f64;
    let mut out = seq.values().to_vec();
    for d in 0..dim {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for p in 0..seq.len() {
            let v = seq.values()[p * dim + d];
            sum += v;
            sum_sq += v * v;
        }
        let mean = sum / n;
        let variance = (sum_sq / n - mean * mean).max(0.0);
        let sigma = variance.sqrt();
        for p in 0..seq.len() {
            let slot = &mut out[p * dim + d];
            *slot = if sigma < FLAT_SIGMA {
                0.0
            } else {
                (*slot - mean) / sigma
            };
        }
    }
    let mut normalized = Sequence::new(out, dim).expect("normalized values stay finite");
    if let Some(id) = seq.id() {
        normalized = normalized.with_id(id);
    }
    normalized
}

/// Joins sequences end to end, recording where each one started.
///
/// # Errors
///
/// | condition | error |
/// |---|---|
/// | empty input list | [`SeriesError::EmptyConcat`] |
/// | mixed dimensions | [`SeriesError::DimensionMismatch`] |
pub fn concatenate(seqs: &[Sequence]) -> Result<LongSeries, SeriesError> {
    let first = seqs.first().ok_or(SeriesError::EmptyConcat)?;
    let dim = first.dim();
    let mut values = Vec::with_capacity(seqs.iter().map(|s| s.values().len()).sum());
    let mut boundaries = Vec::with_capacity(seqs.len());
    let mut offset = 0;
    for (index, seq) in seqs.iter().enumerate() {
        if seq.dim() != dim {
            return Err(SeriesError::DimensionMismatch {
                index,
                found: seq.dim(),
                expected: dim,
            });
        }
        boundaries.push(offset);
        offset += seq.len();
        values.extend_from_slice(seq.values());
    }
    Ok(LongSeries {
        values,
        dim,
        boundaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_values() {
        assert!(matches!(Sequence::new(vec![], 1), Err(SeriesError::Empty)));
    }

    #[test]
    fn rejects_zero_dimension() {
        assert!(matches!(
            Sequence::new(vec![1.0], 0),
            Err(SeriesError::ZeroDimension)
        ));
    }

    #[test]
    fn rejects_ragged_values() {
        assert!(matches!(
            Sequence::new(vec![1.0, 2.0, 3.0], 2),
            Err(SeriesError::RaggedValues { count: 3, dim: 2 })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            Sequence::new(vec![1.0, f64::NAN], 1),
            Err(SeriesError::NonFinite { index: 1 })
        ));
        assert!(matches!(
            Sequence::new(vec![f64::INFINITY], 1),
            Err(SeriesError::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn points_are_row_major() {
        let seq = Sequence::new(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 2).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq.point(0), &[1.0, 2.0]);
        assert_eq!(seq.point(2), &[5.0, 6.0]);
        let collected: Vec<_> = seq.points().collect();
        assert_eq!(collected, vec![&[1.0, 2.0][..], &[3.0, 4.0], &[5.0, 6.0]]);
    }

    #[test]
    fn znormalize_two_point_example() {
        let seq = Sequence::univariate(vec![0.0, 2.0]).unwrap();
        let z = znormalize(&seq);
        assert_eq!(z.values(), &[-1.0, 1.0]);
    }

    #[test]
    fn znormalize_constant_goes_to_zeros() {
        let seq = Sequence::univariate(vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(znormalize(&seq).values(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn znormalize_is_per_dimension() {
        // dim 0 is constant, dim 1 is [0, 2].
        let seq = Sequence::new(vec![5.0, 0.0, 5.0, 2.0], 2).unwrap();
        let z = znormalize(&seq);
        assert_eq!(z.values(), &[0.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn znormalize_statistics() {
        let seq = Sequence::univariate(vec![3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0]).unwrap();
        let z = znormalize(&seq);
        let n = z.len() as f64;
        let mean: f64 = z.values().iter().sum::<f64>() / n;
        let var: f64 = z.values().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        assert!(mean.abs() < 1e-12);
        assert!((var.sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concatenate_tracks_boundaries() {
        let a = Sequence::univariate(vec![1.0, 2.0]).unwrap();
        let b = Sequence::univariate(vec![3.0]).unwrap();
        let c = Sequence::univariate(vec![4.0, 5.0, 6.0]).unwrap();
        let long = concatenate(&[a, b, c]).unwrap();
        assert_eq!(long.len(), 6);
        assert_eq!(long.boundaries(), &[0, 2, 3]);
        assert_eq!(long.values(), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    }

    #[test]
    fn concatenate_rejects_empty_and_mixed_dims() {
        assert!(matches!(concatenate(&[]), Err(SeriesError::EmptyConcat)));
        let a = Sequence::univariate(vec![1.0]).unwrap();
        let b = Sequence::new(vec![1.0, 2.0], 2).unwrap();
        assert!(matches!(
            concatenate(&[a, b]),
            Err(SeriesError::DimensionMismatch {
                index: 1,
                found: 2,
                expected: 1
            })
        ));
    }

    #[test]
    fn serde_round_trip_is_exact() {
        let seq = Sequence::new(vec![0.1, 0.2, 0.30000000000000004, -1.5e-300], 2)
            .unwrap()
            .with_id("s1");
        let json = serde_json::to_string(&seq).unwrap();
        let back: Sequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, seq);
    }

    #[test]
    fn serde_rejects_invalid_payload() {
        let err = serde_json::from_str::<Sequence>(r#"{"dim":2,"values":[1.0,2.0,3.0]}"#);
        assert!(err.is_err());
        let err = serde_json::from_str::<Sequence>(r#"{"dim":1,"values":[]}"#);
        assert!(err.is_err());
    }
}
