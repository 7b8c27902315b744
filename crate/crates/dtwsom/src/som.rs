//! A self-organizing map whose units are variable-length sequences compared
//! by dynamic time warping.
//!
//! Training is sequential: patterns are presented one at a time in a seeded
//! shuffled order, the best-matching unit is found, and every unit whose
//! neighborhood weight exceeds [`ADAPTATION_CUTOFF`] moves toward the
//! pattern along its own warping alignment. Each unit index `i` is pulled
//! toward the mean of the pattern points matched to it:
//!
//! ```text
//! w[i] += strength * (mean(x[j] for j matched to i) - w[i])
//! ```
//!
//! With equal lengths and the identity alignment this reduces to the classic
//! update `w += strength * (x - w)`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::dtw::{dtw, dtw_distance, path_groups, AlignmentPath};
use crate::error::SomError;
use crate::series::Sequence;

/// Learning rate used when the caller does not choose one.
pub const DEFAULT_ALPHA: f64 = 0.1;

/// The neighborhood radius never decays below this value, so the
/// best-matching unit keeps adapting until the last epoch.
pub const RADIUS_FLOOR: f64 = 0.1;

/// Units with a neighborhood weight at or below this threshold are skipped
/// during adaptation.
pub const ADAPTATION_CUTOFF: f64 = 1e-3;

/// Default neighborhood radius: half the larger grid dimension.
#[must_use]
pub fn default_radius(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 / 2.0
}

/// Immutable hyper-parameters for one training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct TrainingConfig {
    epochs: usize,
    alpha0: f64,
    radius0: f64,
    window: Option<usize>,
    seed: u64,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    epochs: usize,
    alpha0: f64,
    radius0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<usize>,
    seed: u64,
}

impl TryFrom<RawConfig> for TrainingConfig {
    type Error = SomError;

    fn try_from(raw: RawConfig) -> Result<Self, SomError> {
        TrainingConfig::new(raw.epochs, raw.alpha0, raw.radius0, raw.window, raw.seed)
    }
}

impl From<TrainingConfig> for RawConfig {
    fn from(config: TrainingConfig) -> Self {
        RawConfig {
            epochs: config.epochs,
            alpha0: config.alpha0,
            radius0: config.radius0,
            window: config.window,
            seed: config.seed,
        }
    }
}

impl TrainingConfig {
    /// Validates and freezes the hyper-parameters.
    ///
    /// # Errors
    ///
    /// | condition | error |
    /// |---|---|
    /// | `epochs == 0` | [`SomError::ZeroEpochs`] |
    /// | `alpha0` outside `(0, 1]` | [`SomError::InvalidLearningRate`] |
    /// | `radius0` not a positive finite number | [`SomError::InvalidRadius`] |
    pub fn new(
        epochs: usize,
        alpha0: f64,
        radius0: f64,
        window: Option<usize>,
        seed: u64,
    ) -> Result<Self, SomError> {
        if epochs == 0 {
            return Err(SomError::ZeroEpochs);
        }
        if !(alpha0 > 0.0 && alpha0 <= 1.0) {
            return Err(SomError::InvalidLearningRate(alpha0));
        }
        if !(radius0 > 0.0 && radius0.is_finite()) {
            return Err(SomError::InvalidRadius {
                radius: radius0,
                max: f64::INFINITY,
            });
        }
        Ok(TrainingConfig {
            epochs,
            alpha0,
            radius0,
            window,
            seed,
        })
    }

    /// Number of epochs a call to [`SomNetwork::train`] runs.
    #[must_use]
    pub fn epochs(&self) -> usize {
        self.epochs
    }

    /// Initial learning rate; decays linearly to `alpha0 / epochs`.
    #[must_use]
    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    /// Initial neighborhood radius; decays linearly down to [`RADIUS_FLOOR`].
    #[must_use]
    pub fn radius0(&self) -> f64 {
        self.radius0
    }

    /// Warping window used for every distance during training and reporting.
    #[must_use]
    pub fn window(&self) -> Option<usize> {
        self.window
    }

    /// Seed behind unit sampling and epoch shuffles.
    #[must_use]
    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Per-epoch record of a training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct TrainingTrace {
    /// Mean distance from each pattern to its best-matching unit, measured
    /// at presentation time while the epoch ran.
    pub quantization_error: Vec<f64>,
    /// Learning rate used in each epoch.
    pub alpha: Vec<f64>,
    /// Neighborhood radius used in each epoch.
    pub radius: Vec<f64>,
}

/// A rectangular grid of sequence-valued units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNetwork", into = "RawNetwork")]
pub struct SomNetwork {
    rows: usize,
    cols: usize,
    epoch: usize,
    config: TrainingConfig,
    units: Vec<Sequence>,
}

#[derive(Serialize, Deserialize)]
struct RawNetwork {
    rows: usize,
    cols: usize,
    epoch: usize,
    config: TrainingConfig,
    units: Vec<Sequence>,
}

impl TryFrom<RawNetwork> for SomNetwork {
    type Error = SomError;

    fn try_from(raw: RawNetwork) -> Result<Self, SomError> {
        if raw.rows == 0 || raw.cols == 0 {
            return Err(SomError::EmptyGrid);
        }
        if raw.units.len() != raw.rows * raw.cols {
            return Err(SomError::ShapeMismatch {
                units: raw.units.len(),
                rows: raw.rows,
                cols: raw.cols,
            });
        }
        let dim = raw.units[0].dim();
        if let Some(unit) = raw.units.iter().find(|u| u.dim() != dim) {
            return Err(SomError::DimensionMismatch {
                pattern: unit.dim(),
                network: dim,
            });
        }
        check_radius(&raw.config, raw.rows, raw.cols)?;
        Ok(SomNetwork {
            rows: raw.rows,
            cols: raw.cols,
            epoch: raw.epoch,
            config: raw.config,
            units: raw.units,
        })
    }
}

impl From<SomNetwork> for RawNetwork {
    fn from(net: SomNetwork) -> Self {
        RawNetwork {
            rows: net.rows,
            cols: net.cols,
            epoch: net.epoch,
            config: net.config,
            units: net.units,
        }
    }
}

fn check_radius(config: &TrainingConfig, rows: usize, cols: usize) -> Result<(), SomError> {
    let max = rows.max(cols) as f64;
    if config.radius0() > max {
        return Err(SomError::InvalidRadius {
            radius: config.radius0(),
            max,
        });
    }
    Ok(())
}

/// Hashable identity of a sequence's value content. Collapses -0.0 into 0.0
/// so the two zero encodings count as the same value.
fn value_key(seq: &Sequence) -> (usize, Vec<u64>) {
    let bits = seq
        .values()
        .iter()
        .map(|&v| if v == 0.0 { 0.0f64.to_bits() } else { v.to_bits() })
        .collect();
    (seq.dim(), bits)
}

fn strip_id(seq: &Sequence) -> Sequence {
    Sequence::new(seq.values().to_vec(), seq.dim()).expect("copy of a valid sequence")
}

fn check_patterns(patterns: &[Sequence]) -> Result<usize, SomError> {
    let first = patterns.first().ok_or(SomError::NoPatterns)?;
    let dim = first.dim();
    if let Some(p) = patterns.iter().find(|p| p.dim() != dim) {
        return Err(SomError::DimensionMismatch {
            pattern: p.dim(),
            network: dim,
        });
    }
    Ok(dim)
}

/// Cell visit order used to place anchors: ascending distance from the main
/// diagonal (`|row - col|`), ties in row-major order. The first `min(rows,
/// cols)` cells are exactly the diagonal.
#[must_use]
pub fn anchor_fill_order(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .collect();
    cells.sort_by_key(|&(r, c)| (r.abs_diff(c), r, c));
    cells
}

/// Moves one unit toward a pattern along a fixed alignment: each unit index
/// is pulled toward the mean of the pattern points matched to it, scaled by
/// `strength`.
///
/// # Panics
///
/// Panics if the path, unit, and pattern do not belong together (mismatched
/// lengths or dimensions).
#[must_use]
pub fn adapt_unit(
    unit: &Sequence,
    pattern: &Sequence,
    path: &AlignmentPath,
    strength: f64,
) -> Sequence {
    assert_eq!(unit.dim(), pattern.dim(), "alignment across dimensions");
    let dim = unit.dim();
    let groups = path_groups(path, unit.len());
    let mut values = unit.values().to_vec();
    for (i, js) in groups.iter().enumerate() {
        if js.is_empty() {
            continue;
        }
        let count = js.len() as f64;
        for d in 0..dim {
            let mean = js.iter().map(|&j| pattern.point(j)[d]).sum::<f64>() / count;
            let w = values[i * dim + d];
            values[i * dim + d] = w + strength * (mean - w);
        }
    }
    Sequence::new(values, dim).expect("adapted values stay finite")
}

impl SomNetwork {
    /// Initializes every unit by sampling patterns without replacement,
    /// skipping value-level duplicates so no two units start identical.
    ///
    /// # Errors
    ///
    /// | condition | error |
    /// |---|---|
    /// | zero-sized grid | [`SomError::EmptyGrid`] |
    /// | no patterns | [`SomError::NoPatterns`] |
    /// | mixed pattern dimensions | [`SomError::DimensionMismatch`] |
    /// | `radius0 > max(rows, cols)` | [`SomError::InvalidRadius`] |
    /// | fewer distinct patterns than units | [`SomError::NotEnoughDistinctPatterns`] |
    pub fn init_random_sample(
        patterns: &[Sequence],
        rows: usize,
        cols: usize,
        config: TrainingConfig,
    ) -> Result<Self, SomError> {
        SomNetwork::init_anchor(patterns, &[], rows, cols, config)
    }

    /// Initializes a network with chosen patterns pinned to the cells nearest
    /// the main diagonal (in [`anchor_fill_order`]), then fills the remaining
    /// cells by random sampling without duplicating any unit.
    ///
    /// # Errors
    ///
    /// All conditions of [`SomNetwork::init_random_sample`], plus:
    ///
    /// | condition | error |
    /// |---|---|
    /// | more anchors than units | [`SomError::TooManyAnchors`] |
    /// | anchor index out of range | [`SomError::AnchorOutOfRange`] |
    pub fn init_anchor(
        patterns: &[Sequence],
        anchors: &[usize],
        rows: usize,
        cols: usize,
        config: TrainingConfig,
    ) -> Result<Self, SomError> {
        if rows == 0 || cols == 0 {
            return Err(SomError::EmptyGrid);
        }
        check_radius(&config, rows, cols)?;
        check_patterns(patterns)?;
        let unit_count = rows * cols;
        if anchors.len() > unit_count {
            return Err(SomError::TooManyAnchors {
                anchors: anchors.len(),
                units: unit_count,
                rows,
                cols,
            });
        }
        if let Some(&index) = anchors.iter().find(|&&a| a >= patterns.len()) {
            return Err(SomError::AnchorOutOfRange {
                index,
                patterns: patterns.len(),
            });
        }

        let order = anchor_fill_order(rows, cols);
        let mut units: Vec<Option<Sequence>> = vec![None; unit_count];
        let mut used: HashSet<(usize, Vec<u64>)> = HashSet::new();
        for (&(r, c), &pattern_index) in order.iter().zip(anchors) {
            let pattern = &patterns[pattern_index];
            used.insert(value_key(pattern));
            units[r * cols + c] = Some(strip_id(pattern));
        }

        let mut shuffled: Vec<usize> = (0..patterns.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed());
        shuffled.shuffle(&mut rng);
        let mut candidates = shuffled.into_iter();
        for &(r, c) in order.iter().skip(anchors.len()) {
            let slot = loop {
                match candidates.next() {
                    Some(index) if used.insert(value_key(&patterns[index])) => {
                        break Some(&patterns[index]);
                    }
                    Some(_) => continue,
                    None => break None,
                }
            };
            match slot {
                Some(pattern) => units[r * cols + c] = Some(strip_id(pattern)),
                None => {
                    let mut distinct: HashSet<(usize, Vec<u64>)> =
                        patterns.iter().map(value_key).collect();
                    for &a in anchors {
                        distinct.insert(value_key(&patterns[a]));
                    }
                    return Err(SomError::NotEnoughDistinctPatterns {
                        rows,
                        cols,
                        needed: unit_count,
                        found: distinct.len(),
                    });
                }
            }
        }

        Ok(SomNetwork {
            rows,
            cols,
            epoch: 0,
            config,
            units: units
                .into_iter()
                .map(|u| u.expect("every cell filled"))
                .collect(),
        })
    }

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

    /// Total epochs this network has been trained for.
    #[must_use]
    pub fn epoch(&self) -> usize {
        self.epoch
    }

    /// Hyper-parameters the network was built with.
    #[must_use]
    pub fn config(&self) -> &TrainingConfig {
        &self.config
    }

    /// All units in row-major order.
    #[must_use]
    pub fn units(&self) -> &[Sequence] {
        &self.units
    }

    /// Unit at a flat row-major index.
    ///
    /// # Panics
    ///
    /// Panics if `index >= rows * cols`.
    #[must_use]
    pub fn unit(&self, index: usize) -> &Sequence {
        &self.units[index]
    }

    /// Point dimension shared by every unit.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.units[0].dim()
    }

    /// Grid coordinates of a flat unit index.
    #[must_use]
    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index / self.cols, index % self.cols)
    }

    /// Gaussian neighborhood weight between two unit indices at the given
    /// radius: `exp(-g^2 / (2 r^2))` where `g` is their Euclidean grid
    /// distance. Equals 1 when the indices coincide.
    #[must_use]
    pub fn neighborhood(&self, center: usize, other: usize, radius: f64) -> f64 {
        let (cr, cc) = self.coords(center);
        let (or_, oc) = self.coords(other);
        let dr = cr.abs_diff(or_) as f64;
        let dc = cc.abs_diff(oc) as f64;
        let g_sq = dr * dr + dc * dc;
        (-g_sq / (2.0 * radius * radius)).exp()
    }

    /// Finds the best-matching unit: the unit at minimum warping distance
    /// from the pattern, ties broken by the lowest unit index. Distances are
    /// computed with the training window and may fan out across threads; the
    /// winner never depends on thread count.
    ///
    /// # Errors
    ///
    /// | condition | error |
    /// |---|---|
    /// | pattern dimension differs | [`SomError::DimensionMismatch`] |
    /// | training window infeasible for a unit/pattern pair | [`SomError::Dtw`] |
    pub fn bmu(&self, pattern: &Sequence) -> Result<(usize, f64), SomError> {
        if pattern.dim() != self.dim() {
            return Err(SomError::DimensionMismatch {
                pattern: pattern.dim(),
                network: self.dim(),
            });
        }
        let window = self.config.window();
        let distances: Vec<f64> = self
            .units
            .par_iter()
            .map(|unit| dtw_distance(unit, pattern, window))
            .collect::<Result<_, _>>()?;
        let mut best = 0;
        for (index, &d) in distances.iter().enumerate().skip(1) {
            if d < distances[best] {
                best = index;
            }
        }
        Ok((best, distances[best]))
    }

    /// Runs one sequential epoch at fixed rates: presents every pattern once
    /// in an order shuffled from `seed`, adapting the winner and all units
    /// whose neighborhood weight exceeds [`ADAPTATION_CUTOFF`], each along
    /// its own alignment with the pattern. Returns the epoch's mean
    /// best-matching distance, measured when each pattern was presented.
    ///
    /// # Errors
    ///
    /// Same conditions as [`SomNetwork::bmu`].
    pub fn train_epoch(
        &mut self,
        patterns: &[Sequence],
        alpha: f64,
        radius: f64,
        seed: u64,
    ) -> Result<f64, SomError> {
        let dim = check_patterns(patterns)?;
        if dim != self.dim() {
            return Err(SomError::DimensionMismatch {
                pattern: dim,
                network: self.dim(),
            });
        }
        let window = self.config.window();
        let mut order: Vec<usize> = (0..patterns.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);

        let mut distance_sum = 0.0;
        for &pattern_index in &order {
            let pattern = &patterns[pattern_index];
            let (winner, distance) = self.bmu(pattern)?;
            distance_sum += distance;

            let touched: Vec<(usize, f64)> = (0..self.units.len())
                .filter_map(|u| {
                    let h = self.neighborhood(winner, u, radius);
                    (h > ADAPTATION_CUTOFF).then_some((u, h))
                })
                .collect();
            let paths: Vec<AlignmentPath> = touched
                .par_iter()
                .map(|&(u, _)| dtw(&self.units[u], pattern, window).map(|r| r.into_path()))
                .collect::<Result<_, _>>()?;
            for (&(u, h), path) in touched.iter().zip(&paths) {
                self.units[u] = adapt_unit(&self.units[u], pattern, path, alpha * h);
            }
        }
        Ok(distance_sum / patterns.len() as f64)
    }

    /// Runs the configured number of epochs with linearly decaying rates:
    /// epoch `t` of `T` uses `alpha0 * (1 - t/T)` and
    /// `max(radius0 * (1 - t/T), RADIUS_FLOOR)`, shuffling with seed
    /// `seed + 1 + t`. Returns the per-epoch trace.
    ///
    /// # Errors
    ///
    /// Same conditions as [`SomNetwork::bmu`].
    pub fn train(&mut self, patterns: &[Sequence]) -> Result<TrainingTrace, SomError> {
        let total = self.config.epochs();
        let mut trace = TrainingTrace::default();
        for t in 0..total {
            let fraction = 1.0 - t as f64 / total as f64;
            let alpha = self.config.alpha0() * fraction;
            let radius = (self.config.radius0() * fraction).max(RADIUS_FLOOR);
            let seed = self.config.seed().wrapping_add(1 + t as u64);
            let qe = self.train_epoch(patterns, alpha, radius, seed)?;
            trace.quantization_error.push(qe);
            trace.alpha.push(alpha);
            trace.radius.push(radius);
            self.epoch += 1;
        }
        Ok(trace)
    }

    /// Mean distance from each pattern to its best-matching unit in the
    /// network's current state.
    ///
    /// # Errors
    ///
    /// Same conditions as [`SomNetwork::bmu`].
    pub fn quantization_error(&self, patterns: &[Sequence]) -> Result<f64, SomError> {
        if patterns.is_empty() {
            return Err(SomError::NoPatterns);
        }
        let distances: Vec<f64> = patterns
            .par_iter()
            .map(|p| self.bmu(p).map(|(_, d)| d))
            .collect::<Result<_, _>>()?;
        Ok(distances.iter().sum::<f64>() / distances.len() as f64)
    }
}
