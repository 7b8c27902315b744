//! Matrix-profile computation and recurring-pattern extraction over a long
//! univariate series.
//!
//! Subsequences of a fixed window length are compared under the z-normalized
//! Euclidean distance, which for windows `i` and `j` with means `mu`,
//! standard deviations `sigma`, and dot product `QT` equals
//! `sqrt(2m (1 - (QT - m mu_i mu_j) / (m sigma_i sigma_j)))`. Windows whose
//! standard deviation falls below [`FLAT_SIGMA`] are treated as all-zero
//! vectors: two flat windows are at distance 0, a flat and a non-flat window
//! at `sqrt(m)`. All distances therefore lie in `[0, 2 sqrt(m)]`.
//!
//! The profile is computed one diagonal at a time with rolling dot products.
//! Diagonals are distributed across threads and merged by an elementwise
//! `(distance, index)` minimum, so the result never depends on thread count.

use rayon::prelude::*;

use crate::error::MotifError;
use crate::series::{LongSeries, Sequence, FLAT_SIGMA};

/// Multiplier applied to a seed pair's distance to get the member-gathering
/// radius, and (doubled again) the minimum separation between centers.
pub const RADIUS_FACTOR: f64 = 2.0;

/// Offsets closer to a motif member than this fraction of the window are
/// trivial matches and are excluded from further minima.
#[must_use]
pub fn exclusion_zone(window: usize) -> usize {
    window.div_ceil(2)
}

/// Nearest-neighbor distance and index for every subsequence of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixProfile {
    window: usize,
    distances: Vec<f64>,
    indices: Vec<usize>,
}

impl MatrixProfile {
    /// Subsequence window length.
    #[must_use]
    pub fn window(&self) -> usize {
        self.window
    }

    /// `distances[i]` is the minimum distance from subsequence `i` to any
    /// subsequence at least an exclusion zone away.
    #[must_use]
    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    /// `indices[i]` is the offset attaining `distances[i]`, ties broken by
    /// the smallest offset.
    #[must_use]
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Number of subsequences.
    #[must_use]
    pub fn len(&self) -> usize {
        self.distances.len()
    }

    /// True when the series had no subsequences (never happens for valid
    /// inputs).
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }
}

/// Per-window mean and standard deviation, with flat windows flagged.
struct WindowStats {
    mean: Vec<f64>,
    sigma: Vec<f64>,
}

impl WindowStats {
    fn flat(&self, i: usize) -> bool {
        self.sigma[i] < FLAT_SIGMA
    }
}

fn window_stats(values: &[f64], m: usize) -> WindowStats {
    let count = values.len() - m + 1;
    let m_f = m as f64;
    let mut cum = vec![0.0; values.len() + 1];
    let mut cum_sq = vec![0.0; values.len() + 1];
    for (i, &v) in values.iter().enumerate() {
        cum[i + 1] = cum[i] + v;
        cum_sq[i + 1] = cum_sq[i] + v * v;
    }
    let mut mean = Vec::with_capacity(count);
    let mut sigma = Vec::with_capacity(count);
    for i in 0..count {
        let mu = (cum[i + m] - cum[i]) / m_f;
        let variance = ((cum_sq[i + m] - cum_sq[i]) / m_f - mu * mu).max(0.0);
        mean.push(mu);
        sigma.push(variance.sqrt());
    }
    WindowStats { mean, sigma }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Z-normalized distance between windows `i` and `j` given their raw dot
/// product.
fn zdist(qt: f64, m: usize, stats: &WindowStats, i: usize, j: usize) -> f64 {
    let m_f = m as f64;
    match (stats.flat(i), stats.flat(j)) {
        (true, true) => 0.0,
        (true, false) | (false, true) => m_f.sqrt(),
        (false, false) => {
            let correlation =
                ((qt - m_f * stats.mean[i] * stats.mean[j]) / (m_f * stats.sigma[i] * stats.sigma[j]))
                    .clamp(-1.0, 1.0);
            (2.0 * m_f * (1.0 - correlation)).max(0.0).sqrt()
        }
    }
}

fn merge_best(into: &mut [(f64, usize)], from: &[(f64, usize)]) {
    for (a, &b) in into.iter_mut().zip(from) {
        if b < *a {
            *a = b;
        }
    }
}

fn scan_diagonal(values: &[f64], m: usize, stats: &WindowStats, k: usize, best: &mut [(f64, usize)]) {
    let count = best.len();
    let mut qt = dot(&values[..m], &values[k..k + m]);
    for i in 0..count - k {
        let j = i + k;
        if i > 0 {
            qt += values[i + m - 1] * values[j + m - 1] - values[i - 1] * values[j - 1];
        }
        let d = zdist(qt, m, stats, i, j);
        if (d, j) < best[i] {
            best[i] = (d, j);
        }
        if (d, i) < best[j] {
            best[j] = (d, i);
        }
    }
}

fn check_series(series: &LongSeries, m: usize) -> Result<(), MotifError> {
    if series.dim() != 1 {
        return Err(MotifError::NotUnivariate(series.dim()));
    }
    if m == 0 {
        return Err(MotifError::ZeroWindow);
    }
    if series.len() < 2 * m {
        return Err(MotifError::SeriesTooShort {
            n: series.len(),
            m,
            min: 2 * m,
        });
    }
    Ok(())
}

/// Computes the matrix profile of a univariate series under the z-normalized
/// Euclidean distance, with an exclusion zone of [`exclusion_zone`] around
/// the diagonal.
///
/// # Errors
///
/// | condition | error |
/// |---|---|
/// | `series.dim() != 1` | [`MotifError::NotUnivariate`] |
/// | `m == 0` | [`MotifError::ZeroWindow`] |
/// | `series.len() < 2 m` | [`MotifError::SeriesTooShort`] |
pub fn matrix_profile(series: &LongSeries, m: usize) -> Result<MatrixProfile, MotifError> {
    check_series(series, m)?;
    let values = series.values();
    let count = series.len() - m + 1;
    let stats = window_stats(values, m);
    let excl = exclusion_zone(m);

    let identity = || vec![(f64::INFINITY, usize::MAX); count];
    let best = (excl..count)
        .into_par_iter()
        .fold(identity, |mut best, k| {
            scan_diagonal(values, m, &stats, k, &mut best);
            best
        })
        .reduce(identity, |mut a, b| {
            merge_best(&mut a, &b);
            a
        });

    let mut distances = Vec::with_capacity(count);
    let mut indices = Vec::with_capacity(count);
    for (d, j) in best {
        debug_assert!(d.is_finite(), "every window has a partner when n >= 2m");
        distances.push(d);
        indices.push(j);
    }
    Ok(MatrixProfile {
        window: m,
        distances,
        indices,
    })
}

/// Z-normalized distances from the window at `center` to every window of the
/// series. The self-comparison is exactly 0 rather than accumulated float
/// noise, so a center always falls inside its own gathering radius.
fn distance_row(values: &[f64], stats: &WindowStats, m: usize, center: usize) -> Vec<f64> {
    let count = values.len() - m + 1;
    let center_window = &values[center..center + m];
    (0..count)
        .into_par_iter()
        .map(|j| {
            if j == center {
                return 0.0;
            }
            let qt = dot(center_window, &values[j..j + m]);
            zdist(qt, m, stats, center, j)
        })
        .collect()
}

/// One recurring pattern: the seed pair's representative subsequence plus
/// every non-overlapping occurrence within the gathering radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Motif {
    rank: usize,
    center: Sequence,
    center_offset: usize,
    pair_distance: f64,
    member_offsets: Vec<usize>,
}

impl Motif {
    /// 1-based discovery rank; lower ranks have closer seed pairs.
    #[must_use]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Raw (un-normalized) values of the center subsequence.
    #[must_use]
    pub fn center(&self) -> &Sequence {
        &self.center
    }

    /// Offset of the center subsequence in the source series.
    #[must_use]
    pub fn center_offset(&self) -> usize {
        self.center_offset
    }

    /// Distance between the seed pair, i.e. the profile minimum that
    /// discovered this motif.
    #[must_use]
    pub fn pair_distance(&self) -> f64 {
        self.pair_distance
    }

    /// Sorted, pairwise non-overlapping occurrence offsets within the
    /// gathering radius of the center.
    #[must_use]
    pub fn member_offsets(&self) -> &[usize] {
        &self.member_offsets
    }

    /// Member-gathering radius: [`RADIUS_FACTOR`] times the pair distance.
    #[must_use]
    pub fn radius(&self) -> f64 {
        RADIUS_FACTOR * self.pair_distance
    }
}

/// All motifs extracted from one series, in discovery order.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifSet {
    window: usize,
    motifs: Vec<Motif>,
}

impl MotifSet {
    /// Subsequence window length shared by every motif.
    #[must_use]
    pub fn window(&self) -> usize {
        self.window
    }

    /// Motifs in discovery order (ascending pair distance).
    #[must_use]
    pub fn motifs(&self) -> &[Motif] {
        &self.motifs
    }

    /// Number of motifs.
    #[must_use]
    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    /// True when no motif was found.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    /// Re-derives every structural property against the source series:
    /// sequential ranks, ascending pair distances, members inside each
    /// motif's radius and pairwise non-overlapping, and centers separated by
    /// more than twice the larger radius of each pair.
    ///
    /// # Errors
    ///
    /// Returns a description of the first violated property.
    pub fn validate(&self, series: &LongSeries) -> Result<(), String> {
        check_series(series, self.window).map_err(|e| e.to_string())?;
        let values = series.values();
        let m = self.window;
        let stats = window_stats(values, m);
        let count = series.len() - m + 1;
        for (position, motif) in self.motifs.iter().enumerate() {
            if motif.rank != position + 1 {
                return Err(format!(
                    "motif at position {position} has rank {}, expected {}",
                    motif.rank,
                    position + 1
                ));
            }
            if position > 0 && motif.pair_distance < self.motifs[position - 1].pair_distance {
                return Err(format!(
                    "pair distances not ascending at rank {}",
                    motif.rank
                ));
            }
            if motif.center_offset >= count {
                return Err(format!("rank {}: center offset out of range", motif.rank));
            }
            if motif.center.values() != &values[motif.center_offset..motif.center_offset + m] {
                return Err(format!(
                    "rank {}: center values do not match the series",
                    motif.rank
                ));
            }
            let radius = motif.radius();
            let row = distance_row(values, &stats, m, motif.center_offset);
            for &offset in &motif.member_offsets {
                if offset >= count {
                    return Err(format!("rank {}: member offset out of range", motif.rank));
                }
                if row[offset] > radius {
                    return Err(format!(
                        "rank {}: member {} at distance {} exceeds radius {}",
                        motif.rank, offset, row[offset], radius
                    ));
                }
            }
            for pair in motif.member_offsets.windows(2) {
                if pair[1] <= pair[0] {
                    return Err(format!("rank {}: member offsets not sorted", motif.rank));
                }
                if pair[1] - pair[0] < m {
                    return Err(format!(
                        "rank {}: members {} and {} overlap",
                        motif.rank, pair[0], pair[1]
                    ));
                }
            }
            for other in &self.motifs[..position] {
                let qt = dot(
                    &values[motif.center_offset..motif.center_offset + m],
                    &values[other.center_offset..other.center_offset + m],
                );
                let d = zdist(qt, m, &stats, motif.center_offset, other.center_offset);
                let required = RADIUS_FACTOR * motif.pair_distance.max(other.pair_distance);
                if d <= required {
                    return Err(format!(
                        "ranks {} and {}: centers at distance {} within separation {}",
                        other.rank, motif.rank, d, required
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Extracts up to `max_motifs` motifs by repeatedly taking the smallest
/// unexcluded profile entry as a seed pair, gathering all non-overlapping
/// occurrences within twice the pair distance, excluding every member's
/// neighborhood from later minima, and keeping the motif if its center stays
/// farther than twice the radius from every earlier center.
///
/// # Errors
///
/// Same conditions as [`matrix_profile`].
pub fn extract_motifs(
    series: &LongSeries,
    m: usize,
    max_motifs: usize,
) -> Result<MotifSet, MotifError> {
    let profile = matrix_profile(series, m)?;
    let values = series.values();
    let stats = window_stats(values, m);
    let count = profile.len();
    let excl = exclusion_zone(m);

    let mut excluded = vec![false; count];
    let mut motifs: Vec<Motif> = Vec::new();
    while motifs.len() < max_motifs {
        let mut seed: Option<usize> = None;
        for (i, flagged) in excluded.iter().enumerate() {
            if !flagged && seed.is_none_or(|s| profile.distances()[i] < profile.distances()[s])
            {
                seed = Some(i);
            }
        }
        let Some(center) = seed else { break };
        let pair_distance = profile.distances()[center];
        let radius = RADIUS_FACTOR * pair_distance;

        let row = distance_row(values, &stats, m, center);
        let mut within: Vec<usize> = (0..count).filter(|&j| row[j] <= radius).collect();
        within.sort_by(|&a, &b| {
            row[a]
                .partial_cmp(&row[b])
                .expect("distances are never NaN")
                .then((a != center).cmp(&(b != center)))
                .then(a.cmp(&b))
        });
        let mut members: Vec<usize> = Vec::new();
        for j in within {
            if members.iter().all(|&k| k.abs_diff(j) >= m) {
                members.push(j);
            }
        }
        members.sort_unstable();

        for &offset in &members {
            let lo = offset.saturating_sub(excl);
            let hi = (offset + excl).min(count - 1);
            for slot in &mut excluded[lo..=hi] {
                *slot = true;
            }
        }

        let separated = motifs.iter().all(|other| {
            let qt = dot(
                &values[center..center + m],
                &values[other.center_offset..other.center_offset + m],
            );
            let d = zdist(qt, m, &stats, center, other.center_offset);
            d > RADIUS_FACTOR * pair_distance.max(other.pair_distance)
        });
        if !separated {
            continue;
        }

        let center_values = values[center..center + m].to_vec();
        motifs.push(Motif {
            rank: motifs.len() + 1,
            center: Sequence::univariate(center_values).expect("series values are finite"),
            center_offset: center,
            pair_distance,
            member_offsets: members,
        });
    }

    Ok(MotifSet { window: m, motifs })
}

/// Clones the motif centers in rank order, ready to train a map on.
#[must_use]
pub fn motif_centers(set: &MotifSet) -> Vec<Sequence> {
    set.motifs().iter().map(|m| m.center().clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn long(values: Vec<f64>) -> LongSeries {
        LongSeries::from_values(values, 1).unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        let series = long(vec![0.0, 1.0, 2.0]);
        assert!(matches!(
            matrix_profile(&series, 0),
            Err(MotifError::ZeroWindow)
        ));
        assert!(matches!(
            matrix_profile(&series, 2),
            Err(MotifError::SeriesTooShort { n: 3, m: 2, min: 4 })
        ));
        let multi = LongSeries::from_values(vec![0.0; 8], 2).unwrap();
        assert!(matches!(
            matrix_profile(&multi, 2),
            Err(MotifError::NotUnivariate(2))
        ));
    }

    #[test]
    fn exclusion_zone_rounds_up() {
        assert_eq!(exclusion_zone(1), 1);
        assert_eq!(exclusion_zone(8), 4);
        assert_eq!(exclusion_zone(25), 13);
        assert_eq!(exclusion_zone(150), 75);
    }

    #[test]
    fn profile_of_a_periodic_series_hand_computed() {
        // Windows 0 and 4 are identical; 1 and 3 are shifted copies at
        // distance 2 sqrt(2); window 2 is anti-correlated with both ends.
        let series = long(vec![0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0]);
        let profile = matrix_profile(&series, 4).unwrap();
        // The correlation form amplifies rounding noise by sqrt near zero,
        // so exact repeats land within ~1e-7 of zero rather than at it.
        let expected = [0.0, 8.0f64.sqrt(), 4.0, 8.0f64.sqrt(), 0.0];
        for (got, want) in profile.distances().iter().zip(expected) {
            assert!((got - want).abs() < 1e-6, "got {got}, want {want}");
        }
        assert_eq!(profile.indices(), &[4, 4, 0, 0, 0]);
        let bound = 2.0 * 2.0;
        assert!(profile.distances().iter().all(|&d| (0.0..=bound).contains(&d)));
    }

    #[test]
    fn flat_windows_are_zero_distance_apart() {
        let profile = matrix_profile(&long(vec![5.0; 5]), 2).unwrap();
        assert_eq!(profile.distances(), &[0.0, 0.0, 0.0, 0.0]);
        assert_eq!(profile.indices(), &[1, 0, 0, 0]);
    }

    #[test]
    fn planted_twins_become_the_top_motif() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut values: Vec<f64> = (0..200).map(|_| rng.random_range(-4.0..4.0)).collect();
        let planted: Vec<f64> = (0..20).map(|_| rng.random_range(-4.0..4.0)).collect();
        values[30..50].copy_from_slice(&planted);
        values[120..140].copy_from_slice(&planted);
        let series = long(values);
        let set = extract_motifs(&series, 20, 5).unwrap();
        assert!(!set.is_empty());
        let top = &set.motifs()[0];
        assert_eq!(top.rank(), 1);
        assert!(top.pair_distance() < 1e-6);
        assert_eq!(top.member_offsets(), &[30, 120]);
        assert_eq!(
            top.center().values(),
            &series.values()[top.center_offset()..top.center_offset() + 20]
        );
        set.validate(&series).unwrap();
    }

    #[test]
    fn zero_budget_yields_empty_set() {
        let series = long((0..64).map(|i| (i as f64 * 0.7).sin()).collect());
        let set = extract_motifs(&series, 8, 0).unwrap();
        assert!(set.is_empty());
        set.validate(&series).unwrap();
    }

    #[test]
    fn extraction_exhausts_and_stays_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let values: Vec<f64> = (0..300)
            .map(|i| (i as f64 * 0.21).sin() * 2.0 + rng.random_range(-0.3..0.3))
            .collect();
        let series = long(values);
        let set = extract_motifs(&series, 16, 1000).unwrap();
        assert!(!set.is_empty());
        assert!(set.len() < 1000, "a 300-point series cannot hold 1000 motifs");
        for (i, motif) in set.motifs().iter().enumerate() {
            assert_eq!(motif.rank(), i + 1);
        }
        set.validate(&series).unwrap();
        let centers = motif_centers(&set);
        assert_eq!(centers.len(), set.len());
        assert_eq!(centers[0].values(), set.motifs()[0].center().values());
    }

    #[test]
    fn members_respect_radius_and_spacing() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        // A noisy sawtooth has many near-repeats, so motifs gather several
        // members each.
        let values: Vec<f64> = (0..400)
            .map(|i| (i % 25) as f64 / 5.0 + rng.random_range(-0.05..0.05))
            .collect();
        let series = long(values);
        let set = extract_motifs(&series, 25, 3).unwrap();
        assert!(set.motifs().iter().any(|m| m.member_offsets().len() > 2));
        set.validate(&series).unwrap();
    }
}
