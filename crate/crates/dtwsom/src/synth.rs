//! Seeded generator for synthetic motif centers with known cluster labels.
//!
//! Each center is a run of three behaviors drawn from value bands: low
//! `[-3, -1.5)`, middle `[-0.5, 0.5)`, and high `[1.5, 3)`. A cluster fixes
//! the band order; the three behavior lengths are drawn uniformly from 5 to
//! 10 points each, so centers span 15 to 30 points. The bands are disjoint
//! and far apart, which makes centers from the same cluster much closer under
//! warping than centers from different clusters.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::series::Sequence;

const LOW: (f64, f64) = (-3.0, -1.5);
const MIDDLE: (f64, f64) = (-0.5, 0.5);
const HIGH: (f64, f64) = (1.5, 3.0);

const MIN_BEHAVIOR_LEN: usize = 5;
const MAX_BEHAVIOR_LEN: usize = 10;

/// The three band orders a synthetic center can follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotifCluster {
    LowMiddleHigh,
    HighMiddleLow,
    MiddleMiddleMiddle,
}

impl MotifCluster {
    /// All clusters in generation order.
    pub const ALL: [MotifCluster; 3] = [
        MotifCluster::LowMiddleHigh,
        MotifCluster::HighMiddleLow,
        MotifCluster::MiddleMiddleMiddle,
    ];

    /// Stable label used in emitted documents.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            MotifCluster::LowMiddleHigh => "low-middle-high",
            MotifCluster::HighMiddleLow => "high-middle-low",
            MotifCluster::MiddleMiddleMiddle => "middle-middle-middle",
        }
    }

    /// Value band of each of the three behaviors.
    #[must_use]
    pub fn bands(self) -> [(f64, f64); 3] {
        match self {
            MotifCluster::LowMiddleHigh => [LOW, MIDDLE, HIGH],
            MotifCluster::HighMiddleLow => [HIGH, MIDDLE, LOW],
            MotifCluster::MiddleMiddleMiddle => [MIDDLE, MIDDLE, MIDDLE],
        }
    }
}

/// Generates `count` labeled centers, split as evenly as possible across the
/// three clusters (the first `count % 3` clusters in [`MotifCluster::ALL`]
/// order receive one extra). The same seed always produces the same centers.
#[must_use]
pub fn generate(count: usize, seed: u64) -> Vec<(Sequence, MotifCluster)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = count / 3;
    let extra = count % 3;
    let mut out = Vec::with_capacity(count);
    for (position, cluster) in MotifCluster::ALL.into_iter().enumerate() {
        let cluster_count = base + usize::from(position < extra);
        for _ in 0..cluster_count {
            let lengths: [usize; 3] = [
                rng.random_range(MIN_BEHAVIOR_LEN..=MAX_BEHAVIOR_LEN),
                rng.random_range(MIN_BEHAVIOR_LEN..=MAX_BEHAVIOR_LEN),
                rng.random_range(MIN_BEHAVIOR_LEN..=MAX_BEHAVIOR_LEN),
            ];
            let mut values = Vec::with_capacity(lengths.iter().sum());
            for (len, (lo, hi)) in lengths.into_iter().zip(cluster.bands()) {
                for _ in 0..len {
                    values.push(rng.random_range(lo..hi));
                }
            }
            let seq = Sequence::univariate(values).expect("bands contain finite values");
            out.push((seq, cluster));
        }
    }
    out
}
