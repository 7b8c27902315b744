//! Support code shared by the integration suites: independent reference
//! implementations (written against the math, not the library internals),
//! dataset discovery, and small generators.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use dtwsom::{
    default_radius, generate, MotifCluster, Sequence, SomNetwork, TrainingConfig, DEFAULT_ALPHA,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Plain full-matrix dynamic programming reference for the warped distance.
///
/// Cell (i, j) is admissible iff |i*m - j*n| <= w*n (the band inequality in
/// exact integer form). Returns `None` when the window cannot connect the two
/// corners, i.e. w < |n - m|.
pub fn oracle_dtw(a: &Sequence, b: &Sequence, window: Option<usize>) -> Option<f64> {
    assert_eq!(a.dim(), b.dim());
    let dim = a.dim();
    let (n, m) = (a.len(), b.len());
    if let Some(w) = window {
        if n.abs_diff(m) > w {
            return None;
        }
    }
    let inside = |i: usize, j: usize| match window {
        None => true,
        Some(w) => (i * m).abs_diff(j * n) <= w * n,
    };
    let cost = |i: usize, j: usize| {
        let x = a.point(i);
        let y = b.point(j);
        let mut c = 0.0;
        for d in 0..dim {
            let diff = x[d] - y[d];
            c += diff * diff;
        }
        c
    };
    let mut acc = vec![f64::INFINITY; n * m];
    for i in 0..n {
        for j in 0..m {
            if !inside(i, j) {
                continue;
            }
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let mut best = f64::INFINITY;
                if i > 0 && j > 0 {
                    best = best.min(acc[(i - 1) * m + (j - 1)]);
                }
                if i > 0 {
                    best = best.min(acc[(i - 1) * m + j]);
                }
                if j > 0 {
                    best = best.min(acc[i * m + (j - 1)]);
                }
                best
            };
            acc[i * m + j] = best + cost(i, j);
        }
    }
    Some(acc[n * m - 1].sqrt())
}

/// Direct z-normalized distance between the windows at offsets `i` and `j`,
/// materializing both normalized vectors. Flat windows (population sigma
/// below 1e-8) compare as zero to each other and as sqrt(m) to anything else.
pub fn oracle_znorm_dist(values: &[f64], m: usize, i: usize, j: usize) -> f64 {
    let stats = |o: usize| {
        let w = &values[o..o + m];
        let mean = w.iter().sum::<f64>() / m as f64;
        let var = w.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / m as f64;
        (mean, var.sqrt())
    };
    let (mi, si) = stats(i);
    let (mj, sj) = stats(j);
    let flat_i = si < 1e-8;
    let flat_j = sj < 1e-8;
    if flat_i && flat_j {
        return 0.0;
    }
    if flat_i || flat_j {
        return (m as f64).sqrt();
    }
    let mut acc = 0.0;
    for k in 0..m {
        let x = (values[i + k] - mi) / si;
        let y = (values[j + k] - mj) / sj;
        acc += (x - y) * (x - y);
    }
    acc.sqrt()
}

/// Quadratic-time reference for the all-pairs nearest-neighbor profile.
/// Trivial matches are skipped with the same |i - j| >= ceil(m/2) rule; ties
/// resolve to the lowest neighbor offset.
pub fn oracle_matrix_profile(values: &[f64], m: usize) -> (Vec<f64>, Vec<usize>) {
    let count = values.len() - m + 1;
    let excl = m.div_ceil(2);
    let mut dist = vec![f64::INFINITY; count];
    let mut idx = vec![0usize; count];
    for i in 0..count {
        for j in 0..count {
            if i.abs_diff(j) < excl {
                continue;
            }
            let d = oracle_znorm_dist(values, m, i, j);
            if d < dist[i] {
                dist[i] = d;
                idx[i] = j;
            }
        }
    }
    (dist, idx)
}

/// Uniform values in [-5, 5), `len` points of `dim` values each.
pub fn random_sequence(rng: &mut ChaCha8Rng, len: usize, dim: usize) -> Sequence {
    let values = (0..len * dim).map(|_| rng.random_range(-5.0..5.0)).collect();
    Sequence::new(values, dim).expect("finite random values")
}

/// Locates `<dataset>/<dataset>_TRAIN.tsv` (or `.txt`) under the directory
/// named by `DTWSOM_UCR_DIR`, falling back to `data/` at the repository root.
pub fn ucr_file(dataset: &str) -> Result<PathBuf, String> {
    let base = std::env::var_os("DTWSOM_UCR_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR"))
                .join("..")
                .join("..")
                .join("data")
        });
    for ext in ["tsv", "txt"] {
        let path = base.join(dataset).join(format!("{dataset}_TRAIN.{ext}"));
        if path.is_file() {
            return Ok(path);
        }
    }
    Err(format!(
        "{}/{dataset}/{dataset}_TRAIN.tsv not found",
        base.display()
    ))
}

/// Fraction of patterns whose winner lands on a unit dominated by the
/// pattern's own cluster, plus each unit's majority cluster (`None` when a
/// unit wins nothing; count ties resolve to the lowest cluster id).
pub fn purity_and_majorities(
    network: &SomNetwork,
    patterns: &[Sequence],
    clusters: &[usize],
) -> (f64, Vec<Option<usize>>) {
    assert_eq!(patterns.len(), clusters.len());
    let unit_count = network.rows() * network.cols();
    let cluster_count = clusters.iter().max().map_or(0, |&c| c + 1);
    let mut counts = vec![vec![0usize; cluster_count]; unit_count];
    for (pattern, &cluster) in patterns.iter().zip(clusters) {
        let (winner, _) = network.bmu(pattern).expect("consistent dimensions");
        counts[winner][cluster] += 1;
    }
    let mut agreeing = 0usize;
    let mut majorities = Vec::with_capacity(unit_count);
    for unit_counts in &counts {
        let total: usize = unit_counts.iter().sum();
        if total == 0 {
            majorities.push(None);
            continue;
        }
        let majority = unit_counts
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(c, _)| c)
            .expect("nonempty counts");
        agreeing += unit_counts[majority];
        majorities.push(Some(majority));
    }
    (agreeing as f64 / patterns.len() as f64, majorities)
}

pub struct RunOutcome {
    pub purity: f64,
    pub diagonal_distinct: bool,
    /// Quantization error recorded for the first training epoch.
    pub first_qe: f64,
    /// Quantization error recorded for the last training epoch.
    pub last_qe: f64,
}

pub struct SyntheticStudy {
    pub anchor: Vec<RunOutcome>,
    pub random: Vec<RunOutcome>,
    pub anchor_elapsed: Duration,
}

pub const STUDY_SEEDS: u64 = 10;
pub const STUDY_CENTERS: usize = 180;

fn run_synthetic(seed: u64, anchors: Option<&[usize]>) -> RunOutcome {
    let labeled = generate(STUDY_CENTERS, seed);
    let patterns: Vec<Sequence> = labeled.iter().map(|(s, _)| s.clone()).collect();
    let clusters: Vec<usize> = labeled
        .iter()
        .map(|(_, c)| MotifCluster::ALL.iter().position(|k| k == c).unwrap())
        .collect();
    let config = TrainingConfig::new(30, DEFAULT_ALPHA, default_radius(3, 3), None, seed)
        .expect("valid defaults");
    let mut network = match anchors {
        Some(list) => SomNetwork::init_anchor(&patterns, list, 3, 3, config),
        None => SomNetwork::init_random_sample(&patterns, 3, 3, config),
    }
    .expect("180 distinct random centers");
    let trace = network.train(&patterns).unwrap();
    let first_qe = *trace.quantization_error.first().unwrap();
    let last_qe = *trace.quantization_error.last().unwrap();
    let (purity, majorities) = purity_and_majorities(&network, &patterns, &clusters);
    let diagonal: Vec<_> = [0usize, 4, 8].iter().map(|&u| majorities[u]).collect();
    let diagonal_distinct = diagonal.iter().all(Option::is_some)
        && diagonal[0] != diagonal[1]
        && diagonal[1] != diagonal[2]
        && diagonal[0] != diagonal[2];
    RunOutcome {
        purity,
        diagonal_distinct,
        first_qe,
        last_qe,
    }
}

/// Three-cluster benchmark shared by the recovery and stability gates: ten
/// seeded 3x3/30-epoch runs per initialization mode. One anchor per cluster,
/// taken as each cluster's first center (offsets 0, 60, 120).
pub fn synthetic_study() -> &'static SyntheticStudy {
    static STUDY: OnceLock<SyntheticStudy> = OnceLock::new();
    STUDY.get_or_init(|| {
        let start = Instant::now();
        let anchor: Vec<_> = (0..STUDY_SEEDS)
            .map(|seed| run_synthetic(seed, Some(&[0, 60, 120])))
            .collect();
        let anchor_elapsed = start.elapsed();
        let random: Vec<_> = (0..STUDY_SEEDS)
            .map(|seed| run_synthetic(seed, None))
            .collect();
        SyntheticStudy {
            anchor,
            random,
            anchor_elapsed,
        }
    })
}

/// Population standard deviation.
pub fn std_dev(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / values.len() as f64;
    var.sqrt()
}
