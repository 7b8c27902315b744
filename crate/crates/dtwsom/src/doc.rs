//! The structured motif-center document exchanged between pipeline stages.
//!
//! Both the synthetic generator and the extractor emit this JSON shape, so
//! training consumes either source through one loader. Extraction fills the
//! offsets and distances; synthetic generation fills the cluster labels.

use serde::{Deserialize, Serialize};

use crate::motif::MotifSet;
use crate::series::Sequence;
use crate::synth::MotifCluster;

/// One motif center with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifEntry {
    /// 1-based significance rank; rank 1 is the most significant center.
    pub rank: usize,
    /// Center values.
    pub center: Sequence,
    /// Offset of the center in the source series (extraction only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_offset: Option<usize>,
    /// Seed-pair distance that discovered the motif (extraction only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_distance: Option<f64>,
    /// Occurrence offsets in the source series (extraction only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub member_offsets: Vec<usize>,
    /// Cluster label (synthetic generation only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A rank-ordered list of motif centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifDocument {
    /// Subsequence window length (extraction only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    /// Motif entries, most significant first.
    pub motifs: Vec<MotifEntry>,
}

impl MotifDocument {
    /// Builds the document for an extraction result.
    #[must_use]
    pub fn from_motif_set(set: &MotifSet) -> Self {
        MotifDocument {
            window: Some(set.window()),
            motifs: set
                .motifs()
                .iter()
                .map(|m| MotifEntry {
                    rank: m.rank(),
                    center: m.center().clone(),
                    center_offset: Some(m.center_offset()),
                    pair_distance: Some(m.pair_distance()),
                    member_offsets: m.member_offsets().to_vec(),
                    label: None,
                })
                .collect(),
        }
    }

    /// Builds the document for generated centers, ranked in generation order
    /// and labeled with their clusters.
    #[must_use]
    pub fn from_labeled_centers(centers: &[(Sequence, MotifCluster)]) -> Self {
        MotifDocument {
            window: None,
            motifs: centers
                .iter()
                .enumerate()
                .map(|(index, (center, cluster))| MotifEntry {
                    rank: index + 1,
                    center: center.clone(),
                    center_offset: None,
                    pair_distance: None,
                    member_offsets: Vec::new(),
                    label: Some(cluster.name().to_string()),
                })
                .collect(),
        }
    }

    /// Centers in ascending rank order, ready to train on.
    #[must_use]
    pub fn centers(&self) -> Vec<Sequence> {
        let mut entries: Vec<&MotifEntry> = self.motifs.iter().collect();
        entries.sort_by_key(|e| e.rank);
        entries.iter().map(|e| e.center.clone()).collect()
    }

    /// Labels aligned with [`MotifDocument::centers`], when every entry has
    /// one.
    #[must_use]
    pub fn labels(&self) -> Option<Vec<String>> {
        let mut entries: Vec<&MotifEntry> = self.motifs.iter().collect();
        entries.sort_by_key(|e| e.rank);
        entries
            .iter()
            .map(|e| e.label.clone())
            .collect::<Option<Vec<_>>>()
    }
}
