//! Shuffled surrogates and the real-vs-shuffled comparison.
//!
//! A surrogate is a uniform random permutation of one segment, so its
//! unigram table is identical to the original and only correlations between
//! positions are destroyed. The permutation is fixed by
//! `(seed, category, segment index, replicate)`: each key is hashed into its
//! own ChaCha stream, so results do not depend on scheduling.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::entropy::{count_ngrams, entropy};
use crate::segment::Segment;
use crate::stats::mean;
use crate::{Category, Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShuffleScope {
    #[default]
    PerSegment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShuffleConfig {
    pub seed: u64,
    #[serde(default)]
    pub scope: ShuffleScope,
    pub replicates: usize,
}

impl Default for ShuffleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            scope: ShuffleScope::PerSegment,
            replicates: 10,
        }
    }
}

impl ShuffleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        Ok(())
    }
}

fn stream_key(seed: u64, category: &Category, segment: usize, replicate: usize) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(b"wordlen/shuffle/v1");
    h.update(seed.to_le_bytes());
    for part in [&category.language, &category.genre] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    h.update((segment as u64).to_le_bytes());
    h.update((replicate as u64).to_le_bytes());
    h.finalize().into()
}

/// A uniformly random permutation of `segment`, keyed by the seed, the
/// segment's category and index, and the replicate number.
pub fn shuffle_segment(segment: &Segment, seed: u64, replicate: usize) -> Segment {
    let mut rng = ChaCha8Rng::from_seed(stream_key(seed, &segment.category, segment.index, replicate));
    let mut out = segment.clone();
    out.lengths.shuffle(&mut rng);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub category: Category,
    pub order: usize,
    /// Mean over segments, nats.
    pub phi_real: f64,
    /// Mean over segments and replicates, nats.
    pub phi_shuffled: f64,
    pub delta: f64,
    pub segment_count: usize,
    pub replicate_count: usize,
    /// Per segment, in segment order.
    pub real: Vec<f64>,
    /// `shuffled[segment][replicate]`.
    pub shuffled: Vec<Vec<f64>>,
}

/// Compares each order's mean block entropy on the real segments against
/// shuffled surrogates of the same segments.
pub fn compare_real_shuffled(
    segments: &[Segment],
    orders: &[usize],
    config: &ShuffleConfig,
) -> Result<Vec<ComparisonReport>> {
    config.validate()?;
    let first = segments
        .first()
        .ok_or_else(|| Error::EmptyGroup("no segments to compare".into()))?;
    if let Some(other) = segments.iter().find(|s| s.category != first.category) {
        return Err(Error::MixedCategories(first.category.clone(), other.category.clone()));
    }
    if orders.is_empty() {
        return Err(Error::Config("at least one order is required".into()));
    }

    let phis = |seg: &Segment| -> Result<Vec<f64>> {
        orders
            .iter()
            .map(|&n| Ok(entropy(&count_ngrams(seg, n)?).value))
            .collect()
    };

    // per_segment[s] = (real[order], shuffled[replicate][order])
    let per_segment: Vec<(Vec<f64>, Vec<Vec<f64>>)> = segments
        .par_iter()
        .map(|seg| {
            let real = phis(seg)?;
            let shuffled = (0..config.replicates)
                .map(|r| phis(&shuffle_segment(seg, config.seed, r)))
                .collect::<Result<Vec<_>>>()?;
            Ok((real, shuffled))
        })
        .collect::<Result<_>>()?;

    let reports = orders
        .iter()
        .enumerate()
        .map(|(k, &order)| {
            let real: Vec<f64> = per_segment.iter().map(|(r, _)| r[k]).collect();
            let shuffled: Vec<Vec<f64>> = per_segment
                .iter()
                .map(|(_, s)| s.iter().map(|v| v[k]).collect())
                .collect();
            // Averaging replicates first keeps equal-replicate cells exact,
            // so a permutation-invariant order gives delta == 0.
            let per_segment_means: Vec<f64> = shuffled.iter().map(|v| mean(v)).collect();
            let phi_real = mean(&real);
            let phi_shuffled = mean(&per_segment_means);
            ComparisonReport {
                category: first.category.clone(),
                order,
                phi_real,
                phi_shuffled,
                delta: phi_shuffled - phi_real,
                segment_count: segments.len(),
                replicate_count: config.replicates,
                real,
                shuffled,
            }
        })
        .collect();
    Ok(reports)
}
