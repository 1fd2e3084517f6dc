//! Fixed-length segmentation of a category series.
//!
//! Segments are cut after concatenation, so a segment may straddle two
//! documents; the series' source ranges show where.

use serde::{Deserialize, Serialize};

use crate::ingest::WordLengthSeries;
use crate::{Category, Error, Result, Symbol};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemainderPolicy {
    #[default]
    Drop,
    /// Keep a trailing partial segment when it holds at least half of N.
    KeepIfAtLeastHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegmentationPolicy {
    pub segment_length: usize,
    #[serde(default)]
    pub remainder: RemainderPolicy,
}

impl Default for SegmentationPolicy {
    fn default() -> Self {
        Self {
            segment_length: 1000,
            remainder: RemainderPolicy::Drop,
        }
    }
}

impl SegmentationPolicy {
    pub fn new(segment_length: usize) -> Result<Self> {
        let p = Self {
            segment_length,
            remainder: RemainderPolicy::Drop,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.segment_length < 2 {
            return Err(Error::Config(format!(
                "segment length must be at least 2, got {}",
                self.segment_length
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub category: Category,
    /// Ordinal position within the category series.
    pub index: usize,
    /// Offset of the first symbol in the series.
    pub start: usize,
    pub lengths: Vec<Symbol>,
}

impl Segment {
    pub fn new(category: Category, index: usize, lengths: Vec<Symbol>) -> Self {
        Self {
            category,
            index,
            start: 0,
            lengths,
        }
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.lengths.len()
    }
}

/// Cuts `series` into consecutive, non-overlapping segments of N symbols.
pub fn segment(series: &WordLengthSeries, policy: &SegmentationPolicy) -> Result<Vec<Segment>> {
    policy.validate()?;
    let n = policy.segment_length;
    if series.len() < n {
        return Err(Error::SeriesTooShort {
            category: series.category.clone(),
            len: series.len(),
            segment_length: n,
        });
    }
    let mut out: Vec<Segment> = series
        .lengths
        .chunks_exact(n)
        .enumerate()
        .map(|(index, chunk)| Segment {
            category: series.category.clone(),
            index,
            start: index * n,
            lengths: chunk.to_vec(),
        })
        .collect();
    let tail = series.len() % n;
    if policy.remainder == RemainderPolicy::KeepIfAtLeastHalf && tail > 0 && 2 * tail >= n {
        let start = series.len() - tail;
        out.push(Segment {
            category: series.category.clone(),
            index: out.len(),
            start,
            lengths: series.lengths[start..].to_vec(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(len: usize) -> WordLengthSeries {
        let lengths = (0..len).map(|i| (i % 7 + 1) as Symbol).collect();
        WordLengthSeries::from_lengths(Category::new("en", "news"), lengths)
    }

    #[test]
    fn remainder_dropped() {
        let s = series(2500);
        let segs = segment(&s, &SegmentationPolicy::new(1000).unwrap()).unwrap();
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].range(), 0..1000);
        assert_eq!(segs[1].range(), 1000..2000);
        assert_eq!(segs[1].lengths, s.lengths[1000..2000]);
    }

    #[test]
    fn exact_fit() {
        let segs = segment(&series(1000), &SegmentationPolicy::default()).unwrap();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].len(), 1000);
    }

    #[test]
    fn too_short_names_category() {
        let err = segment(&series(999), &SegmentationPolicy::default()).unwrap_err();
        assert!(err.to_string().contains("en/news"), "{err}");
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn keep_half_tail() {
        let policy = SegmentationPolicy {
            segment_length: 1000,
            remainder: RemainderPolicy::KeepIfAtLeastHalf,
        };
        let segs = segment(&series(2500), &policy).unwrap();
        assert_eq!(segs.len(), 3);
        assert_eq!(segs[2].range(), 2000..2500);
        assert_eq!(segment(&series(2499), &policy).unwrap().len(), 2);
    }

    #[test]
    fn rejects_tiny_segment_length() {
        assert!(SegmentationPolicy::new(1).is_err());
        assert!(SegmentationPolicy::new(2).is_ok());
    }
}
