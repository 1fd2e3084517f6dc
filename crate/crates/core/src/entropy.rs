//! Gliding n-gram counts and the plug-in block entropy.
//!
//! A segment of N symbols holds K = N - n + 1 overlapping windows of order n
//! (stride 1, no wraparound). With `c_g` the count of n-gram `g`,
//!
//! ```text
//! phi_n = - sum_g (c_g / K) ln(c_g / K)
//! ```
//!
//! in nats, summed over observed n-grams only. Counts stay exact integers
//! until entropy or rank time.
//!
//! [`entropy`] depends only on the multiset of counts: terms are grouped by
//! count, summed in ascending count order with compensation, and clamped to
//! `[0, ln(distinct)]`. Two tables with the same count multiset (a shuffled
//! unigram table, a relabeled alphabet, a marginal that loses nothing) give
//! bit-identical values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::segment::Segment;
use crate::stats::compensated_sum;
use crate::{Category, Error, Result, Symbol};

/// A window of consecutive word lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NGram(pub Vec<Symbol>);

impl NGram {
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<&[Symbol]> for NGram {
    fn from(s: &[Symbol]) -> Self {
        NGram(s.to_vec())
    }
}

impl fmt::Display for NGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Exact counts of the distinct n-grams of one order.
///
/// Entries are stored flat and sorted lexicographically; every stored count
/// is at least 1 and the counts sum to `total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramTable {
    order: usize,
    symbols: Vec<Symbol>,
    counts: Vec<u64>,
    total: u64,
}

impl NGramTable {
    /// Builds a table from arbitrary `(n-gram, count)` pairs. Repeated
    /// n-grams are merged.
    pub fn from_counts<I, G>(order: usize, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (G, u64)>,
        G: AsRef<[Symbol]>,
    {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut pairs: Vec<(Vec<Symbol>, u64)> = Vec::new();
        for (g, c) in counts {
            let g = g.as_ref();
            if g.len() != order {
                return Err(Error::Table(format!("n-gram {g:?} does not have order {order}")));
            }
            if g.contains(&0) {
                return Err(Error::Table(format!("n-gram {g:?} contains a zero symbol")));
            }
            if c == 0 {
                return Err(Error::Table(format!("n-gram {g:?} has count 0")));
            }
            pairs.push((g.to_vec(), c));
        }
        pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut table = NGramTable {
            order,
            symbols: Vec::with_capacity(pairs.len() * order),
            counts: Vec::with_capacity(pairs.len()),
            total: 0,
        };
        for (g, c) in pairs {
            table.total += c;
            if table.counts.last().is_some() && table.symbols[table.symbols.len() - order..] == g[..] {
                *table.counts.last_mut().unwrap() += c;
            } else {
                table.symbols.extend_from_slice(&g);
                table.counts.push(c);
            }
        }
        if table.total == 0 {
            return Err(Error::Table("table is empty".into()));
        }
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of windows, K.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(n-gram, count)` in lexicographic n-gram order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&[Symbol], u64)> + '_ {
        self.symbols
            .chunks_exact(self.order)
            .zip(self.counts.iter().copied())
    }

    pub fn get(&self, ngram: &[Symbol]) -> u64 {
        if ngram.len() != self.order {
            return 0;
        }
        let (mut lo, mut hi) = (0, self.counts.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.symbols[mid * self.order..(mid + 1) * self.order].cmp(ngram) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return self.counts[mid],
            }
        }
        0
    }
}

fn check_symbols(symbols: &[Symbol]) -> Result<()> {
    if symbols.contains(&0) {
        return Err(Error::Table("word lengths must be at least 1".into()));
    }
    Ok(())
}

const PACK_BITS: usize = Symbol::BITS as usize;
const MAX_PACKED_ORDER: usize = 64 / PACK_BITS;

/// Counts the windows of every chunk into one table. Windows never cross
/// from one chunk into the next.
fn count_windows(chunks: &[&[Symbol]], order: usize) -> Result<NGramTable> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let windows: usize = chunks.iter().map(|c| c.len().saturating_sub(order - 1)).sum();
    let mut table = NGramTable {
        order,
        symbols: Vec::new(),
        counts: Vec::new(),
        total: windows as u64,
    };

    if order <= MAX_PACKED_ORDER {
        // Packing big-endian into a u64 keeps lexicographic order.
        let mut keys: Vec<u64> = Vec::with_capacity(windows);
        for chunk in chunks {
            for w in chunk.windows(order) {
                keys.push(w.iter().fold(0u64, |k, &s| (k << PACK_BITS) | s as u64));
            }
        }
        keys.sort_unstable();
        let mut i = 0;
        while i < keys.len() {
            let key = keys[i];
            let mut j = i + 1;
            while j < keys.len() && keys[j] == key {
                j += 1;
            }
            for pos in (0..order).rev() {
                table.symbols.push((key >> (pos * PACK_BITS)) as Symbol);
            }
            table.counts.push((j - i) as u64);
            i = j;
        }
    } else {
        let mut keys: Vec<&[Symbol]> = Vec::with_capacity(windows);
        for chunk in chunks {
            keys.extend(chunk.windows(order));
        }
        keys.sort_unstable();
        let mut i = 0;
        while i < keys.len() {
            let mut j = i + 1;
            while j < keys.len() && keys[j] == keys[i] {
                j += 1;
            }
            table.symbols.extend_from_slice(keys[i]);
            table.counts.push((j - i) as u64);
            i = j;
        }
    }
    Ok(table)
}

/// Gliding n-gram counts of a raw symbol sequence.
pub fn count_ngrams_in(symbols: &[Symbol], order: usize) -> Result<NGramTable> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if order > symbols.len() {
        return Err(Error::OrderTooLarge {
            order,
            len: symbols.len(),
        });
    }
    check_symbols(symbols)?;
    count_windows(&[symbols], order)
}

/// Gliding n-gram counts of one segment: K = N - n + 1 windows.
pub fn count_ngrams(segment: &Segment, order: usize) -> Result<NGramTable> {
    count_ngrams_in(&segment.lengths, order)
}

/// Pools the windows of several segments into a single table, counting each
/// segment separately (no window spans two segments).
pub fn count_ngrams_pooled(segments: &[Segment], order: usize) -> Result<NGramTable> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut chunks = Vec::with_capacity(segments.len());
    for s in segments {
        if order > s.len() {
            return Err(Error::OrderTooLarge { order, len: s.len() });
        }
        check_symbols(&s.lengths)?;
        chunks.push(&s.lengths[..]);
    }
    if chunks.is_empty() {
        return Err(Error::EmptyGroup("no segments to pool".into()));
    }
    count_windows(&chunks, order)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SegmentRef {
    pub category: Category,
    pub segment: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub order: usize,
    /// Block entropy in nats.
    pub value: f64,
    pub distinct_ngrams: usize,
    pub segment_ref: Option<SegmentRef>,
}

/// Plug-in block entropy of a table, in nats.
pub fn entropy(table: &NGramTable) -> EntropyEstimate {
    let k = table.total as f64;
    let mut counts = table.counts.clone();
    counts.sort_unstable();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < counts.len() {
        let c = counts[i];
        let mut j = i + 1;
        while j < counts.len() && counts[j] == c {
            j += 1;
        }
        let p = c as f64 / k;
        terms.push(-((j - i) as f64) * p * p.ln());
        i = j;
    }
    let upper = (table.distinct() as f64).ln();
    let value = compensated_sum(terms).clamp(0.0, upper);
    EntropyEstimate {
        order: table.order,
        value,
        distinct_ngrams: table.distinct(),
        segment_ref: None,
    }
}

/// Block entropy of one segment, tagged with the segment it came from.
pub fn segment_entropy(segment: &Segment, order: usize) -> Result<EntropyEstimate> {
    let mut est = entropy(&count_ngrams(segment, order)?);
    est.segment_ref = Some(SegmentRef {
        category: segment.category.clone(),
        segment: segment.index,
    });
    Ok(est)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    /// 1-based.
    pub rank: usize,
    pub ngram: NGram,
    pub count: u64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankDistribution {
    pub order: usize,
    pub total: u64,
    pub entries: Vec<RankEntry>,
}

/// Probabilities sorted descending; ties go to the lexicographically smaller
/// n-gram.
pub fn rank_distribution(table: &NGramTable) -> RankDistribution {
    let mut idx: Vec<usize> = (0..table.distinct()).collect();
    // Stable sort over lexicographically ordered entries keeps the tie-break.
    idx.sort_by(|&a, &b| table.counts[b].cmp(&table.counts[a]));
    let k = table.total as f64;
    let entries = idx
        .into_iter()
        .enumerate()
        .map(|(r, i)| {
            let c = table.counts[i];
            RankEntry {
                rank: r + 1,
                ngram: NGram(table.symbols[i * table.order..(i + 1) * table.order].to_vec()),
                count: c,
                probability: c as f64 / k,
            }
        })
        .collect();
    RankDistribution {
        order: table.order,
        total: table.total,
        entries,
    }
}

/// Projects an order-(n+1) table onto its length-n prefixes. The total is
/// unchanged.
pub fn marginal_table(table: &NGramTable) -> Result<NGramTable> {
    if table.order < 2 {
        return Err(Error::Table("marginal needs an order of at least 2".into()));
    }
    let order = table.order - 1;
    let mut out = NGramTable {
        order,
        symbols: Vec::new(),
        counts: Vec::new(),
        total: table.total,
    };
    // Lexicographic order groups equal prefixes together.
    for (g, c) in table.iter() {
        let prefix = &g[..order];
        if !out.counts.is_empty() && out.symbols[out.symbols.len() - order..] == *prefix {
            *out.counts.last_mut().unwrap() += c;
        } else {
            out.symbols.extend_from_slice(prefix);
            out.counts.push(c);
        }
    }
    Ok(out)
}
