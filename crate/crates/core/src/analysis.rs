//! Aggregation of per-segment entropies into per-category results.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{segment_entropy, EntropyEstimate, RankDistribution};
use crate::ingest::WordLengthSeries;
use crate::segment::{segment, RemainderPolicy, Segment, SegmentationPolicy};
use crate::stats::{mean, sample_std};
use crate::{Category, Error, Result, Symbol};

/// Block entropies of every segment for every order, in segment-major order.
pub fn estimate_segments(segments: &[Segment], orders: &[usize]) -> Result<Vec<EntropyEstimate>> {
    let per_segment: Vec<Vec<EntropyEstimate>> = segments
        .par_iter()
        .map(|s| orders.iter().map(|&n| segment_entropy(s, n)).collect())
        .collect::<Result<_>>()?;
    Ok(per_segment.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategorySummary {
    pub category: Category,
    pub order: usize,
    pub mean_phi: f64,
    pub std_phi: f64,
    pub stderr_phi: f64,
    pub segment_count: usize,
}

impl CategorySummary {
    /// Mean, sample standard deviation and standard error of one group.
    pub fn from_values(category: Category, order: usize, values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyGroup(format!("{category}, order {order}")));
        }
        let mean_phi = mean(values);
        let std_phi = sample_std(values, mean_phi);
        Ok(Self {
            category,
            order,
            mean_phi,
            std_phi,
            stderr_phi: std_phi / (values.len() as f64).sqrt(),
            segment_count: values.len(),
        })
    }
}

/// Groups estimates by `(category, order)` and summarizes each group.
/// Output is sorted by category, then order.
pub fn summarize(estimates: &[EntropyEstimate]) -> Result<Vec<CategorySummary>> {
    if estimates.is_empty() {
        return Err(Error::EmptyGroup("no estimates to summarize".into()));
    }
    let mut groups: BTreeMap<(Category, usize), Vec<f64>> = BTreeMap::new();
    for e in estimates {
        let r = e.segment_ref.as_ref().ok_or_else(|| {
            Error::Config("estimate without a segment reference cannot be grouped".into())
        })?;
        groups
            .entry((r.category.clone(), e.order))
            .or_default()
            .push(e.value);
    }
    groups
        .into_iter()
        .map(|((c, n), v)| CategorySummary::from_values(c, n, &v))
        .collect()
}

/// Segment lengths `min, min + step, ...` up to `max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRange {
    pub min: usize,
    pub max: usize,
    pub step: usize,
}

impl Default for SweepRange {
    fn default() -> Self {
        Self {
            min: 250,
            max: 3000,
            step: 250,
        }
    }
}

impl SweepRange {
    pub fn validate(&self) -> Result<()> {
        if self.min < 2 {
            return Err(Error::Config(format!("sweep minimum must be at least 2, got {}", self.min)));
        }
        if self.step < 1 {
            return Err(Error::Config("sweep step must be at least 1".into()));
        }
        if self.max < self.min {
            return Err(Error::Config(format!(
                "sweep maximum {} is below minimum {}",
                self.max, self.min
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<usize> {
        (self.min..=self.max).step_by(self.step).collect()
    }
}

impl std::str::FromStr for SweepRange {
    type Err = Error;

    /// `min:max:step`, or `min:max` with the default step.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad sweep range `{s}`")))
        };
        let range = match parts.as_slice() {
            [a, b] => SweepRange {
                min: num(a)?,
                max: num(b)?,
                step: SweepRange::default().step,
            },
            [a, b, c] => SweepRange {
                min: num(a)?,
                max: num(b)?,
                step: num(c)?,
            },
            _ => return Err(Error::Config(format!("bad sweep range `{s}`, expected min:max:step"))),
        };
        range.validate()?;
        Ok(range)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub segment_length: usize,
    pub mean_phi: f64,
    pub std_phi: f64,
    pub stderr_phi: f64,
    pub segment_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub category: Category,
    pub order: usize,
    /// Ascending in segment length.
    pub points: Vec<SweepPoint>,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutput {
    /// One result per requested order, in request order.
    pub results: Vec<SweepResult>,
    pub warnings: Vec<String>,
}

/// Re-segments `series` at every grid length and summarizes each order.
///
/// A range reaching past the series is truncated to the series length with a
/// warning; a minimum longer than the series is an error.
pub fn sweep_segment_length(
    series: &WordLengthSeries,
    orders: &[usize],
    range: &SweepRange,
    remainder: RemainderPolicy,
) -> Result<SweepOutput> {
    range.validate()?;
    let mut warnings = Vec::new();
    let mut effective = *range;
    if range.max > series.len() {
        if range.min > series.len() {
            return Err(Error::SeriesTooShort {
                category: series.category.clone(),
                len: series.len(),
                segment_length: range.min,
            });
        }
        effective.max = series.len();
        warnings.push(format!(
            "{}: sweep truncated to N <= {} (series length)",
            series.category,
            series.len()
        ));
    }
    let grid = effective.grid();
    let cells: Vec<Vec<CategorySummary>> = grid
        .par_iter()
        .map(|&n| {
            let policy = SegmentationPolicy {
                segment_length: n,
                remainder,
            };
            let segs = segment(series, &policy)?;
            let est = estimate_segments(&segs, orders)?;
            summarize(&est)
        })
        .collect::<Result<_>>()?;

    let results = orders
        .iter()
        .map(|&order| SweepResult {
            category: series.category.clone(),
            order,
            points: grid
                .iter()
                .zip(&cells)
                .map(|(&n, summaries)| {
                    let s = summaries
                        .iter()
                        .find(|s| s.order == order)
                        .expect("every order is summarized");
                    SweepPoint {
                        segment_length: n,
                        mean_phi: s.mean_phi,
                        std_phi: s.std_phi,
                        stderr_phi: s.stderr_phi,
                        segment_count: s.segment_count,
                    }
                })
                .collect(),
        })
        .collect();
    Ok(SweepOutput { results, warnings })
}

/// Distribution of single word lengths over a whole category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthHistogram {
    pub category: Category,
    pub total: u64,
    pub counts: BTreeMap<Symbol, u64>,
    pub probabilities: BTreeMap<Symbol, f64>,
    /// Shortest and longest observed length.
    pub support: (Symbol, Symbol),
}

pub fn length_histogram_of(category: Category, lengths: &[Symbol]) -> Result<LengthHistogram> {
    if lengths.is_empty() {
        return Err(Error::EmptyGroup(format!("{category}: no words for a length histogram")));
    }
    let mut counts: BTreeMap<Symbol, u64> = BTreeMap::new();
    for &l in lengths {
        *counts.entry(l).or_default() += 1;
    }
    let total = lengths.len() as u64;
    let probabilities = counts
        .iter()
        .map(|(&l, &c)| (l, c as f64 / total as f64))
        .collect();
    let support = (
        *counts.keys().next().unwrap(),
        *counts.keys().next_back().unwrap(),
    );
    Ok(LengthHistogram {
        category,
        total,
        counts,
        probabilities,
        support,
    })
}

pub fn length_histogram(series: &WordLengthSeries) -> Result<LengthHistogram> {
    length_histogram_of(series.category.clone(), &series.lengths)
}

/// Pooled rank distribution of one category and order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryRanks {
    pub category: Category,
    pub distribution: RankDistribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Same language, different genres.
    Genre,
    /// Same genre, different languages.
    Language,
}

/// `higher` has the larger (or equal) mean block entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairOrdering {
    pub comparison: Comparison,
    pub order: usize,
    pub higher: Category,
    pub lower: Category,
    pub delta: f64,
    /// Standard error of the difference, sqrt(se_a^2 + se_b^2).
    pub stderr: f64,
}

impl PairOrdering {
    pub fn relation(&self) -> String {
        let op = if self.delta > 0.0 { ">" } else { "=" };
        format!("{} {op} {}", self.higher, self.lower)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub categories: Vec<Category>,
    pub summaries: Vec<CategorySummary>,
    pub histograms: Vec<LengthHistogram>,
    pub ranks: Vec<CategoryRanks>,
    /// Categories by descending mean, per order.
    pub rankings: BTreeMap<usize, Vec<Category>>,
    pub orderings: Vec<PairOrdering>,
}

fn pair(comparison: Comparison, a: &CategorySummary, b: &CategorySummary) -> PairOrdering {
    let (hi, lo) = if a.mean_phi >= b.mean_phi { (a, b) } else { (b, a) };
    PairOrdering {
        comparison,
        order: a.order,
        higher: hi.category.clone(),
        lower: lo.category.clone(),
        delta: hi.mean_phi - lo.mean_phi,
        stderr: (hi.stderr_phi.powi(2) + lo.stderr_phi.powi(2)).sqrt(),
    }
}

/// Bundles per-category tables with pairwise orderings: genres within a
/// language and, when more than one language is present, languages within a
/// genre.
pub fn cross_category_report(
    summaries: &[CategorySummary],
    histograms: &[LengthHistogram],
    ranks: &[CategoryRanks],
) -> Result<ReportBundle> {
    let categories: BTreeSet<Category> = summaries.iter().map(|s| s.category.clone()).collect();
    if categories.len() < 2 {
        return Err(Error::TooFewCategories(categories.len()));
    }
    let mut by_order: BTreeMap<usize, Vec<&CategorySummary>> = BTreeMap::new();
    for s in summaries {
        by_order.entry(s.order).or_default().push(s);
    }

    let mut orderings = Vec::new();
    let mut rankings = BTreeMap::new();
    for (&order, group) in &mut by_order {
        group.sort_by(|a, b| a.category.cmp(&b.category));
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                if a.category.language == b.category.language {
                    orderings.push(pair(Comparison::Genre, a, b));
                } else if a.category.genre == b.category.genre {
                    orderings.push(pair(Comparison::Language, a, b));
                }
            }
        }
        let mut ranked = group.clone();
        ranked.sort_by(|a, b| b.mean_phi.total_cmp(&a.mean_phi).then(a.category.cmp(&b.category)));
        rankings.insert(order, ranked.into_iter().map(|s| s.category.clone()).collect());
    }

    let mut summaries = summaries.to_vec();
    summaries.sort_by(|a, b| (&a.category, a.order).cmp(&(&b.category, b.order)));
    Ok(ReportBundle {
        categories: categories.into_iter().collect(),
        summaries,
        histograms: histograms.to_vec(),
        ranks: ranks.to_vec(),
        rankings,
        orderings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::SegmentRef;

    fn est(cat: &Category, order: usize, value: f64) -> EntropyEstimate {
        EntropyEstimate {
            order,
            value,
            distinct_ngrams: 1,
            segment_ref: Some(SegmentRef {
                category: cat.clone(),
                segment: 0,
            }),
        }
    }

    fn summary(lang: &str, genre: &str, mean_phi: f64) -> CategorySummary {
        CategorySummary {
            category: Category::new(lang, genre),
            order: 2,
            mean_phi,
            std_phi: 0.1,
            stderr_phi: 0.01,
            segment_count: 100,
        }
    }

    #[test]
    fn constant_estimates() {
        let c = Category::new("en", "news");
        let s = summarize(&[est(&c, 1, 0.5), est(&c, 1, 0.5), est(&c, 1, 0.5)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].mean_phi, s[0].std_phi, s[0].stderr_phi), (0.5, 0.0, 0.0));
    }

    #[test]
    fn two_point_sample() {
        let c = Category::new("en", "news");
        let s = summarize(&[est(&c, 1, 0.0), est(&c, 1, 1.0)]).unwrap();
        assert_eq!(s[0].mean_phi, 0.5);
        assert!((s[0].std_phi - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((s[0].stderr_phi - 0.5).abs() < 1e-12);
    }

    #[test]
    fn groups_by_category_and_order() {
        let a = Category::new("en", "a");
        let b = Category::new("en", "b");
        let s = summarize(&[est(&b, 2, 1.0), est(&a, 1, 2.0), est(&a, 2, 3.0), est(&a, 1, 4.0)]).unwrap();
        let keys: Vec<_> = s.iter().map(|s| (s.category.genre.as_str(), s.order, s.segment_count)).collect();
        assert_eq!(keys, [("a", 1, 2), ("a", 2, 1), ("b", 2, 1)]);
        assert!(CategorySummary::from_values(a, 1, &[]).unwrap_err().to_string().contains("en/a"));
    }

    #[test]
    fn sweep_range_parsing() {
        let r: SweepRange = "250:3000:250".parse().unwrap();
        assert_eq!(r.grid().len(), 12);
        assert_eq!("1000:1000".parse::<SweepRange>().unwrap().grid(), [1000]);
        assert_eq!("250:400:1000".parse::<SweepRange>().unwrap().grid(), [250]);
        assert!("1:10:1".parse::<SweepRange>().is_err());
        assert!("10:5:1".parse::<SweepRange>().is_err());
        assert!("a:b".parse::<SweepRange>().is_err());
    }

    #[test]
    fn sweep_of_constant_series_is_zero() {
        let s = WordLengthSeries::from_lengths(Category::new("en", "x"), vec![4; 5000]);
        let out = sweep_segment_length(&s, &[1, 2, 3], &SweepRange::default(), RemainderPolicy::Drop).unwrap();
        assert_eq!(out.results.len(), 3);
        assert!(out.warnings.is_empty());
        for r in &out.results {
            assert!(r.points.iter().all(|p| p.mean_phi == 0.0));
            assert_eq!(r.points.last().unwrap().segment_length, 3000);
        }
    }

    #[test]
    fn sweep_truncates_to_series_length() {
        let s = WordLengthSeries::from_lengths(Category::new("en", "x"), [1, 2, 3].repeat(300));
        let out = sweep_segment_length(&s, &[2], &SweepRange::default(), RemainderPolicy::Drop).unwrap();
        assert_eq!(out.results[0].points.iter().map(|p| p.segment_length).collect::<Vec<_>>(), [250, 500, 750]);
        assert_eq!(out.warnings.len(), 1);
        let tiny = SweepRange { min: 1000, max: 2000, step: 100 };
        assert!(sweep_segment_length(&s, &[2], &tiny, RemainderPolicy::Drop).is_err());
    }

    #[test]
    fn histogram_basics() {
        let h = length_histogram_of(Category::new("en", "x"), &[1, 2, 2, 2]).unwrap();
        assert_eq!(h.probabilities[&1], 0.25);
        assert_eq!(h.probabilities[&2], 0.75);
        assert_eq!(h.support, (1, 2));
        assert!(length_histogram_of(Category::new("en", "x"), &[]).is_err());
    }

    #[test]
    fn ordering_records() {
        let a = summary("en", "politics", 4.6);
        let b = summary("en", "literature", 4.3);
        let report = cross_category_report(&[a, b], &[], &[]).unwrap();
        assert_eq!(report.orderings.len(), 1);
        let o = &report.orderings[0];
        assert_eq!(o.relation(), "en/politics > en/literature");
        assert!((o.delta - 0.3).abs() < 1e-12);
        assert_eq!(o.comparison, Comparison::Genre);
        assert_eq!(report.rankings[&2][0], Category::new("en", "politics"));
    }

    #[test]
    fn language_pairs_only_with_two_languages() {
        let single = cross_category_report(
            &[summary("en", "a", 1.0), summary("en", "b", 2.0), summary("en", "c", 3.0)],
            &[],
            &[],
        )
        .unwrap();
        assert_eq!(single.orderings.len(), 3);
        assert!(single.orderings.iter().all(|o| o.comparison == Comparison::Genre));

        let both = cross_category_report(
            &[summary("en", "a", 1.0), summary("el", "a", 2.0), summary("el", "b", 1.5)],
            &[],
            &[],
        )
        .unwrap();
        let lang: Vec<_> = both.orderings.iter().filter(|o| o.comparison == Comparison::Language).collect();
        assert_eq!(lang.len(), 1);
        assert_eq!(lang[0].higher, Category::new("el", "a"));

        assert!(matches!(
            cross_category_report(&[summary("en", "a", 1.0)], &[], &[]),
            Err(Error::TooFewCategories(1))
        ));
    }
}
