//! Pairwise category orderings from per-segment entropies.

use wordlen::analysis::{cross_category_report, estimate_segments, summarize};
use wordlen::ingest::WordLengthSeries;
use wordlen::segment::{segment, SegmentationPolicy};
use wordlen::Category;

/// A pseudo-random series whose spread of lengths grows with `spread`.
fn synthetic(lang: &str, genre: &str, spread: u64) -> WordLengthSeries {
    let mut x = 0x9e37_79b9_7f4a_7c15u64 ^ spread;
    let lengths = (0..20_000)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x % spread + 1) as u16
        })
        .collect();
    WordLengthSeries::from_lengths(Category::new(lang, genre), lengths)
}

fn main() -> wordlen::Result<()> {
    let series = [
        synthetic("en", "literature", 6),
        synthetic("en", "politics", 9),
        synthetic("el", "politics", 12),
    ];
    let mut estimates = Vec::new();
    for s in &series {
        estimates.extend(estimate_segments(&segment(s, &SegmentationPolicy::default())?, &[1, 2])?);
    }
    let summaries = summarize(&estimates)?;
    let report = cross_category_report(&summaries, &[], &[])?;
    for (order, ranked) in &report.rankings {
        let names: Vec<String> = ranked.iter().map(|c| c.to_string()).collect();
        println!("n={order}: {}", names.join(" > "));
    }
    for o in &report.orderings {
        println!("{:?} n={}: {} (delta {:.3} +/- {:.3})", o.comparison, o.order, o.relation(), o.delta, o.stderr);
    }
    Ok(())
}
