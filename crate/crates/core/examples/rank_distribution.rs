//! Rank-ordered n-gram probabilities of the bundled literature category.

use std::path::Path;

use wordlen::cli::{load_series, Input, RunConfig};
use wordlen::entropy::{count_ngrams_pooled, rank_distribution};
use wordlen::segment::{segment, SegmentationPolicy};

fn main() -> wordlen::Result<()> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.json");
    let (series, _) = load_series(&RunConfig::new(Input::Manifest(manifest), "unused"))?;
    let lit = series.iter().find(|s| s.category.genre == "literature").expect("literature");
    let segs = segment(lit, &SegmentationPolicy::default())?;

    for n in 1..=3 {
        let ranks = rank_distribution(&count_ngrams_pooled(&segs, n)?);
        println!("{} n={n}: {} distinct", lit.category, ranks.entries.len());
        for e in ranks.entries.iter().take(5) {
            println!("  {:>3}  {:<8} {:.5}", e.rank, e.ngram.to_string(), e.probability);
        }
    }
    Ok(())
}
