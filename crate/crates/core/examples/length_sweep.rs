//! Mean block entropy against segment length, corpus and an i.i.d. control.

use std::path::Path;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wordlen::analysis::{length_histogram, sweep_segment_length, SweepRange};
use wordlen::cli::{load_series, Input, RunConfig};
use wordlen::ingest::WordLengthSeries;
use wordlen::segment::RemainderPolicy;
use wordlen::Category;

fn main() -> wordlen::Result<()> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.json");
    let (mut series, _) = load_series(&RunConfig::new(Input::Manifest(manifest), "unused"))?;

    // Same unigram distribution as the news category, no correlations.
    let hist = length_histogram(&series[1])?;
    let support: Vec<u16> = hist.counts.keys().copied().collect();
    let dist = WeightedIndex::new(hist.counts.values().copied()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let iid = (0..series[1].len()).map(|_| support[dist.sample(&mut rng)]).collect();
    series.push(WordLengthSeries::from_lengths(Category::new("en", "iid"), iid));

    let range: SweepRange = "250:3000:250".parse()?;
    for s in &series {
        let out = sweep_segment_length(s, &[2], &range, RemainderPolicy::Drop)?;
        let means: Vec<String> = out.results[0].points.iter().map(|p| format!("{:.3}", p.mean_phi)).collect();
        println!("{:<15} phi_2: {}", s.category.to_string(), means.join(" "));
    }
    println!("N = {:?}", range.grid());
    Ok(())
}
