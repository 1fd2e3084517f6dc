//! Real versus shuffled block entropies on the bundled corpus.
//!
//! cargo run --release --example shuffle_compare -- [seed]

use std::path::Path;

use wordlen::cli::{load_series, Input, RunConfig};
use wordlen::segment::{segment, SegmentationPolicy};
use wordlen::shuffle::{compare_real_shuffled, ShuffleConfig};

fn main() -> wordlen::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.json");
    let (series, _) = load_series(&RunConfig::new(Input::Manifest(manifest), "unused"))?;
    let config = ShuffleConfig { seed, replicates: 10, ..Default::default() };

    println!("{:<16} {:>2} {:>8} {:>8} {:>8}", "category", "n", "real", "shuffled", "delta");
    for s in &series {
        let segs = segment(s, &SegmentationPolicy::default())?;
        for r in compare_real_shuffled(&segs, &[1, 2, 3], &config)? {
            println!(
                "{:<16} {:>2} {:>8.4} {:>8.4} {:>+8.4}",
                r.category.to_string(),
                r.order,
                r.phi_real,
                r.phi_shuffled,
                r.delta
            );
        }
    }
    Ok(())
}
