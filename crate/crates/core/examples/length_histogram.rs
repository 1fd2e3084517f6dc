//! Word-length distributions of each bundled category.

use std::path::Path;

use wordlen::analysis::length_histogram;
use wordlen::cli::{load_series, Input, RunConfig};

fn main() -> wordlen::Result<()> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.json");
    let (series, _) = load_series(&RunConfig::new(Input::Manifest(manifest), "unused"))?;
    for s in &series {
        let h = length_histogram(s)?;
        println!("{} ({} words, lengths {}..={})", h.category, h.total, h.support.0, h.support.1);
        for (len, p) in h.probabilities.iter().take_while(|(&l, _)| l <= 15) {
            println!("  {len:>2} {:<50} {p:.4}", "#".repeat((p * 250.0).round() as usize));
        }
    }
    Ok(())
}
