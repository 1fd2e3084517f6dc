//! Documents grouped into one concatenated series per (language, genre).

use wordlen::ingest::{build_category_series, Document, TokenizerConfig};

fn main() -> wordlen::Result<()> {
    let docs = vec![
        Document::new("speech-1", "en", "politics", "We are the people."),
        Document::new("match-1", "en", "sports", "A late goal won it."),
        Document::new("speech-2", "en", "politics", "Taxes rise again"),
        Document::new("arthro-1", "el", "politics", "Η Ελλάδα ψηφίζει"),
    ];
    let built = build_category_series(&docs, &TokenizerConfig::default(), None)?;
    for s in &built.series {
        println!("{}: {:?}", s.category, s.lengths);
        for src in &s.sources {
            println!("  {} -> {:?}", src.id, src.range());
        }
    }
    Ok(())
}
