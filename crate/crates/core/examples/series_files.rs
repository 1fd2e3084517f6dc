//! Writing series files in both formats and reading them back.

use wordlen::ingest::{TokenizerConfig, WordLengthSeries};
use wordlen::series_io::{read_series_dir, write_series, SeriesFormat};
use wordlen::Category;

fn main() -> wordlen::Result<()> {
    let root = std::env::temp_dir().join("wordlen-series-example");
    let series = WordLengthSeries::from_lengths(Category::new("el", "sports"), vec![6, 1, 8, 3, 2]);
    for format in [SeriesFormat::Binary, SeriesFormat::Text] {
        let dir = root.join(format.extension());
        let (data, _) = write_series(&dir, &series, format, &TokenizerConfig::default(), "example")?;
        println!("{} ({} bytes)", data.display(), std::fs::metadata(&data).unwrap().len());
        for (s, meta) in read_series_dir(&dir)? {
            println!("  {}: {:?}, {:?} format", s.category, s.lengths, meta.format);
        }
    }
    Ok(())
}
