//! Cutting a category series into fixed-length segments.

use wordlen::ingest::WordLengthSeries;
use wordlen::segment::{segment, RemainderPolicy, SegmentationPolicy};
use wordlen::Category;

fn main() -> wordlen::Result<()> {
    let lengths: Vec<u16> = (0..2600).map(|i| (i * 7 % 11 + 1) as u16).collect();
    let series = WordLengthSeries::from_lengths(Category::new("en", "news"), lengths);

    for remainder in [RemainderPolicy::Drop, RemainderPolicy::KeepIfAtLeastHalf] {
        let policy = SegmentationPolicy { segment_length: 1000, remainder };
        let segs = segment(&series, &policy)?;
        let ranges: Vec<_> = segs.iter().map(|s| s.range()).collect();
        println!("{remainder:?}: {ranges:?}");
    }

    let short = WordLengthSeries::from_lengths(Category::new("en", "short"), vec![3; 999]);
    if let Err(e) = segment(&short, &SegmentationPolicy::default()) {
        println!("error (exit code {}): {e}", e.exit_code());
    }
    Ok(())
}
