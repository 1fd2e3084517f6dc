//! The full batch pipeline on the bundled corpus: ingest, entropy, sweep
//! and shuffle-compare, as the `wordlen` binary runs them.
//!
//! cargo run --release --example corpus_pipeline -- [out_dir]

use std::path::{Path, PathBuf};

use wordlen::analysis::SweepRange;
use wordlen::cli::{cmd_entropy, cmd_ingest, cmd_shuffle_compare, cmd_sweep, Input, Outcome, RunConfig};
use wordlen::shuffle::ShuffleConfig;

fn report(step: &str, out: Outcome) {
    println!("== {step}");
    for m in out.messages {
        println!("  {m}");
    }
    for f in out.files {
        println!("  wrote {}", f.display());
    }
}

fn main() -> wordlen::Result<()> {
    let out: PathBuf = std::env::args().nth(1).unwrap_or_else(|| "wordlen-out".into()).into();
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.json");

    let series = out.join("series");
    report("ingest", cmd_ingest(&RunConfig::new(Input::Manifest(manifest), &series))?);

    let mut cfg = RunConfig::new(Input::Series(series), out.join("entropy"));
    report("entropy", cmd_entropy(&cfg)?);

    cfg.out = out.join("sweep");
    cfg.sweep = Some(SweepRange::default());
    report("sweep", cmd_sweep(&cfg)?);

    cfg.sweep = None;
    cfg.out = out.join("compare");
    cfg.orders = vec![2, 3];
    cfg.shuffle = Some(ShuffleConfig { seed: 42, ..Default::default() });
    report("shuffle-compare", cmd_shuffle_compare(&cfg)?);
    Ok(())
}
