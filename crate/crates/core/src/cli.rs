//! Batch front end: `ingest`, `entropy`, `sweep` and `shuffle-compare`.
//!
//! Settings come from flags and an optional TOML file (`--config`); a flag
//! always wins over the file. Each command resolves them into a
//! [`RunConfig`] whose hash is stamped on every output.
//!
//! Analysis commands read series written by `ingest` (`--series DIR`) or
//! tokenize a corpus on the fly (`--manifest` / `--corpus-root`).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{
    cross_category_report, estimate_segments, length_histogram, summarize, sweep_segment_length,
    CategoryRanks, ReportBundle, SweepRange, SweepResult,
};
use crate::entropy::{count_ngrams_pooled, rank_distribution};
use crate::export::{self, RunMeta};
use crate::ingest::{
    build_category_series, load_documents, read_manifest, scan_corpus_root, LetterPolicy,
    TokenizerConfig, WordLengthSeries,
};
use crate::segment::{segment, RemainderPolicy, SegmentationPolicy};
use crate::series_io::{read_series_dir, write_series, SeriesFormat};
use crate::shuffle::{compare_real_shuffled, ShuffleConfig};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "wordlen", version, about = "Word-length series and block entropies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tokenize a corpus and write one series file per category.
    Ingest(CommonArgs),
    /// Per-category block entropies, rank distributions and length histograms.
    Entropy(CommonArgs),
    /// Mean block entropy as a function of segment length.
    Sweep(CommonArgs),
    /// Real versus shuffled block entropies.
    ShuffleCompare(CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ingest(_) => "ingest",
            Command::Entropy(_) => "entropy",
            Command::Sweep(_) => "sweep",
            Command::ShuffleCompare(_) => "shuffle-compare",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Ingest(a) | Command::Entropy(a) | Command::Sweep(a) | Command::ShuffleCompare(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemainderArg {
    Drop,
    KeepHalf,
}

impl From<RemainderArg> for RemainderPolicy {
    fn from(r: RemainderArg) -> Self {
        match r {
            RemainderArg::Drop => RemainderPolicy::Drop,
            RemainderArg::KeepHalf => RemainderPolicy::KeepIfAtLeastHalf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesFormatArg {
    Binary,
    Text,
}

impl From<SeriesFormatArg> for SeriesFormat {
    fn from(f: SeriesFormatArg) -> Self {
        match f {
            SeriesFormatArg::Binary => SeriesFormat::Binary,
            SeriesFormatArg::Text => SeriesFormat::Text,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with defaults for any of the flags below.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// JSON or CSV manifest of documents.
    #[arg(long, value_name = "FILE", group = "input")]
    pub manifest: Option<PathBuf>,
    /// Directory laid out as `<language>/<genre>/*.txt`.
    #[arg(long, value_name = "DIR", group = "input")]
    pub corpus_root: Option<PathBuf>,
    /// Directory of series written by `ingest`.
    #[arg(long, value_name = "DIR", group = "input")]
    pub series: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    pub segment_length: Option<usize>,
    #[arg(long, value_enum)]
    pub remainder: Option<RemainderArg>,
    /// Comma-separated n-gram orders.
    #[arg(long, value_delimiter = ',', value_name = "N,...")]
    pub orders: Option<Vec<usize>>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub replicates: Option<usize>,
    /// Segment-length grid `min:max:step`.
    #[arg(long, value_name = "MIN:MAX:STEP")]
    pub sweep: Option<String>,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Comma-separated subset of csv,json.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub format: Option<Vec<OutputFormat>>,
    #[arg(long, value_enum)]
    pub series_format: Option<SeriesFormatArg>,
    /// Keep apostrophes between two letters inside the word.
    #[arg(long)]
    pub internal_apostrophe: bool,
    #[arg(long)]
    pub min_word_length: Option<usize>,
    #[arg(long)]
    pub max_word_length: Option<usize>,
}

/// Contents of a `--config` file. Relative paths are taken from the file's
/// directory.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub manifest: Option<PathBuf>,
    pub corpus_root: Option<PathBuf>,
    pub series: Option<PathBuf>,
    pub segment_length: Option<usize>,
    pub remainder: Option<RemainderArg>,
    pub orders: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub replicates: Option<usize>,
    pub sweep: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<Vec<OutputFormat>>,
    pub series_format: Option<SeriesFormatArg>,
    pub tokenizer: Option<TokenizerConfig>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: FileConfig = toml::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut cfg.manifest,
            &mut cfg.corpus_root,
            &mut cfg.series,
            &mut cfg.out,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Input {
    Manifest(PathBuf),
    CorpusRoot(PathBuf),
    Series(PathBuf),
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub input: Input,
    pub tokenizer: TokenizerConfig,
    pub segmentation: SegmentationPolicy,
    /// Sorted, without duplicates.
    pub orders: Vec<usize>,
    pub shuffle: Option<ShuffleConfig>,
    pub sweep: Option<SweepRange>,
    /// Not part of the config hash, so a run can be repeated elsewhere.
    #[serde(skip)]
    pub out: PathBuf,
    pub formats: Vec<OutputFormat>,
    pub series_format: SeriesFormat,
}

impl RunConfig {
    pub fn new(input: Input, out: impl Into<PathBuf>) -> Self {
        Self {
            input,
            tokenizer: TokenizerConfig::default(),
            segmentation: SegmentationPolicy::default(),
            orders: vec![1, 2, 3],
            shuffle: None,
            sweep: None,
            out: out.into(),
            formats: vec![OutputFormat::Csv, OutputFormat::Json],
            series_format: SeriesFormat::Binary,
        }
    }

    /// Merges flags over the optional config file.
    pub fn resolve(command: &str, args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let input = if let Some(p) = &args.manifest {
            Input::Manifest(p.clone())
        } else if let Some(p) = &args.corpus_root {
            Input::CorpusRoot(p.clone())
        } else if let Some(p) = &args.series {
            Input::Series(p.clone())
        } else {
            match (&file.manifest, &file.corpus_root, &file.series) {
                (Some(p), None, None) => Input::Manifest(p.clone()),
                (None, Some(p), None) => Input::CorpusRoot(p.clone()),
                (None, None, Some(p)) => Input::Series(p.clone()),
                (None, None, None) => {
                    return Err(Error::Config(
                        "one of --manifest, --corpus-root or --series is required".into(),
                    ))
                }
                _ => {
                    return Err(Error::Config(
                        "config file names more than one of manifest, corpus_root, series".into(),
                    ))
                }
            }
        };
        let out = args
            .out
            .clone()
            .or(file.out)
            .ok_or_else(|| Error::Config("--out is required".into()))?;
        let mut cfg = RunConfig::new(input, out);

        if let Some(t) = file.tokenizer {
            cfg.tokenizer = t;
        }
        if args.internal_apostrophe {
            cfg.tokenizer.letter_policy = LetterPolicy::UnicodeLettersPlusInternalApostrophe;
        }
        if let Some(v) = args.min_word_length {
            cfg.tokenizer.min_word_length = v;
        }
        if let Some(v) = args.max_word_length {
            cfg.tokenizer.max_word_length = v;
        }
        if let Some(n) = args.segment_length.or(file.segment_length) {
            cfg.segmentation.segment_length = n;
        }
        if let Some(r) = args.remainder.or(file.remainder) {
            cfg.segmentation.remainder = r.into();
        }
        if let Some(o) = args.orders.clone().or(file.orders) {
            cfg.orders = o;
        }
        if let Some(f) = args.format.clone().or(file.format) {
            cfg.formats = f;
        }
        if let Some(f) = args.series_format.or(file.series_format) {
            cfg.series_format = f.into();
        }
        if command == "shuffle-compare" {
            let mut s = ShuffleConfig::default();
            if let Some(v) = args.seed.or(file.seed) {
                s.seed = v;
            }
            if let Some(v) = args.replicates.or(file.replicates) {
                s.replicates = v;
            }
            cfg.shuffle = Some(s);
        }
        if command == "sweep" {
            cfg.sweep = Some(match args.sweep.as_deref().or(file.sweep.as_deref()) {
                Some(s) => s.parse()?,
                None => SweepRange::default(),
            });
        }
        cfg.orders.sort_unstable();
        cfg.orders.dedup();
        cfg.formats.sort_unstable();
        cfg.formats.dedup();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.tokenizer.validate()?;
        self.segmentation.validate()?;
        if self.orders.is_empty() {
            return Err(Error::Config("at least one order is required".into()));
        }
        // A sweep checks orders against each grid length instead.
        let limit = match self.sweep {
            Some(r) => r.min,
            None => self.segmentation.segment_length,
        };
        if let Some(&bad) = self.orders.iter().find(|&&n| n < 1 || n > limit) {
            return Err(Error::Config(format!("order {bad} is outside 1..={limit}")));
        }
        if let Some(s) = &self.shuffle {
            s.validate()?;
        }
        if let Some(r) = &self.sweep {
            r.validate()?;
        }
        if self.formats.is_empty() {
            return Err(Error::Config("at least one output format is required".into()));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }

    fn meta(&self) -> RunMeta {
        RunMeta::new(self.hash(), self.shuffle.map(|s| s.seed))
    }

    fn wants(&self, f: OutputFormat) -> bool {
        self.formats.contains(&f)
    }

    fn create_out(&self) -> Result<()> {
        std::fs::create_dir_all(&self.out).map_err(|source| Error::Output {
            path: self.out.clone(),
            source,
        })
    }
}

/// What a command wrote and what it wants to tell the user.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    /// Human-readable summary lines for stdout.
    pub messages: Vec<String>,
    pub warnings: Vec<String>,
}

/// Category series for `config.input`, sorted by category.
pub fn load_series(config: &RunConfig) -> Result<(Vec<WordLengthSeries>, Vec<String>)> {
    let entries = match &config.input {
        Input::Series(dir) => {
            let series = read_series_dir(dir)?.into_iter().map(|(s, _)| s).collect();
            return Ok((series, Vec::new()));
        }
        Input::Manifest(p) => read_manifest(p)?,
        Input::CorpusRoot(p) => scan_corpus_root(p)?,
    };
    let docs = load_documents(&entries).map_err(Error::from_documents)?;
    let built = build_category_series(&docs, &config.tokenizer, None)?;
    if built.series.is_empty() {
        return Err(Error::NoDocuments);
    }
    Ok((built.series, built.warnings))
}

pub fn cmd_ingest(config: &RunConfig) -> Result<Outcome> {
    if let Input::Series(_) = config.input {
        return Err(Error::Config("ingest needs --manifest or --corpus-root".into()));
    }
    let (series, warnings) = load_series(config)?;
    let hash = config.hash();
    let mut out = Outcome {
        warnings,
        ..Default::default()
    };
    for s in &series {
        let (data, sidecar) = write_series(&config.out, s, config.series_format, &config.tokenizer, &hash)?;
        let d = s.drops();
        out.messages.push(format!(
            "{}: {} words from {} documents; dropped {} (numeric {}, too short {}, too long {})",
            s.category,
            s.len(),
            s.sources.len(),
            d.total(),
            d.numeric,
            d.too_short,
            d.too_long
        ));
        out.files.extend([data, sidecar]);
    }
    Ok(out)
}

#[derive(Serialize)]
struct EntropyBundle<'a> {
    config: &'a RunConfig,
    #[serde(flatten)]
    report: &'a ReportBundle,
}

pub fn cmd_entropy(config: &RunConfig) -> Result<Outcome> {
    let (series, warnings) = load_series(config)?;
    let mut estimates = Vec::new();
    let mut histograms = Vec::new();
    let mut ranks: BTreeMap<usize, Vec<CategoryRanks>> = BTreeMap::new();
    for s in &series {
        let segs = segment(s, &config.segmentation)?;
        estimates.extend(estimate_segments(&segs, &config.orders)?);
        histograms.push(length_histogram(s)?);
        for &n in &config.orders {
            ranks.entry(n).or_default().push(CategoryRanks {
                category: s.category.clone(),
                distribution: rank_distribution(&count_ngrams_pooled(&segs, n)?),
            });
        }
    }
    let summaries = summarize(&estimates)?;
    let all_ranks: Vec<CategoryRanks> = ranks.values().flatten().cloned().collect();
    let report = if series.len() >= 2 {
        cross_category_report(&summaries, &histograms, &all_ranks)?
    } else {
        ReportBundle {
            categories: series.iter().map(|s| s.category.clone()).collect(),
            rankings: config
                .orders
                .iter()
                .map(|&n| (n, vec![series[0].category.clone()]))
                .collect(),
            summaries: summaries.clone(),
            histograms: histograms.clone(),
            ranks: all_ranks,
            orderings: Vec::new(),
        }
    };

    config.create_out()?;
    let meta = config.meta();
    let mut out = Outcome {
        warnings,
        ..Default::default()
    };
    if config.wants(OutputFormat::Csv) {
        let p = config.out.join("estimates.csv");
        export::write_estimates(&p, &meta, &estimates)?;
        out.files.push(p);
        let p = config.out.join("fig3_bars.csv");
        export::write_summaries(&p, &meta, &summaries)?;
        out.files.push(p);
        for (n, r) in &ranks {
            let p = config.out.join(format!("fig5_ranks_n{n}.csv"));
            export::write_ranks(&p, &meta, r)?;
            out.files.push(p);
        }
        let p = config.out.join("fig6_hist.csv");
        export::write_histograms(&p, &meta, &histograms)?;
        out.files.push(p);
    }
    if config.wants(OutputFormat::Json) {
        let p = config.out.join("entropy.json");
        export::write_json(&p, &meta, &EntropyBundle { config, report: &report })?;
        out.files.push(p);
    }
    for s in &summaries {
        out.messages.push(format!(
            "{} n={}: mean {:.4} nats, std {:.4}, {} segments",
            s.category, s.order, s.mean_phi, s.std_phi, s.segment_count
        ));
    }
    for o in &report.orderings {
        out.messages.push(format!("n={}: {} by {:.4}", o.order, o.relation(), o.delta));
    }
    Ok(out)
}

#[derive(Serialize)]
struct SweepBundle<'a> {
    config: &'a RunConfig,
    results: &'a [SweepResult],
    warnings: &'a [String],
}

pub fn cmd_sweep(config: &RunConfig) -> Result<Outcome> {
    let range = config.sweep.unwrap_or_default();
    let (series, mut warnings) = load_series(config)?;
    let mut results = Vec::new();
    for s in &series {
        let swept = sweep_segment_length(s, &config.orders, &range, config.segmentation.remainder)?;
        warnings.extend(swept.warnings);
        results.extend(swept.results);
    }

    config.create_out()?;
    let meta = config.meta();
    let mut out = Outcome::default();
    if config.wants(OutputFormat::Csv) {
        let p = config.out.join("fig4_sweep.csv");
        export::write_sweep(&p, &meta, &results)?;
        out.files.push(p);
    }
    if config.wants(OutputFormat::Json) {
        let p = config.out.join("sweep.json");
        export::write_json(&p, &meta, &SweepBundle { config, results: &results, warnings: &warnings })?;
        out.files.push(p);
    }
    for r in &results {
        let (first, last) = (r.points.first().unwrap(), r.points.last().unwrap());
        out.messages.push(format!(
            "{} n={}: {:.4} at N={} .. {:.4} at N={}",
            r.category, r.order, first.mean_phi, first.segment_length, last.mean_phi, last.segment_length
        ));
    }
    out.warnings = warnings;
    Ok(out)
}

#[derive(Serialize)]
struct CompareBundle<'a> {
    config: &'a RunConfig,
    reports: &'a [crate::shuffle::ComparisonReport],
}

pub fn cmd_shuffle_compare(config: &RunConfig) -> Result<Outcome> {
    let shuffle = config.shuffle.unwrap_or_default();
    let (series, warnings) = load_series(config)?;
    let mut reports = Vec::new();
    for s in &series {
        let segs = segment(s, &config.segmentation)?;
        reports.extend(compare_real_shuffled(&segs, &config.orders, &shuffle)?);
    }

    config.create_out()?;
    let meta = config.meta();
    let mut out = Outcome {
        warnings,
        ..Default::default()
    };
    if config.wants(OutputFormat::Csv) {
        let p = config.out.join("table2_compare.csv");
        export::write_comparison_table(&p, &meta, &reports)?;
        out.files.push(p);
        let p = config.out.join("compare_long.csv");
        export::write_comparison_long(&p, &meta, &reports)?;
        out.files.push(p);
    }
    if config.wants(OutputFormat::Json) {
        let p = config.out.join("compare.json");
        export::write_json(&p, &meta, &CompareBundle { config, reports: &reports })?;
        out.files.push(p);
    }
    for r in &reports {
        out.messages.push(format!(
            "{} n={}: real {:.4}, shuffled {:.4}, delta {:+.4}",
            r.category, r.order, r.phi_real, r.phi_shuffled, r.delta
        ));
    }
    Ok(out)
}

/// Resolves the configuration and runs one command.
pub fn execute(command: &Command) -> Result<Outcome> {
    let config = RunConfig::resolve(command.name(), command.args())?;
    match command {
        Command::Ingest(_) => cmd_ingest(&config),
        Command::Entropy(_) => cmd_entropy(&config),
        Command::Sweep(_) => cmd_sweep(&config),
        Command::ShuffleCompare(_) => cmd_shuffle_compare(&config),
    }
}

/// Parses `args` (program name first), runs the command, prints its report
/// and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            for m in &out.messages {
                println!("{m}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
