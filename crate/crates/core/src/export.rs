//! Plot-ready CSV and JSON outputs.
//!
//! Every CSV starts with one `#` comment line carrying the tool version,
//! config hash and seed; read them back with a CSV reader that skips `#`
//! lines. Nothing time- or host-dependent is written, so identical inputs
//! give identical bytes.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::analysis::{CategoryRanks, CategorySummary, LengthHistogram, SweepResult};
use crate::entropy::EntropyEstimate;
use crate::shuffle::ComparisonReport;
use crate::{Category, Error, Result};

/// Provenance stamped on every output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunMeta {
    pub tool_version: String,
    pub config_hash: String,
    pub seed: Option<u64>,
}

impl RunMeta {
    pub fn new(config_hash: impl Into<String>, seed: Option<u64>) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: config_hash.into(),
            seed,
        }
    }

    fn comment(&self) -> String {
        let seed = self.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        format!(
            "# wordlen {} config_hash={} seed={}\n",
            self.tool_version, self.config_hash, seed
        )
    }
}

fn write_csv<R>(path: &Path, meta: &RunMeta, header: &[&str], rows: R) -> Result<()>
where
    R: IntoIterator<Item = Vec<String>>,
{
    let out_err = |source| Error::Output {
        path: path.to_path_buf(),
        source,
    };
    let mut buf = meta.comment().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush().map_err(out_err)?;
    }
    std::fs::write(path, buf).map_err(out_err)
}

/// `category,segment,order,phi,distinct_ngrams`
pub fn write_estimates(path: &Path, meta: &RunMeta, estimates: &[EntropyEstimate]) -> Result<()> {
    write_csv(
        path,
        meta,
        &["category", "segment", "order", "phi", "distinct_ngrams"],
        estimates.iter().map(|e| {
            let (cat, seg) = e
                .segment_ref
                .as_ref()
                .map_or((String::new(), String::new()), |r| (r.category.to_string(), r.segment.to_string()));
            vec![cat, seg, e.order.to_string(), e.value.to_string(), e.distinct_ngrams.to_string()]
        }),
    )
}

/// Mean block entropy per category and order.
pub fn write_summaries(path: &Path, meta: &RunMeta, summaries: &[CategorySummary]) -> Result<()> {
    write_csv(
        path,
        meta,
        &["category", "language", "genre", "order", "mean_phi", "std_phi", "stderr_phi", "segment_count"],
        summaries.iter().map(|s| {
            vec![
                s.category.to_string(),
                s.category.language.clone(),
                s.category.genre.clone(),
                s.order.to_string(),
                s.mean_phi.to_string(),
                s.std_phi.to_string(),
                s.stderr_phi.to_string(),
                s.segment_count.to_string(),
            ]
        }),
    )
}

/// Rank curves of one order, all categories stacked.
pub fn write_ranks(path: &Path, meta: &RunMeta, ranks: &[CategoryRanks]) -> Result<()> {
    write_csv(
        path,
        meta,
        &["category", "rank", "ngram", "count", "probability"],
        ranks.iter().flat_map(|r| {
            r.distribution.entries.iter().map(move |e| {
                vec![
                    r.category.to_string(),
                    e.rank.to_string(),
                    e.ngram.to_string(),
                    e.count.to_string(),
                    e.probability.to_string(),
                ]
            })
        }),
    )
}

pub fn write_histograms(path: &Path, meta: &RunMeta, histograms: &[LengthHistogram]) -> Result<()> {
    write_csv(
        path,
        meta,
        &["category", "length", "count", "probability"],
        histograms.iter().flat_map(|h| {
            h.counts.iter().map(move |(len, c)| {
                vec![
                    h.category.to_string(),
                    len.to_string(),
                    c.to_string(),
                    h.probabilities[len].to_string(),
                ]
            })
        }),
    )
}

pub fn write_sweep(path: &Path, meta: &RunMeta, sweeps: &[SweepResult]) -> Result<()> {
    write_csv(
        path,
        meta,
        &["category", "order", "segment_length", "mean_phi", "std_phi", "stderr_phi", "segment_count"],
        sweeps.iter().flat_map(|s| {
            s.points.iter().map(move |p| {
                vec![
                    s.category.to_string(),
                    s.order.to_string(),
                    p.segment_length.to_string(),
                    p.mean_phi.to_string(),
                    p.std_phi.to_string(),
                    p.stderr_phi.to_string(),
                    p.segment_count.to_string(),
                ]
            })
        }),
    )
}

/// Wide layout: one column per category; rows `phi_n` and `phi_n_shuffled`
/// for each order.
pub fn write_comparison_table(path: &Path, meta: &RunMeta, reports: &[ComparisonReport]) -> Result<()> {
    let mut categories: Vec<&Category> = reports.iter().map(|r| &r.category).collect();
    categories.sort();
    categories.dedup();
    let mut orders: Vec<usize> = reports.iter().map(|r| r.order).collect();
    orders.sort_unstable();
    orders.dedup();

    let cell = |cat: &Category, order: usize, shuffled: bool| {
        reports
            .iter()
            .find(|r| &r.category == cat && r.order == order)
            .map_or_else(String::new, |r| {
                if shuffled { r.phi_shuffled } else { r.phi_real }.to_string()
            })
    };
    let mut header = vec!["row".to_string()];
    header.extend(categories.iter().map(|c| c.to_string()));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = orders.iter().flat_map(|&n| {
        [false, true].into_iter().map({
            let categories = &categories;
            move |shuffled| {
                let label = if shuffled { format!("phi_{n}_shuffled") } else { format!("phi_{n}") };
                let mut row = vec![label];
                row.extend(categories.iter().map(|c| cell(c, n, shuffled)));
                row
            }
        })
    });
    write_csv(path, meta, &header_refs, rows.collect::<Vec<_>>())
}

/// Long layout: every real and surrogate value.
pub fn write_comparison_long(path: &Path, meta: &RunMeta, reports: &[ComparisonReport]) -> Result<()> {
    let mut rows = Vec::new();
    for r in reports {
        for (s, real) in r.real.iter().enumerate() {
            rows.push(vec![
                r.category.to_string(),
                r.order.to_string(),
                s.to_string(),
                "real".into(),
                String::new(),
                real.to_string(),
            ]);
            for (rep, v) in r.shuffled[s].iter().enumerate() {
                rows.push(vec![
                    r.category.to_string(),
                    r.order.to_string(),
                    s.to_string(),
                    "shuffled".into(),
                    rep.to_string(),
                    v.to_string(),
                ]);
            }
        }
    }
    write_csv(
        path,
        meta,
        &["category", "order", "segment", "kind", "replicate", "phi"],
        rows,
    )
}

#[derive(Serialize)]
struct Stamped<'a, T: Serialize> {
    meta: &'a RunMeta,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with the run metadata under `meta`.
pub fn write_json<T: Serialize>(path: &Path, meta: &RunMeta, body: &T) -> Result<()> {
    let out_err = |source| Error::Output {
        path: path.to_path_buf(),
        source,
    };
    let mut f = std::fs::File::create(path).map_err(out_err)?;
    serde_json::to_writer_pretty(&mut f, &Stamped { meta, body })?;
    f.write_all(b"\n").map_err(out_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(genre: &str, order: usize, real: f64, shuffled: f64) -> ComparisonReport {
        ComparisonReport {
            category: Category::new("en", genre),
            order,
            phi_real: real,
            phi_shuffled: shuffled,
            delta: shuffled - real,
            segment_count: 1,
            replicate_count: 1,
            real: vec![real],
            shuffled: vec![vec![shuffled]],
        }
    }

    #[test]
    fn comparison_table_layout() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let meta = RunMeta::new("h", Some(7));
        let reports = vec![
            report("news", 2, 4.5, 4.6),
            report("lit", 2, 4.0, 4.1),
            report("news", 3, 6.0, 6.1),
            report("lit", 3, 5.5, 5.6),
        ];
        write_comparison_table(&p, &meta, &reports).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# wordlen ") && lines[0].ends_with("config_hash=h seed=7"));
        assert_eq!(lines[1], "row,en/lit,en/news");
        assert_eq!(lines[2], "phi_2,4,4.5");
        assert_eq!(lines[3], "phi_2_shuffled,4.1,4.6");
        assert_eq!(lines.len(), 6);
    }
}
