//! Series files written by `ingest` and read back by the analysis commands.
//!
//! Each category gets a data file and a JSON sidecar named after
//! [`Category::slug`]:
//!
//! - binary `<slug>.wls`: the 8 magic bytes `WLSERIES`, a `u32` format
//!   version (1), a `u64` symbol count, then that many `u16` lengths, all
//!   little-endian;
//! - text `<slug>.txt`: one decimal length per line;
//! - sidecar `<slug>.json`: [`Sidecar`].

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ingest::{DropCounts, SourceRange, TokenizerConfig, WordLengthSeries};
use crate::{Category, Error, Result, Symbol};

pub const MAGIC: &[u8; 8] = b"WLSERIES";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesFormat {
    #[default]
    Binary,
    Text,
}

impl SeriesFormat {
    pub fn extension(self) -> &'static str {
        match self {
            SeriesFormat::Binary => "wls",
            SeriesFormat::Text => "txt",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub tool_version: String,
    pub config_hash: String,
    pub language: String,
    pub genre: String,
    pub format: SeriesFormat,
    pub data_file: String,
    pub length: usize,
    pub tokenizer: TokenizerConfig,
    pub drops: DropCounts,
    pub documents: Vec<SourceRange>,
}

pub fn encode_binary(lengths: &[Symbol]) -> Vec<u8> {
    let mut out = Vec::with_capacity(20 + 2 * lengths.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(lengths.len() as u64).to_le_bytes());
    for l in lengths {
        out.extend_from_slice(&l.to_le_bytes());
    }
    out
}

pub fn decode_binary(bytes: &[u8], path: &Path) -> Result<Vec<Symbol>> {
    let bad = |reason: &str| Error::SeriesFormat {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if bytes.len() < 20 || &bytes[..8] != MAGIC {
        return Err(bad("missing WLSERIES header"));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(bad(&format!("unsupported format version {version}")));
    }
    let count = u64::from_le_bytes(bytes[12..20].try_into().unwrap()) as usize;
    let body = &bytes[20..];
    if body.len() != count.saturating_mul(2) {
        return Err(bad(&format!("header says {count} lengths, body holds {} bytes", body.len())));
    }
    let lengths: Vec<Symbol> = body
        .chunks_exact(2)
        .map(|b| u16::from_le_bytes([b[0], b[1]]))
        .collect();
    if lengths.contains(&0) {
        return Err(bad("zero word length"));
    }
    Ok(lengths)
}

pub fn encode_text(lengths: &[Symbol]) -> Vec<u8> {
    let mut out = String::with_capacity(3 * lengths.len());
    for l in lengths {
        out.push_str(&l.to_string());
        out.push('\n');
    }
    out.into_bytes()
}

pub fn decode_text(bytes: &[u8], path: &Path) -> Result<Vec<Symbol>> {
    let bad = |reason: String| Error::SeriesFormat {
        path: path.to_path_buf(),
        reason,
    };
    let text = std::str::from_utf8(bytes).map_err(|e| bad(e.to_string()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| match l.trim().parse::<Symbol>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(bad(format!("line {}: `{l}` is not a word length", i + 1))),
        })
        .collect()
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::Output {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes the data file and sidecar for one series; returns both paths.
pub fn write_series(
    dir: &Path,
    series: &WordLengthSeries,
    format: SeriesFormat,
    tokenizer: &TokenizerConfig,
    config_hash: &str,
) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Output {
        path: dir.to_path_buf(),
        source,
    })?;
    let slug = series.category.slug();
    let data_name = format!("{slug}.{}", format.extension());
    let data_path = dir.join(&data_name);
    let bytes = match format {
        SeriesFormat::Binary => encode_binary(&series.lengths),
        SeriesFormat::Text => encode_text(&series.lengths),
    };
    write_file(&data_path, &bytes)?;

    let sidecar = Sidecar {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: config_hash.to_string(),
        language: series.category.language.clone(),
        genre: series.category.genre.clone(),
        format,
        data_file: data_name,
        length: series.len(),
        tokenizer: tokenizer.clone(),
        drops: series.drops(),
        documents: series.sources.clone(),
    };
    let sidecar_path = dir.join(format!("{slug}.json"));
    let mut json = serde_json::to_vec_pretty(&sidecar)?;
    json.push(b'\n');
    write_file(&sidecar_path, &json)?;
    Ok((data_path, sidecar_path))
}

pub fn read_series(sidecar_path: &Path) -> Result<(WordLengthSeries, Sidecar)> {
    let raw = std::fs::read(sidecar_path).map_err(|e| Error::io(sidecar_path, e))?;
    let sidecar: Sidecar = serde_json::from_slice(&raw).map_err(|e| Error::SeriesFormat {
        path: sidecar_path.to_path_buf(),
        reason: e.to_string(),
    })?;
    let dir = sidecar_path.parent().unwrap_or(Path::new(""));
    let data_path = dir.join(&sidecar.data_file);
    let bytes = std::fs::read(&data_path).map_err(|e| Error::io(&data_path, e))?;
    let lengths = match sidecar.format {
        SeriesFormat::Binary => decode_binary(&bytes, &data_path)?,
        SeriesFormat::Text => decode_text(&bytes, &data_path)?,
    };
    if lengths.len() != sidecar.length {
        return Err(Error::SeriesFormat {
            path: data_path,
            reason: format!("sidecar says {} lengths, file holds {}", sidecar.length, lengths.len()),
        });
    }
    let series = WordLengthSeries {
        category: Category::new(&sidecar.language, &sidecar.genre),
        lengths,
        sources: sidecar.documents.clone(),
    };
    Ok((series, sidecar))
}

/// Reads every series in `dir`, sorted by category.
pub fn read_series_dir(dir: &Path) -> Result<Vec<(WordLengthSeries, Sidecar)>> {
    let mut sidecars: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    sidecars.sort();
    if sidecars.is_empty() {
        return Err(Error::SeriesFormat {
            path: dir.to_path_buf(),
            reason: "no series sidecars found".into(),
        });
    }
    let mut out = sidecars
        .iter()
        .map(|p| read_series(p))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.0.category.cmp(&b.0.category));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn binary_and_text_roundtrip(lengths in prop::collection::vec(1u16..=u16::MAX, 0..300)) {
            let p = Path::new("mem");
            prop_assert_eq!(decode_binary(&encode_binary(&lengths), p).unwrap(), lengths.clone());
            prop_assert_eq!(decode_text(&encode_text(&lengths), p).unwrap(), lengths);
        }
    }

    #[test]
    fn binary_layout() {
        let b = encode_binary(&[2, 3, 300]);
        assert_eq!(&b[..8], b"WLSERIES");
        assert_eq!(&b[8..12], &[1, 0, 0, 0]);
        assert_eq!(&b[12..20], &[3, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&b[20..], &[2, 0, 3, 0, 44, 1]);
    }

    #[test]
    fn rejects_corruption() {
        let p = Path::new("mem");
        let mut b = encode_binary(&[2, 3]);
        b.pop();
        assert!(decode_binary(&b, p).is_err());
        assert!(decode_binary(b"NOTMAGIC", p).is_err());
        assert!(decode_binary(&encode_binary(&[0]), p).is_err());
        assert!(decode_text(b"3\nx\n", p).is_err());
        assert!(decode_text(b"0\n", p).is_err());
    }

    #[test]
    fn writes_and_reads_back() {
        let dir = tempfile::tempdir().unwrap();
        let s = WordLengthSeries::from_lengths(Category::new("el", "sports"), vec![6, 1, 8]);
        for format in [SeriesFormat::Binary, SeriesFormat::Text] {
            let sub = dir.path().join(format.extension());
            write_series(&sub, &s, format, &TokenizerConfig::default(), "abc").unwrap();
            let all = read_series_dir(&sub).unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].0, s);
            assert_eq!(all[0].1.config_hash, "abc");
        }
    }
}
