//! Word-length time series of natural-language text and their block entropies.
//!
//! A text becomes a sequence of word lengths (in Unicode code points). Series
//! are concatenated per `(language, genre)` category, cut into fixed-size
//! segments, and each segment is read with a gliding window of `n` symbols.
//! The plug-in Shannon entropy of the resulting n-gram distribution, in nats,
//! is the block entropy `phi_n`.
//!
//! The pipeline, bottom-up:
//!
//! - [`ingest`]: tokenization, word lengths, manifests and category series.
//! - [`segment`]: fixed-length, non-overlapping segmentation.
//! - [`entropy`]: gliding n-gram counts, block entropy, rank distributions.
//! - [`shuffle`]: per-segment shuffled surrogates and real-vs-shuffled reports.
//! - [`analysis`]: per-category summaries, segment-length sweeps, length
//!   histograms and cross-category orderings.
//! - [`series_io`] and [`export`]: on-disk series files and plot-ready outputs.
//! - [`cli`]: the batch front end behind the `wordlen` binary.
//!
//! ```
//! use wordlen::entropy::{count_ngrams_in, entropy};
//!
//! let table = count_ngrams_in(&[1, 2, 1, 2], 2).unwrap();
//! let phi = entropy(&table);
//! assert!((phi.value - 0.636514).abs() < 1e-6);
//! ```

pub mod analysis;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod export;
pub mod ingest;
pub mod segment;
pub mod series_io;
pub mod shuffle;
mod stats;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};
use std::fmt;

/// Word length in Unicode code points. Always at least 1.
pub type Symbol = u16;

/// A `(language, genre)` pair, e.g. `en/news`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Category {
    pub language: String,
    pub genre: String,
}

impl Category {
    pub fn new(language: impl Into<String>, genre: impl Into<String>) -> Self {
        Self {
            language: language.into(),
            genre: genre.into(),
        }
    }

    /// File-name friendly form, `language_genre`.
    pub fn slug(&self) -> String {
        format!("{}_{}", self.language, self.genre)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.language, self.genre)
    }
}
