//! Brute-force reference implementations and fixtures shared by the
//! integration tests. Deliberately naive: a map of windows, a plain sum.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn oracle_counts(symbols: &[u16], order: usize) -> BTreeMap<Vec<u16>, u64> {
    let mut map = BTreeMap::new();
    let windows = symbols.len() + 1 - order;
    for j in 0..windows {
        let mut key = Vec::with_capacity(order);
        for t in 0..order {
            key.push(symbols[j + t]);
        }
        *map.entry(key).or_insert(0) += 1;
    }
    map
}

pub fn oracle_entropy(counts: &BTreeMap<Vec<u16>, u64>) -> f64 {
    let total: u64 = counts.values().sum();
    let mut h = 0.0;
    for &c in counts.values() {
        let p = c as f64 / total as f64;
        h -= p * p.ln();
    }
    h
}

/// `(ngram, count, probability)` by descending count, ties by n-gram.
pub fn oracle_ranks(counts: &BTreeMap<Vec<u16>, u64>) -> Vec<(Vec<u16>, u64, f64)> {
    let total: u64 = counts.values().sum();
    let mut v: Vec<_> = counts
        .iter()
        .map(|(g, &c)| (g.clone(), c, c as f64 / total as f64))
        .collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v
}

pub fn random_segment(rng: &mut ChaCha8Rng, len: usize, alphabet: u16) -> Vec<u16> {
    (0..len).map(|_| rng.random_range(1..=alphabet)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus_manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.json")
}
