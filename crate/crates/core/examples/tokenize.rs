//! Text to words to word lengths, with the drop counts the tokenizer keeps.
//!
//! cargo run --example tokenize -- "Some text to tokenize"

use wordlen::ingest::{text_lengths, tokenize, word_lengths, LetterPolicy, TokenizerConfig};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "We are the people. Η Ελλάδα 2008! A well-known MP3 player, don't you think?".into());

    let cfg = TokenizerConfig::default();
    let words = tokenize(&text, &cfg);
    println!("words:   {words:?}");
    println!("lengths: {:?}", word_lengths(&words, &cfg));

    let (_, drops) = text_lengths(&text, &cfg);
    println!("dropped: {} numeric, {} too short, {} too long", drops.numeric, drops.too_short, drops.too_long);

    let keep_apostrophes = TokenizerConfig {
        letter_policy: LetterPolicy::UnicodeLettersPlusInternalApostrophe,
        ..cfg
    };
    println!("with internal apostrophes: {:?}", tokenize(&text, &keep_apostrophes));
}
