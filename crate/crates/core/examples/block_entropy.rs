//! Gliding n-gram counts and block entropies of one segment.

use wordlen::entropy::{count_ngrams_in, entropy, marginal_table};

fn main() -> wordlen::Result<()> {
    let segment = [2u16, 3, 3, 6, 1, 4, 2, 3, 3, 6, 5, 2, 3, 3, 6];

    for n in 1..=4 {
        let table = count_ngrams_in(&segment, n)?;
        let phi = entropy(&table);
        println!(
            "n={n}: {} windows, {} distinct, phi = {:.6} nats (max {:.6})",
            table.total(),
            phi.distinct_ngrams,
            phi.value,
            (phi.distinct_ngrams as f64).ln()
        );
    }

    let trigrams = count_ngrams_in(&segment, 3)?;
    for (g, c) in trigrams.iter().take(4) {
        println!("  {g:?} x{c}");
    }
    let prefixes = marginal_table(&trigrams)?;
    println!(
        "phi_3 = {:.6} >= phi of its bigram prefixes = {:.6}",
        entropy(&trigrams).value,
        entropy(&prefixes).value
    );

    println!("phi_1([1,2,2,2]) = {:.6}", entropy(&count_ngrams_in(&[1, 2, 2, 2], 1)?).value);
    println!("phi_2([1,2,1,2]) = {:.6}", entropy(&count_ngrams_in(&[1, 2, 1, 2], 2)?).value);
    Ok(())
}
