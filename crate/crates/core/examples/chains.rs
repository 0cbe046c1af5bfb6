//! The chain decomposition of `{1, .., n}` and the exact prefix counts it
//! yields.
//!
//! `cargo run --example chains`

use multishift::chain::{
    chain_decomposition, count_multiplicative_prefixes, is_multiplicatively_admissible,
    restrict_word,
};
use multishift::{CylinderWord, TransferMatrix};

fn main() -> multishift::Result<()> {
    let n = 12;
    for (odd, chain) in chain_decomposition(n).iter() {
        println!("J({odd:>2}) = {chain:?}");
    }
    let g = TransferMatrix::golden_mean();
    let u = CylinderWord::from_digits("100100001000")?;
    println!(
        "\nu = {u}, admissible: {}",
        is_multiplicatively_admissible(&g, &u)
    );
    for (odd, chain) in chain_decomposition(n).iter() {
        println!("  u|J({odd}) = {}", restrict_word(&u, chain)?);
    }
    println!("\nN_n for the golden mean:");
    for n in [1, 2, 4, 8, 16, 32, 64] {
        println!("  N_{n} = {}", count_multiplicative_prefixes(&g, n));
    }
    Ok(())
}
