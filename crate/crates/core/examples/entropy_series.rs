//! Partition entropies `H(α_k)`, the series `s(μ)` and its closed form for
//! the golden family of measures.
//!
//! `cargo run --example entropy_series`

use multishift::markov::{
    partition_entropies, partition_entropy, s_mu, s_mu_closed_form_golden, MarkovMeasure,
};

fn main() -> multishift::Result<()> {
    println!(
        "{:>5} {:>16} {:>16} {:>9}",
        "p", "series", "2H(p)/(3-p)", "gap"
    );
    for i in 1..=9 {
        let p = i as f64 / 10.0;
        let s = s_mu(&MarkovMeasure::golden(p)?, 1e-13)?;
        let closed = s_mu_closed_form_golden(p)?;
        println!(
            "{p:>5.1} {:>16.12} {closed:>16.12} {:>9.1e}",
            s.partial,
            (s.partial - closed).abs()
        );
    }

    let mu = MarkovMeasure::golden(0.4)?;
    let dp = partition_entropies(&mu, 12);
    println!("\n k  H(α_k) by recursion  by enumeration");
    for k in 1..=12 {
        println!(
            "{k:>2}  {:>19.15}  {:>14.15}",
            dp[k - 1],
            partition_entropy(&mu, k)?
        );
    }
    Ok(())
}
