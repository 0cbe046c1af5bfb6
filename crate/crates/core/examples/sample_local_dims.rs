//! Seeded sampling from the product measure and empirical local dimensions
//! `-(1/n) log2 P[x_1^n]`.
//!
//! `cargo run --release --example sample_local_dims`

use multishift::dimension::solve_golden_p;
use multishift::markov::{expected_local_dimension, local_dimension_stats, s_mu, MarkovMeasure};

fn main() -> multishift::Result<()> {
    let mu = MarkovMeasure::golden(solve_golden_p(1e-15))?;
    let limit = s_mu(&mu, 1e-12)?.partial;
    println!("s(μ) = {limit:.10}");
    println!(
        "{:>6} {:>12} {:>12} {:>12}",
        "n", "mean", "expected", "std dev"
    );
    for l in [4, 6, 8, 10, 12] {
        let n = 1usize << l;
        let batch = local_dimension_stats(&mu, n, 2000, 0)?;
        println!(
            "{n:>6} {:>12.8} {:>12.8} {:>12.8}",
            batch.mean,
            expected_local_dimension(&mu, n),
            batch.std_dev
        );
    }
    let batch = local_dimension_stats(&mu, 16, 5, 42)?;
    println!("\nfirst samples (seed 42, n = 16):");
    batch.write_csv(std::io::stdout())?;
    Ok(())
}
