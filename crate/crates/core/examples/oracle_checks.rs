//! Brute-force cross-checks of the analytic routes: counts, measure
//! normalization, entropies and box dimension.
//!
//! `cargo run --release --example oracle_checks`

use multishift::markov::MarkovMeasure;
use multishift::oracle::{run_suite, SuiteConfig};
use multishift::report::verdict_table;
use multishift::TransferMatrix;

fn main() -> multishift::Result<()> {
    let a: TransferMatrix = "3\n1 1 0\n0 1 1\n1 0 1\n".parse()?;
    let a = a.into_primitive()?;
    let mu = MarkovMeasure::uniform(a.clone());
    let config = SuiteConfig {
        n_max: 12,
        k_max: 10,
        box_levels: 12,
        ..SuiteConfig::default()
    };
    let verdicts = run_suite(&a, &mu, &config)?;
    print!("{}", verdict_table(&verdicts));
    println!("all passed: {}", verdicts.iter().all(|v| v.passed));
    Ok(())
}
