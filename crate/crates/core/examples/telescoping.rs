//! Dyadic local dimensions `a_j` of the optimal golden measure and the exact
//! identity for their average.
//!
//! `cargo run --example telescoping`

use multishift::dimension::solve_golden_p;
use multishift::markov::{
    dyadic_local_dims, sample_sequence, telescoping_average, telescoping_identity, MarkovMeasure,
};

fn main() -> multishift::Result<()> {
    let p = solve_golden_p(1e-15);
    let u = sample_sequence(&MarkovMeasure::golden(0.3)?, 1 << 10, 1);
    println!("a_j = {:?}", dyadic_local_dims(&u, p)?);
    println!("average   {:.15}", telescoping_average(&u, p)?);
    println!("identity  {:.15}", telescoping_identity(&u, p)?);
    // Away from the root the identity fails and the check says so.
    println!("at p = 0.5: {}", telescoping_average(&u, 0.5).unwrap_err());
    Ok(())
}
