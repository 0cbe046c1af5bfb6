//! Maximizing `s(μ)` over Markov measures compatible with a matrix, compared
//! with the Hausdorff dimension.
//!
//! `cargo run --release --example optimize_measure`

use multishift::dimension::{hausdorff_dimension, solve_golden_p};
use multishift::markov::optimize_markov;
use multishift::TransferMatrix;

fn main() -> multishift::Result<()> {
    let cases = [
        ("golden mean", TransferMatrix::golden_mean()),
        ("full shift m=2", TransferMatrix::full_shift(2)?),
        (
            "circulant",
            "3\n1 1 0\n0 1 1\n1 0 1\n"
                .parse::<TransferMatrix>()?
                .into_primitive()?,
        ),
        (
            "uneven",
            "3\n1 1 1\n1 0 0\n0 1 0\n"
                .parse::<TransferMatrix>()?
                .into_primitive()?,
        ),
    ];
    for (name, a) in cases {
        let opt = optimize_markov(&a, 1e-10, 0)?;
        let h = hausdorff_dimension(&a, 1e-12)?.estimate.value;
        println!("{name}: sup s(μ) = {:.10}  dim_H = {h:.10}", opt.s_value);
        println!("  initial     {:?}", opt.measure.initial());
        for i in 0..a.m() {
            println!("  P({i}, ·)     {:?}", opt.measure.transition_row(i));
        }
    }
    println!("golden root p = {:.10}", solve_golden_p(1e-15));
    Ok(())
}
