//! The Minkowski series, its tail bound and the box-counting ratio
//! `log_m N_n / n` computed from exact counts at `n = 2^l`.
//!
//! `cargo run --example minkowski_convergence`

use multishift::dimension::{minkowski_partial_sums, minkowski_tail_bound};
use multishift::oracle::{box_dimension_prediction, empirical_box_dimension};
use multishift::TransferMatrix;

fn main() {
    let g = TransferMatrix::golden_mean();
    let levels = 20;
    let sums = minkowski_partial_sums(&g, levels);
    let boxes = empirical_box_dimension(&g, levels);
    let predicted = box_dimension_prediction(&g, levels);
    println!(
        "{:>3} {:>16} {:>10} {:>9} {:>16} {:>9}",
        "K", "partial sum", "tail", "n", "log N_n / n", "gap"
    );
    for k in 1..=levels {
        let (n, b) = boxes[k - 1];
        println!(
            "{k:>3} {:>16.12} {:>10.2e} {n:>9} {b:>16.12} {:>9.1e}",
            sums[k - 1],
            minkowski_tail_bound(&g, k),
            (b - predicted[k - 1]).abs()
        );
    }
}
