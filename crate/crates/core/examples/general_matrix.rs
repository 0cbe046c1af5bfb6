//! Dimensions for arbitrary primitive matrices, read from text, and the
//! equal-row-sum criterion for `dim_H = dim_M`.
//!
//! `cargo run --example general_matrix [matrix-file]`

use multishift::dimension::DimensionReport;
use multishift::TransferMatrix;

fn show(name: &str, a: &TransferMatrix) -> multishift::Result<()> {
    let r = DimensionReport::compute(a, 1e-10)?;
    let m = a.m() as f64;
    println!("{name}: m = {}, row sums {:?}", a.m(), a.row_sums());
    println!(
        "  dim_H = {:.12}  dim_M = {:.12}  equal = {}",
        r.hausdorff.value, r.minkowski.value, r.dims_equal
    );
    if let Some(rs) = a.common_row_sum() {
        println!(
            "  (1/2) log_m(m r) = {:.12}",
            0.5 * (m * rs as f64).ln() / m.ln()
        );
    }
    println!("  t = {:?}", r.method.t_vector);
    Ok(())
}

fn main() -> multishift::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let a = TransferMatrix::load(&path)?.into_primitive()?;
        return show(&path, &a);
    }
    let circulant: TransferMatrix = "3\n1 1 0\n0 1 1\n1 0 1\n".parse()?;
    let uneven: TransferMatrix = "3\n1 1 1\n1 0 0\n0 1 0\n".parse()?;
    show("circulant", &circulant.into_primitive()?)?;
    show("uneven", &uneven.into_primitive()?)?;
    show("full shift on 4 symbols", &TransferMatrix::full_shift(4)?)?;

    // Reducible and periodic matrices are refused with a reason.
    for text in ["2\n1 1\n0 1\n", "2\n0 1\n1 0\n"] {
        let a: TransferMatrix = text.parse()?;
        println!("{:?} -> {}", text, a.into_primitive().unwrap_err());
    }
    Ok(())
}
