//! Both dimensions of the multiplicative golden mean shift, the golden root
//! `p^3 = (1-p)^2` and the closed forms that come with it.
//!
//! `cargo run --example golden_mean`

use multishift::dimension::{hausdorff_dimension, minkowski_dimension, solve_golden_p};
use multishift::markov::s_mu_closed_form_golden;
use multishift::TransferMatrix;

fn main() -> multishift::Result<()> {
    let g = TransferMatrix::golden_mean();
    let h = hausdorff_dimension(&g, 1e-12)?;
    let m = minkowski_dimension(&g, 1e-12)?;
    let p = solve_golden_p(1e-15);

    println!("matrix:\n{g}");
    println!(
        "t-vector              {:?}  (residual {:.1e})",
        h.t.values, h.t.residual
    );
    println!(
        "dim_H                 {:.12}  ± {:.1e}",
        h.estimate.value,
        h.estimate.bound()
    );
    println!(
        "dim_M                 {:.12}  ± {:.1e}  (depth {})",
        m.estimate.value,
        m.estimate.bound(),
        m.depth
    );
    println!("golden root p         {p:.16}");
    println!("-log2 p               {:.12}", -p.log2());
    println!("2H(p)/(3-p)           {:.12}", s_mu_closed_form_golden(p)?);
    println!(
        "dim_H < dim_M         {}  (gap {:.6})",
        h.estimate.upper() < m.estimate.lower(),
        m.estimate.value - h.estimate.value
    );
    Ok(())
}
