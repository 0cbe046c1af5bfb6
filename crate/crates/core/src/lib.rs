//! # multishift
//!
//! Dimensions of multiplicative subshifts of finite type
//! `Ξ_A = { x : A(x_k, x_2k) = 1 for all k }` for a primitive 0-1 matrix `A`.
//!
//! * [`dimension`]: Hausdorff dimension from the t-system
//!   `t_i^2 = Σ_j A(i,j) t_j`, Minkowski dimension from the series
//!   `Σ_k 2^(-k-1) log_m <A^(k-1) 1, 1>`, each with an error bound.
//! * [`markov`]: Markov measures, the product measure they induce on the
//!   multiplicative shift, the entropy series `s(μ)`, its maximization and
//!   seeded sampling.
//! * [`oracle`]: brute-force enumerations that check the analytic routes.
//! * [`chain`], [`word`], [`matrix`]: the symbolic data model.
//!
//! ```
//! use multishift::{dimension::DimensionReport, TransferMatrix};
//!
//! let report = DimensionReport::compute(&TransferMatrix::golden_mean(), 1e-10).unwrap();
//! assert!((report.hausdorff.value - 0.81137).abs() < 1e-5);
//! assert!((report.minkowski.value - 0.82429).abs() < 1e-5);
//! assert!(report.hausdorff.upper() < report.minkowski.lower());
//! ```
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example
//! golden_mean` is the place to start.

pub mod chain;
pub mod cli;
pub mod dimension;
pub mod error;
pub mod markov;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod word;

pub use error::{Error, Result};
pub use matrix::TransferMatrix;
pub use word::CylinderWord;
