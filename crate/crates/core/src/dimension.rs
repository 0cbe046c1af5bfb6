//! Hausdorff and Minkowski dimensions of `Ξ_A`.
//!
//! * Minkowski: `Σ_k 2^(-k-1) log_m <A^(k-1) 1, 1>`, truncated at a depth
//!   chosen from an explicit tail bound.
//! * Hausdorff: `(1/2) log_m Σ_i t_i` where `t_i^2 = Σ_j A(i,j) t_j`,
//!   `t_i > 1`.
//!
//! All logarithms here are base `m`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::TransferMatrix;

/// Iteration cap used by [`hausdorff_dimension`].
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// A computed value with a split error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    /// Truncation error (series) or residual propagation (t-system).
    pub method_bound: f64,
    /// Floating-point accumulation allowance.
    pub roundoff_bound: f64,
}

impl Estimate {
    pub fn bound(&self) -> f64 {
        self.method_bound + self.roundoff_bound
    }

    pub fn lower(&self) -> f64 {
        self.value - self.bound()
    }

    pub fn upper(&self) -> f64 {
        self.value + self.bound()
    }
}

/// Truncated Minkowski series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiDimension {
    pub estimate: Estimate,
    /// Truncation depth `K`.
    pub depth: usize,
}

/// `log_m <A^(k-1) 1, 1>` for `k = 1..=depth`, via normalized matrix-vector
/// products with accumulated log scale factors.
pub fn log_word_counts(a: &TransferMatrix, depth: usize) -> Vec<f64> {
    let m = a.m();
    let ln_m = (m as f64).ln();
    let mut v = vec![1.0f64; m];
    let mut log_scale = 0.0f64;
    let mut out = Vec::with_capacity(depth);
    for k in 1..=depth {
        if k > 1 {
            let next: Vec<f64> = (0..m)
                .map(|i| (0..m).filter(|&j| a.get(i, j)).map(|j| v[j]).sum())
                .collect();
            let s = next.iter().cloned().fold(0.0, f64::max);
            log_scale += s.ln();
            v = next.into_iter().map(|x| x / s).collect();
        }
        let total: f64 = v.iter().sum();
        out.push((log_scale + total.ln()) / ln_m);
    }
    out
}

/// `Σ_{k>K} 2^(-k-1) (1 + (k-1) log_m R)` with `R` the maximal row sum.
pub fn minkowski_tail_bound(a: &TransferMatrix, depth: usize) -> f64 {
    let log_r = (a.max_row_sum() as f64).ln() / (a.m() as f64).ln();
    let w = 0.5f64.powi(depth as i32 + 1);
    w * (1.0 + (depth as f64 + 1.0) * log_r)
}

/// Smallest `K >= 1` whose tail bound is at most `tol`.
pub fn minkowski_depth_for(a: &TransferMatrix, tol: f64) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    (1..2000)
        .find(|&k| minkowski_tail_bound(a, k) <= tol)
        .ok_or_else(|| Error::Domain(format!("tolerance {tol} below representable tail")))
}

/// The `K` partial sums of the Minkowski series.
pub fn minkowski_partial_sums(a: &TransferMatrix, depth: usize) -> Vec<f64> {
    log_word_counts(a, depth)
        .into_iter()
        .enumerate()
        .scan(0.0, |acc, (idx, log_count)| {
            *acc += 0.5f64.powi(idx as i32 + 2) * log_count;
            Some(*acc)
        })
        .collect()
}

fn series_roundoff(depth: usize) -> f64 {
    8.0 * (depth as f64 + 4.0) * f64::EPSILON
}

pub fn minkowski_dimension(a: &TransferMatrix, tol: f64) -> Result<MinkowskiDimension> {
    a.ensure_primitive()?;
    let depth = minkowski_depth_for(a, tol)?;
    let value = *minkowski_partial_sums(a, depth).last().expect("depth >= 1");
    Ok(MinkowskiDimension {
        estimate: Estimate {
            value,
            method_bound: minkowski_tail_bound(a, depth),
            roundoff_bound: series_roundoff(depth),
        },
        depth,
    })
}

/// Positive solution of `t_i^2 = Σ_j A(i,j) t_j` with its residual certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TVector {
    pub values: Vec<f64>,
    /// `max_i |t_i^2 - Σ_j A(i,j) t_j|`.
    pub residual: f64,
    pub iterations: usize,
}

impl TVector {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

fn apply(a: &TransferMatrix, t: &[f64]) -> Vec<f64> {
    (0..a.m())
        .map(|i| (0..a.m()).filter(|&j| a.get(i, j)).map(|j| t[j]).sum())
        .collect()
}

fn signed_residuals(a: &TransferMatrix, t: &[f64]) -> Vec<f64> {
    apply(a, t)
        .into_iter()
        .zip(t)
        .map(|(at, &ti)| ti * ti - at)
        .collect()
}

/// `max_i |t_i^2 - (A t)_i|`.
pub fn t_residual(a: &TransferMatrix, t: &[f64]) -> f64 {
    signed_residuals(a, t)
        .into_iter()
        .fold(0.0, |acc, r| acc.max(r.abs()))
}

fn sqrt_map(a: &TransferMatrix, t: &[f64]) -> Vec<f64> {
    apply(a, t).into_iter().map(f64::sqrt).collect()
}

/// Solves the t-system by the monotone iteration `t <- sqrt(A t)` started
/// from the constant vector `m`.
pub fn solve_t_system(a: &TransferMatrix, tol: f64, max_iter: usize) -> Result<TVector> {
    let start = vec![a.m() as f64; a.m()];
    solve_t_system_from(a, &start, tol, max_iter)
}

/// As [`solve_t_system`] from an arbitrary start in `(1, m]^m`.
///
/// Alongside the main iterate a lower iterate runs up from the all-ones
/// vector. From `m·1` the iterates decrease and from `1` they increase, so
/// the pair brackets the fixed point. If the main iteration stalls above
/// `tol`, the sign change of `Σ_i (t_i^2 - (At)_i)` along the segment from
/// lower to upper is bisected.
pub fn solve_t_system_from(
    a: &TransferMatrix,
    start: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<TVector> {
    a.ensure_primitive()?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let m = a.m();
    if start.len() != m || start.iter().any(|&x| !(x > 1.0 && x <= m as f64)) {
        return Err(Error::Domain(format!(
            "start vector must lie in (1, {m}]^{m}"
        )));
    }

    let mut t = start.to_vec();
    let mut lower = vec![1.0f64; m];
    let mut best = (t_residual(a, &t), t.clone());
    let mut stalled = 0;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let next = sqrt_map(a, &t);
        lower = sqrt_map(a, &lower);
        let res = t_residual(a, &next);
        if res < best.0 {
            best = (res, next.clone());
            stalled = 0;
        } else {
            stalled += 1;
        }
        let unchanged = next == t;
        t = next;
        if res <= tol {
            return Ok(TVector {
                values: t,
                residual: res,
                iterations,
            });
        }
        if unchanged || stalled >= 8 {
            break;
        }
    }

    // Safeguard: bisect along the segment between the bracketing iterates.
    let upper = best.1.clone();
    let point = |lam: f64| -> Vec<f64> {
        lower
            .iter()
            .zip(&upper)
            .map(|(&lo, &hi)| lo + lam * (hi - lo))
            .collect()
    };
    let total = |v: &[f64]| -> f64 { signed_residuals(a, v).iter().sum() };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if total(&point(lo)) <= 0.0 && total(&point(hi)) >= 0.0 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let p = point(mid);
            let res = t_residual(a, &p);
            if res < best.0 {
                best = (res, p.clone());
            }
            if total(&p) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    if best.0 <= tol {
        Ok(TVector {
            values: best.1,
            residual: best.0,
            iterations,
        })
    } else {
        Err(Error::NoConvergence {
            max_iter,
            residual: best.0,
        })
    }
}

/// Hausdorff dimension with the solved t-vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HausdorffDimension {
    pub estimate: Estimate,
    pub t: TVector,
}

/// `(1/2) log_m Σ t_i`. The method bound is the first-order propagation
/// `residual · m / (ln m · Σ t_i)`.
pub fn hausdorff_dimension(a: &TransferMatrix, tol: f64) -> Result<HausdorffDimension> {
    let t = solve_t_system(a, tol, DEFAULT_MAX_ITER)?;
    let m = a.m() as f64;
    let sum = t.sum();
    let value = 0.5 * sum.ln() / m.ln();
    Ok(HausdorffDimension {
        estimate: Estimate {
            value,
            method_bound: t.residual * m / (m.ln() * sum),
            roundoff_bound: 8.0 * f64::EPSILON,
        },
        t,
    })
}

/// Root of `p^3 = (1-p)^2` in `(0, 1)` by bisection. The function
/// `p^3 - (1-p)^2` increases strictly on `[0, 1]` from `-1` to `1`.
pub fn solve_golden_p(tol: f64) -> f64 {
    let f = |p: f64| p * p * p - (1.0 - p) * (1.0 - p);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Whether `dim_H = dim_M`, which holds exactly when all row sums agree.
pub fn dims_equal_verdict(a: &TransferMatrix) -> Result<bool> {
    a.ensure_primitive()?;
    Ok(a.common_row_sum().is_some())
}

/// Extras printed only for the exact golden mean matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoldenSpecialization {
    /// Root of `p^3 = (1-p)^2`.
    pub p: f64,
    /// `-log2 p`, the Hausdorff dimension in closed form.
    pub minus_log2_p: f64,
    /// `2 H(p) / (3 - p)` at the root.
    pub entropy_closed_form: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodMetadata {
    pub tolerance: f64,
    pub truncation_depth: usize,
    pub max_row_sum: usize,
    pub solver_iterations: usize,
    pub solver_residual: f64,
    pub t_vector: Vec<f64>,
    pub primitivity_power: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub alphabet_size: usize,
    pub hausdorff: Estimate,
    pub minkowski: Estimate,
    pub dims_equal: bool,
    pub golden: Option<GoldenSpecialization>,
    pub method: MethodMetadata,
}

impl DimensionReport {
    /// Both dimensions at tolerance `tol`.
    pub fn compute(a: &TransferMatrix, tol: f64) -> Result<Self> {
        let a = if a.primitivity_power().is_some() {
            a.clone()
        } else {
            a.clone().into_primitive()?
        };
        let h = hausdorff_dimension(&a, tol)?;
        let mk = minkowski_dimension(&a, tol)?;
        let golden = a.is_golden_mean().then(|| {
            let p = solve_golden_p(1e-15);
            GoldenSpecialization {
                p,
                minus_log2_p: -p.log2(),
                entropy_closed_form: crate::markov::s_mu_closed_form_golden(p)
                    .expect("root lies in (0, 1)"),
            }
        });
        Ok(Self {
            alphabet_size: a.m(),
            hausdorff: h.estimate,
            minkowski: mk.estimate,
            dims_equal: dims_equal_verdict(&a)?,
            golden,
            method: MethodMetadata {
                tolerance: tol,
                truncation_depth: mk.depth,
                max_row_sum: a.max_row_sum(),
                solver_iterations: h.t.iterations,
                solver_residual: h.t.residual,
                t_vector: h.t.values,
                primitivity_power: a.primitivity_power(),
            },
        })
    }
}
