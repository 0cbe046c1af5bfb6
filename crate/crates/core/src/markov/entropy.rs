//! Partition entropies `H^μ(α_k)` and the weighted series
//! `s(μ) = Σ_k H^μ(α_k) / 2^(k+1)`. All entropies are in bits.

use serde::{Deserialize, Serialize};

use super::measure::{cylinder_measure_sigma, MarkovMeasure};
use crate::error::{Error, Result};
use crate::word::{enumerate_admissible_words_capped, DEFAULT_ENUMERATION_CAP};

/// `-Σ x log2 x` with `0 log 0 = 0`.
pub fn shannon_entropy(dist: &[f64]) -> f64 {
    -dist
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.log2())
        .sum::<f64>()
}

pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

/// `H^μ(α_k)` by summing over every admissible length-`k` cylinder.
pub fn partition_entropy(mu: &MarkovMeasure, k: usize) -> Result<f64> {
    partition_entropy_capped(mu, k, DEFAULT_ENUMERATION_CAP)
}

pub fn partition_entropy_capped(mu: &MarkovMeasure, k: usize, cap: u64) -> Result<f64> {
    let words = enumerate_admissible_words_capped(mu.support(), k, cap)?;
    let masses: Vec<f64> = words
        .iter()
        .map(|u| cylinder_measure_sigma(mu, u))
        .collect();
    Ok(shannon_entropy(&masses))
}

/// `H^μ(α_k)` for `k = 1..=depth` by the chain rule:
/// `H(α_{k+1}) = H(α_k) + Σ_i π_k(i) H(P(i, ·))` with `π_k` the law of the
/// `k`-th symbol.
pub fn partition_entropies(mu: &MarkovMeasure, depth: usize) -> Vec<f64> {
    let m = mu.m();
    let row_entropy: Vec<f64> = (0..m)
        .map(|i| shannon_entropy(mu.transition_row(i)))
        .collect();
    let mut marginal = mu.initial().to_vec();
    let mut h = shannon_entropy(&marginal);
    let mut out = Vec::with_capacity(depth);
    for k in 1..=depth {
        if k > 1 {
            h += marginal
                .iter()
                .zip(&row_entropy)
                .map(|(pi, hr)| pi * hr)
                .sum::<f64>();
            marginal = (0..m)
                .map(|j| (0..m).map(|i| marginal[i] * mu.transition(i, j)).sum())
                .collect();
        }
        out.push(h);
    }
    out
}

/// Truncated `s(μ)` series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropySeries {
    /// `H^μ(α_k) / 2^(k+1)` for `k = 1..=depth`.
    pub terms: Vec<f64>,
    pub partial: f64,
    /// `Σ_{k>K} k 2^(-k-1) log2 m`.
    pub tail_bound: f64,
    pub depth: usize,
}

impl EntropySeries {
    /// `s(μ)` rescaled from bits to the base-`m` units of a dimension.
    pub fn in_dimension_units(&self, m: usize) -> f64 {
        self.partial / (m as f64).log2()
    }
}

/// `Σ_{k>K} k 2^(-k-1) log2 m = (K+2) 2^(-K-1) log2 m`.
pub fn entropy_tail_bound(m: usize, depth: usize) -> f64 {
    (depth as f64 + 2.0) * 0.5f64.powi(depth as i32 + 1) * (m as f64).log2()
}

/// The series truncated where the tail bound first drops to `tol`.
pub fn s_mu(mu: &MarkovMeasure, tol: f64) -> Result<EntropySeries> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let m = mu.m();
    let depth = (1..2000)
        .find(|&k| entropy_tail_bound(m, k) <= tol)
        .ok_or_else(|| Error::Domain(format!("tolerance {tol} below representable tail")))?;
    Ok(s_mu_to_depth(mu, depth))
}

pub fn s_mu_to_depth(mu: &MarkovMeasure, depth: usize) -> EntropySeries {
    let terms: Vec<f64> = partition_entropies(mu, depth)
        .into_iter()
        .enumerate()
        .map(|(idx, h)| h * 0.5f64.powi(idx as i32 + 2))
        .collect();
    EntropySeries {
        partial: terms.iter().sum(),
        terms,
        tail_bound: entropy_tail_bound(mu.m(), depth),
        depth,
    }
}

/// `2 H(p) / (3 - p)`: the series for [`MarkovMeasure::golden`] in closed form.
pub fn s_mu_closed_form_golden(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
    }
    Ok(2.0 * binary_entropy(p) / (3.0 - p))
}

/// Maximizer of [`s_mu_closed_form_golden`] over `(0, 1)` and the maximum.
///
/// The derivative has the sign of `(3 - p) log2((1-p)/p) + H(p)`, which
/// decreases from `+inf` to `-inf`; its root is bisected to full precision.
pub fn maximize_closed_form_golden() -> (f64, f64) {
    let g = |p: f64| (3.0 - p) * ((1.0 - p) / p).log2() + binary_entropy(p);
    let (mut lo, mut hi) = (1e-12f64, 1.0 - 1e-12);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = 0.5 * (lo + hi);
    (p, s_mu_closed_form_golden(p).expect("interior point"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::solve_golden_p;
    use crate::matrix::TransferMatrix;

    fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let r = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - r * (b - a);
        let mut d = a + r * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..200 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = f(d);
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn golden_k1_entropy() {
        let p = solve_golden_p(1e-15);
        let mu = MarkovMeasure::golden(p).unwrap();
        let h1 = partition_entropy(&mu, 1).unwrap();
        assert!((h1 - binary_entropy(p)).abs() < 1e-15);
        // Binary entropy at the root, evaluated independently in f64.
        assert!((h1 - 0.985_879_903_826_661).abs() < 1e-12);
        assert!((partition_entropies(&mu, 1)[0] - h1).abs() < 1e-15);
    }

    #[test]
    fn golden_k2_entropy_three_cylinders() {
        let p = 0.5698403;
        let mu = MarkovMeasure::golden(p).unwrap();
        let masses = [p * p, p * (1.0 - p), 1.0 - p];
        let expected: f64 = -masses.iter().map(|x| x * x.log2()).sum::<f64>();
        assert!((partition_entropy(&mu, 2).unwrap() - expected).abs() < 1e-14);
        assert!((partition_entropies(&mu, 2)[1] - expected).abs() < 1e-14);
    }

    #[test]
    fn fair_coin_entropies() {
        let mu = MarkovMeasure::bernoulli(vec![0.5, 0.5]).unwrap();
        assert!((partition_entropy(&mu, 3).unwrap() - 3.0).abs() < 1e-15);
        let s = s_mu(&mu, 1e-12).unwrap();
        assert!((s.partial - 1.0).abs() <= s.tail_bound + 1e-15);
    }

    #[test]
    fn dp_matches_enumeration_to_k12() {
        for mu in [
            MarkovMeasure::golden(solve_golden_p(1e-15)).unwrap(),
            MarkovMeasure::golden(0.3).unwrap(),
            MarkovMeasure::uniform(
                TransferMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap(),
            ),
        ] {
            let dp = partition_entropies(&mu, 12);
            for k in 1..=12 {
                let enumerated = partition_entropy(&mu, k).unwrap();
                assert!((dp[k - 1] - enumerated).abs() < 1e-12, "k={k}");
            }
        }
    }

    #[test]
    fn series_matches_closed_form_on_grid() {
        for i in 1..=9 {
            let p = i as f64 / 10.0;
            let s = s_mu(&MarkovMeasure::golden(p).unwrap(), 1e-13).unwrap();
            let closed = s_mu_closed_form_golden(p).unwrap();
            assert!((s.partial - closed).abs() < 1e-9, "p={p}");
        }
        let s = s_mu(&MarkovMeasure::golden(0.5).unwrap(), 1e-12).unwrap();
        assert!((s.partial - 0.8).abs() < 1e-11);
    }

    #[test]
    fn series_at_optimum() {
        let p = solve_golden_p(1e-15);
        let s = s_mu(&MarkovMeasure::golden(p).unwrap(), 1e-10).unwrap();
        assert!((s.partial - 0.81137).abs() < 1e-5);
        assert!((s.partial + p.log2()).abs() < 1e-10);
        assert!(s.terms.iter().all(|&t| t >= 0.0));
    }

    #[test]
    fn tail_bound_decreases() {
        let b: Vec<f64> = (1..60).map(|k| entropy_tail_bound(3, k)).collect();
        assert!(b.windows(2).all(|w| w[1] < w[0]));
        // Closed form equals the direct tail sum.
        let direct: f64 = (11..400).map(|k| k as f64 * 0.5f64.powi(k + 1)).sum();
        assert!((direct - entropy_tail_bound(2, 10)).abs() < 1e-15);
    }

    #[test]
    fn closed_form_domain() {
        assert!(s_mu_closed_form_golden(0.0).is_err());
        assert!(s_mu_closed_form_golden(1.0).is_err());
        assert_eq!(s_mu_closed_form_golden(0.5).unwrap(), 0.8);
        let p = solve_golden_p(1e-15);
        assert!((s_mu_closed_form_golden(p).unwrap() - 0.81137).abs() < 1e-5);
    }

    #[test]
    fn optimum_of_closed_form() {
        let (p, s) = maximize_closed_form_golden();
        assert!((p.powi(3) - (1.0 - p).powi(2)).abs() < 1e-8);
        assert!((s + p.log2()).abs() < 1e-8);
        // Independent 1-D oracle.
        let q = golden_section_max(|x| s_mu_closed_form_golden(x).unwrap(), 0.01, 0.99);
        assert!((q - p).abs() < 1e-6);
        assert!((q.powi(3) - (1.0 - q).powi(2)).abs() < 1e-6);
    }

    #[test]
    fn entropy_bounded_by_log_count() {
        let mu = MarkovMeasure::golden(0.42).unwrap();
        let g = TransferMatrix::golden_mean();
        for (k, h) in partition_entropies(&mu, 30).into_iter().enumerate() {
            let count = crate::word::count_admissible_words(&g, k + 1);
            let log_count = count.bits() as f64; // upper bound on log2(count)
            assert!(h <= log_count);
        }
    }
}
