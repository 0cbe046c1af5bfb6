//! Brute-force cross-checks for the analytic routes.
//!
//! Every check here works from definitions only: words are enumerated by
//! testing `A(u_k, u_2k)` position by position, measures are multiplied out
//! position by position, and entropies are summed over enumerated
//! cylinders. Nothing here calls the chain-product counts, the chain
//! decomposition, or the dynamic-programming entropies it verifies.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::chain::count_multiplicative_prefixes;
use crate::dimension::{log_word_counts, minkowski_partial_sums};
use crate::error::{Error, Result};
use crate::markov::{partition_entropies, MarkovMeasure};
use crate::matrix::TransferMatrix;
use crate::word::CylinderWord;

/// Node budget for the depth-first enumerations below.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 28;
pub const DEFAULT_N_MAX: usize = 16;
pub const DEFAULT_K_MAX: usize = 12;
pub const DEFAULT_BOX_LEVELS: usize = 20;

pub const NORMALIZATION_TOL: f64 = 1e-12;
pub const ENTROPY_TOL: f64 = 1e-12;
pub const BOX_DIMENSION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum OracleValue {
    /// Decimal digits of an exact count.
    Integer(String),
    Real(f64),
}

impl fmt::Display for OracleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleValue::Integer(s) => f.write_str(s),
            OracleValue::Real(x) => write!(f, "{x:.17e}"),
        }
    }
}

/// Exact verdicts compare integers with tolerance 0; approximate ones
/// compare floats against a stated tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Exact,
    Approximate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub check: String,
    pub instance: String,
    pub kind: VerdictKind,
    pub analytic: OracleValue,
    pub oracle: OracleValue,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleVerdict {
    fn exact(check: &str, instance: String, analytic: &BigUint, oracle: &BigUint) -> Self {
        let discrepancy = if analytic == oracle {
            0.0
        } else {
            let diff = if analytic > oracle {
                analytic - oracle
            } else {
                oracle - analytic
            };
            diff.to_f64().unwrap_or(f64::INFINITY)
        };
        Self {
            check: check.into(),
            instance,
            kind: VerdictKind::Exact,
            analytic: OracleValue::Integer(analytic.to_string()),
            oracle: OracleValue::Integer(oracle.to_string()),
            discrepancy,
            tolerance: 0.0,
            passed: analytic == oracle,
        }
    }

    fn approx(check: &str, instance: String, analytic: f64, oracle: f64, tolerance: f64) -> Self {
        let discrepancy = (analytic - oracle).abs();
        Self {
            check: check.into(),
            instance,
            kind: VerdictKind::Approximate,
            analytic: OracleValue::Real(analytic),
            oracle: OracleValue::Real(oracle),
            discrepancy,
            tolerance,
            passed: discrepancy <= tolerance,
        }
    }
}

fn matrix_tag(a: &TransferMatrix) -> String {
    let rows: Vec<String> = a
        .rows()
        .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
        .collect();
    format!("A={}", rows.join("/"))
}

/// Number of multiplicatively admissible words at each length `1..=n_max`,
/// found by extending words one symbol at a time and testing the new
/// position `k` against position `k/2`.
pub fn enumerate_multiplicative_counts(
    a: &TransferMatrix,
    n_max: usize,
    cap: u64,
) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; n_max + 1];
    counts[0] = 1;
    let mut visited = 0u64;
    let mut word = Vec::with_capacity(n_max);
    walk_multiplicative(a, n_max, &mut word, &mut |len, _| {
        counts[len] += 1;
        visited += 1;
        if visited > cap {
            Err(Error::EnumerationTooLarge {
                requested: visited as u128,
                cap,
            })
        } else {
            Ok(())
        }
    })?;
    Ok(counts)
}

/// Depth-first walk over admissible words; `visit(len, word)` is called on
/// every non-empty admissible word.
fn walk_multiplicative(
    a: &TransferMatrix,
    n_max: usize,
    word: &mut Vec<u8>,
    visit: &mut dyn FnMut(usize, &[u8]) -> Result<()>,
) -> Result<()> {
    if word.len() == n_max {
        return Ok(());
    }
    let pos = word.len() + 1;
    for s in 0..a.m() as u8 {
        if pos % 2 == 0 && !a.get(word[pos / 2 - 1] as usize, s as usize) {
            continue;
        }
        word.push(s);
        visit(pos, word)?;
        walk_multiplicative(a, n_max, word, visit)?;
        word.pop();
    }
    Ok(())
}

/// Compares the chain-product counts against enumeration for `n = 1..=n_max`.
pub fn verify_prefix_counts(a: &TransferMatrix, n_max: usize) -> Result<Vec<OracleVerdict>> {
    verify_prefix_counts_capped(a, n_max, DEFAULT_ORACLE_CAP)
}

pub fn verify_prefix_counts_capped(
    a: &TransferMatrix,
    n_max: usize,
    cap: u64,
) -> Result<Vec<OracleVerdict>> {
    let enumerated = enumerate_multiplicative_counts(a, n_max, cap)?;
    Ok((1..=n_max)
        .map(|n| {
            OracleVerdict::exact(
                "prefix_count",
                format!("{} n={n}", matrix_tag(a)),
                &count_multiplicative_prefixes(a, n),
                &BigUint::from(enumerated[n]),
            )
        })
        .collect())
}

/// Natural log of a big integer, accurate to double precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log_m N_n / n` at `n = 2^l`, `l = 1..=levels`, with `N_n` the exact
/// chain-product count.
pub fn empirical_box_dimension(a: &TransferMatrix, levels: usize) -> Vec<(usize, f64)> {
    let ln_m = (a.m() as f64).ln();
    (1..=levels)
        .map(|l| {
            let n = 1usize << l;
            let count = count_multiplicative_prefixes(a, n);
            (n, ln_biguint(&count) / ln_m / n as f64)
        })
        .collect()
}

/// What the series predicts for `log_m N_n / n` at `n = 2^l`. The chains
/// of `{1, .., 2^l}` have lengths `1..l-1` (`2^(l-k-1)` of length `k`) and
/// one chain of length `l + 1`, so the value is the partial sum to depth
/// `l - 1` plus `2^(-l) log_m <A^l 1, 1>`.
pub fn box_dimension_prediction(a: &TransferMatrix, levels: usize) -> Vec<f64> {
    let sums = minkowski_partial_sums(a, levels);
    let logs = log_word_counts(a, levels + 1);
    (1..=levels)
        .map(|l| {
            let head = if l > 1 { sums[l - 2] } else { 0.0 };
            head + logs[l] * 0.5f64.powi(l as i32)
        })
        .collect()
}

pub fn verify_box_dimension(a: &TransferMatrix, levels: usize) -> Vec<OracleVerdict> {
    empirical_box_dimension(a, levels)
        .into_iter()
        .zip(box_dimension_prediction(a, levels))
        .map(|((n, empirical), predicted)| {
            OracleVerdict::approx(
                "box_dimension",
                format!("{} n={n}", matrix_tag(a)),
                predicted,
                empirical,
                BOX_DIMENSION_TOL,
            )
        })
        .collect()
}

/// `P_μ[u]` walked position by position: odd positions start a chain and
/// take the initial law, even position `k` moves from `u_{k/2}` through `P`.
pub fn direct_multiplicative_measure(mu: &MarkovMeasure, u: &CylinderWord) -> f64 {
    (1..=u.len())
        .map(|k| {
            let s = u.symbol_at(k) as usize;
            if s >= mu.m() {
                0.0
            } else if k % 2 == 1 {
                mu.initial()[s]
            } else {
                mu.transition(u.symbol_at(k / 2) as usize, s)
            }
        })
        .product()
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Total `P_μ` mass of the admissible words at each length `1..=n_max`.
pub fn enumerate_measure_totals(mu: &MarkovMeasure, n_max: usize, cap: u64) -> Result<Vec<f64>> {
    let mut totals = vec![CompensatedSum::default(); n_max + 1];
    let mut visited = 0u64;
    let mut word = Vec::with_capacity(n_max);
    walk_multiplicative(mu.support(), n_max, &mut word, &mut |len, w| {
        visited += 1;
        if visited > cap {
            return Err(Error::EnumerationTooLarge {
                requested: visited as u128,
                cap,
            });
        }
        totals[len].add(direct_multiplicative_measure(
            mu,
            &CylinderWord::new(w.to_vec()),
        ));
        Ok(())
    })?;
    Ok(totals.iter().map(CompensatedSum::value).collect())
}

pub fn verify_measure_normalization(
    mu: &MarkovMeasure,
    n_max: usize,
) -> Result<Vec<OracleVerdict>> {
    verify_measure_normalization_capped(mu, n_max, DEFAULT_ORACLE_CAP)
}

pub fn verify_measure_normalization_capped(
    mu: &MarkovMeasure,
    n_max: usize,
    cap: u64,
) -> Result<Vec<OracleVerdict>> {
    let totals = enumerate_measure_totals(mu, n_max, cap)?;
    Ok((1..=n_max)
        .map(|n| {
            OracleVerdict::approx(
                "measure_normalization",
                format!("{} n={n}", matrix_tag(mu.support())),
                1.0,
                totals[n],
                NORMALIZATION_TOL,
            )
        })
        .collect())
}

/// `H^μ(α_k)` for `k = 1..=k_max` by enumerating additive cylinders and
/// multiplying transition probabilities along each.
pub fn enumerate_partition_entropies(
    mu: &MarkovMeasure,
    k_max: usize,
    cap: u64,
) -> Result<Vec<f64>> {
    let requested = (mu.m() as u128)
        .checked_pow(k_max as u32)
        .unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::EnumerationTooLarge { requested, cap });
    }
    fn walk(
        mu: &MarkovMeasure,
        k_max: usize,
        last: Option<usize>,
        depth: usize,
        mass: f64,
        acc: &mut [CompensatedSum],
    ) {
        if depth == k_max {
            return;
        }
        for s in 0..mu.m() {
            let step = match last {
                None => mu.initial()[s],
                Some(prev) if mu.support().get(prev, s) => mu.transition(prev, s),
                Some(_) => continue,
            };
            let q = mass * step;
            if q > 0.0 {
                acc[depth + 1].add(-q * q.log2());
            }
            walk(mu, k_max, Some(s), depth + 1, q, acc);
        }
    }
    let mut acc = vec![CompensatedSum::default(); k_max + 1];
    walk(mu, k_max, None, 0, 1.0, &mut acc);
    Ok(acc.iter().skip(1).map(CompensatedSum::value).collect())
}

pub fn verify_entropy_series(mu: &MarkovMeasure, k_max: usize) -> Result<Vec<OracleVerdict>> {
    let enumerated = enumerate_partition_entropies(mu, k_max, DEFAULT_ORACLE_CAP)?;
    let dp = partition_entropies(mu, k_max);
    Ok((1..=k_max)
        .map(|k| {
            OracleVerdict::approx(
                "partition_entropy",
                format!("{} k={k}", matrix_tag(mu.support())),
                dp[k - 1],
                enumerated[k - 1],
                ENTROPY_TOL,
            )
        })
        .collect())
}

/// Defaults for [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub k_max: usize,
    pub box_levels: usize,
    pub cap: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_max: DEFAULT_N_MAX,
            k_max: DEFAULT_K_MAX,
            box_levels: DEFAULT_BOX_LEVELS,
            cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// Every oracle check for one matrix and one measure on it, ordered by
/// check name then instance size.
pub fn run_suite(
    a: &TransferMatrix,
    mu: &MarkovMeasure,
    config: &SuiteConfig,
) -> Result<Vec<OracleVerdict>> {
    let mut out = verify_box_dimension(a, config.box_levels);
    out.extend(verify_measure_normalization_capped(
        mu,
        config.n_max,
        config.cap,
    )?);
    out.extend(verify_entropy_series(mu, config.k_max)?);
    out.extend(verify_prefix_counts_capped(a, config.n_max, config.cap)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::is_multiplicatively_admissible;
    use crate::dimension::solve_golden_p;
    use crate::markov::{binary_entropy, cylinder_measure_multiplicative};

    #[test]
    fn golden_prefix_counts() {
        let g = TransferMatrix::golden_mean();
        let v = verify_prefix_counts(&g, 8).unwrap();
        assert!(v.iter().all(|x| x.passed && x.discrepancy == 0.0));
        assert_eq!(v[3].analytic, OracleValue::Integer("10".into()));
        assert_eq!(v[7].oracle, OracleValue::Integer("96".into()));
    }

    #[test]
    fn full_shift_prefix_counts() {
        let f = TransferMatrix::full_shift(2).unwrap();
        let v = verify_prefix_counts(&f, 12).unwrap();
        assert_eq!(v[11].oracle, OracleValue::Integer("4096".into()));
        assert!(v.iter().all(|x| x.passed));
    }

    #[test]
    fn enumeration_matches_filtering() {
        // Filtering every binary word with the admissibility predicate.
        let g = TransferMatrix::golden_mean();
        let counts = enumerate_multiplicative_counts(&g, 12, DEFAULT_ORACLE_CAP).unwrap();
        for n in 1..=12 {
            let filtered = (0u32..1 << n)
                .filter(|code| {
                    let u = CylinderWord::new((0..n).map(|b| ((code >> b) & 1) as u8).collect());
                    is_multiplicatively_admissible(&g, &u)
                })
                .count() as u64;
            assert_eq!(counts[n], filtered);
        }
    }

    #[test]
    fn enumeration_cap() {
        let f = TransferMatrix::full_shift(2).unwrap();
        assert!(matches!(
            verify_prefix_counts_capped(&f, 12, 1000),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn box_dimension_examples() {
        let g = TransferMatrix::golden_mean();
        let e = empirical_box_dimension(&g, 3);
        assert_eq!(e[0].0, 2);
        assert!((e[0].1 - 3f64.log2() / 2.0).abs() < 1e-15);
        let f = TransferMatrix::full_shift(2).unwrap();
        assert!(empirical_box_dimension(&f, 12)
            .iter()
            .all(|&(_, d)| (d - 1.0).abs() < 1e-15));
        assert!(verify_box_dimension(&g, 12).iter().all(|v| v.passed));
    }

    #[test]
    fn ln_of_huge_integers() {
        let x = BigUint::from(3u32).pow(5000);
        assert!((ln_biguint(&x) - 5000.0 * 3f64.ln()).abs() < 1e-9);
        assert_eq!(ln_biguint(&BigUint::from(1u32)), 0.0);
    }

    #[test]
    fn normalization_examples() {
        let p = solve_golden_p(1e-15);
        let v = verify_measure_normalization(&MarkovMeasure::golden(p).unwrap(), 2).unwrap();
        assert!(v.iter().all(|x| x.passed));
        let v = verify_measure_normalization(&MarkovMeasure::golden(0.3).unwrap(), 8).unwrap();
        assert!(v.iter().all(|x| x.passed));
        let coin = MarkovMeasure::bernoulli(vec![0.5, 0.5]).unwrap();
        let totals = enumerate_measure_totals(&coin, 10, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(totals[10], 1.0);
    }

    #[test]
    fn direct_measure_equals_chain_product() {
        let mu = MarkovMeasure::golden(0.37).unwrap();
        let g = TransferMatrix::golden_mean();
        for n in 1..=12 {
            for code in 0u32..1 << n {
                let u = CylinderWord::new((0..n).map(|b| ((code >> b) & 1) as u8).collect());
                let direct = direct_multiplicative_measure(&mu, &u);
                let chains = cylinder_measure_multiplicative(&mu, &u);
                assert!((direct - chains).abs() <= 1e-15 * direct.max(chains));
                assert_eq!(direct > 0.0, is_multiplicatively_admissible(&g, &u));
            }
        }
    }

    #[test]
    fn entropy_examples() {
        let p = solve_golden_p(1e-15);
        let mu = MarkovMeasure::golden(p).unwrap();
        let v = verify_entropy_series(&mu, 12).unwrap();
        assert!(v.iter().all(|x| x.passed), "{v:?}");
        assert_eq!(v[0].oracle, OracleValue::Real(binary_entropy(p)));

        let q = 0.3;
        let coin = MarkovMeasure::bernoulli(vec![q, 1.0 - q]).unwrap();
        let e = enumerate_partition_entropies(&coin, 5, DEFAULT_ORACLE_CAP).unwrap();
        assert!((e[4] - 5.0 * binary_entropy(q)).abs() < 1e-13);
        assert!(verify_entropy_series(&coin, 5)
            .unwrap()
            .iter()
            .all(|x| x.passed));
    }

    #[test]
    fn suite_order_is_deterministic() {
        let g = TransferMatrix::golden_mean();
        let mu = MarkovMeasure::golden(0.4).unwrap();
        let cfg = SuiteConfig {
            n_max: 8,
            k_max: 6,
            box_levels: 6,
            cap: DEFAULT_ORACLE_CAP,
        };
        let a = run_suite(&g, &mu, &cfg).unwrap();
        let b = run_suite(&g, &mu, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8 + 6 + 6 + 8);
        assert!(a.iter().all(|v| v.passed));
    }
}
