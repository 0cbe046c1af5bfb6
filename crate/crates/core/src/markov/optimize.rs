//! Search over Markov measures on `Σ_A` for the largest `s(μ)`.
//!
//! Each probability vector is written as a softmax over logits restricted to
//! its support, with the first supported logit pinned to zero. Coordinates
//! are improved one at a time by golden-section line search, from several
//! seeded starting points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::entropy::{entropy_tail_bound, s_mu_to_depth};
use super::measure::MarkovMeasure;
use crate::error::{Error, Result};
use crate::matrix::TransferMatrix;

pub const DEFAULT_STARTS: usize = 16;

const LOGIT_RADIUS: f64 = 8.0;
const LOGIT_LIMIT: f64 = 40.0;
const MAX_SWEEPS: usize = 400;

/// Best measure found and the value of `s(μ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizedMeasure {
    pub measure: MarkovMeasure,
    /// `s(μ)` in bits.
    pub s_bits: f64,
    /// `s(μ) / log2 m`, directly comparable with the dimensions.
    pub s_value: f64,
    /// Truncation depth of the objective series.
    pub depth: usize,
    pub starts: usize,
}

/// Free coordinates of a measure with a fixed support.
struct Layout {
    m: usize,
    support: TransferMatrix,
    /// Free slots per vector: initial first, then each row.
    slots: Vec<Vec<usize>>,
    /// The pinned (zero-logit) index of each vector.
    pinned: Vec<usize>,
}

impl Layout {
    fn new(support: &TransferMatrix) -> Self {
        let m = support.m();
        let mut slots = vec![(1..m).collect::<Vec<_>>()];
        let mut pinned = vec![0];
        for i in 0..m {
            let allowed: Vec<usize> = (0..m).filter(|&j| support.get(i, j)).collect();
            pinned.push(allowed[0]);
            slots.push(allowed[1..].to_vec());
        }
        Self {
            m,
            support: support.clone(),
            slots,
            pinned,
        }
    }

    fn dims(&self) -> usize {
        self.slots.iter().map(Vec::len).sum()
    }

    fn softmax(&self, which: usize, theta: &[f64]) -> Vec<f64> {
        let mut logits = vec![f64::NEG_INFINITY; self.m];
        logits[self.pinned[which]] = 0.0;
        for (&slot, &th) in self.slots[which].iter().zip(theta) {
            logits[slot] = th;
        }
        let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = logits.iter().map(|&l| (l - max).exp()).collect();
        let s: f64 = w.iter().sum();
        w.into_iter().map(|x| x / s).collect()
    }

    fn measure(&self, theta: &[f64]) -> MarkovMeasure {
        let mut offset = 0;
        let mut vectors = Vec::with_capacity(self.m + 1);
        for which in 0..=self.m {
            let len = self.slots[which].len();
            vectors.push(self.softmax(which, &theta[offset..offset + len]));
            offset += len;
        }
        let initial = vectors.remove(0);
        MarkovMeasure::new(self.support.clone(), initial, vectors)
            .expect("softmax vectors are stochastic on the support")
    }
}

fn golden_section_max(
    mut f: impl FnMut(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
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
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Maximizes `s(μ)` over Markov measures supported on `a`.
///
/// `tol` sets both the series truncation and the stopping rule. The result
/// is a supremum over the Markov class only.
pub fn optimize_markov(a: &TransferMatrix, tol: f64, seed: u64) -> Result<OptimizedMeasure> {
    optimize_markov_with_starts(a, tol, seed, DEFAULT_STARTS)
}

pub fn optimize_markov_with_starts(
    a: &TransferMatrix,
    tol: f64,
    seed: u64,
    starts: usize,
) -> Result<OptimizedMeasure> {
    a.ensure_primitive()?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let m = a.m();
    // The truncated objective must resolve differences well below tol.
    let series_tol = (tol * 1e-3).max(1e-15);
    let depth = (1..2000)
        .find(|&k| entropy_tail_bound(m, k) <= series_tol)
        .expect("tail bound reaches 1e-15");
    let layout = Layout::new(a);
    let dims = layout.dims();
    let objective = |theta: &[f64]| s_mu_to_depth(&layout.measure(theta), depth).partial;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for start in 0..starts.max(1) {
        let mut theta: Vec<f64> = if start == 0 {
            vec![0.0; dims]
        } else {
            (0..dims).map(|_| rng.gen_range(-3.0..3.0)).collect()
        };
        let mut value = objective(&theta);
        for _ in 0..MAX_SWEEPS {
            let before = value;
            for c in 0..dims {
                let centre = theta[c];
                let lo = (centre - LOGIT_RADIUS).max(-LOGIT_LIMIT);
                let hi = (centre + LOGIT_RADIUS).min(LOGIT_LIMIT);
                let mut probe = theta.clone();
                let (x, fx) = golden_section_max(
                    |x| {
                        probe[c] = x;
                        objective(&probe)
                    },
                    lo,
                    hi,
                    1e-10,
                );
                if fx > value {
                    theta[c] = x;
                    value = fx;
                }
            }
            if value - before <= tol * 1e-6 {
                break;
            }
        }
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, theta));
        }
    }
    let (s_bits, theta) = best.expect("at least one start");
    Ok(OptimizedMeasure {
        measure: layout.measure(&theta),
        s_bits,
        s_value: s_bits / (m as f64).log2(),
        depth,
        starts: starts.max(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::{hausdorff_dimension, solve_golden_p};

    #[test]
    fn layout_respects_support() {
        let l = Layout::new(&TransferMatrix::golden_mean());
        assert_eq!(l.dims(), 2);
        let mu = l.measure(&[0.3, -1.0]);
        assert_eq!(mu.transition_row(1), &[1.0, 0.0]);
        assert!((mu.initial().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn golden_optimum() {
        let p = solve_golden_p(1e-15);
        let opt = optimize_markov(&TransferMatrix::golden_mean(), 1e-10, 0).unwrap();
        assert!((opt.s_value - 0.81137).abs() < 1e-5, "{}", opt.s_value);
        assert!((opt.s_value + p.log2()).abs() < 1e-8);
        assert!((opt.measure.transition(0, 0) - p).abs() < 1e-4);
    }

    #[test]
    fn full_shift_optimum_is_fair_coin() {
        let opt = optimize_markov(&TransferMatrix::full_shift(2).unwrap(), 1e-10, 1).unwrap();
        assert!((opt.s_value - 1.0).abs() < 1e-8);
        assert!((opt.measure.transition(0, 0) - 0.5).abs() < 1e-3);
    }

    #[test]
    fn circulant_matches_closed_form() {
        let c = TransferMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        let opt = optimize_markov_with_starts(&c, 1e-9, 3, 4).unwrap();
        let closed = 0.5 * 6f64.ln() / 3f64.ln();
        assert!((opt.s_value - closed).abs() < 1e-6, "{}", opt.s_value);
        let h = hausdorff_dimension(&c, 1e-12).unwrap();
        assert!(opt.s_value <= h.estimate.value + 1e-9);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let g = TransferMatrix::golden_mean();
        let a = optimize_markov_with_starts(&g, 1e-8, 42, 3).unwrap();
        let b = optimize_markov_with_starts(&g, 1e-8, 42, 3).unwrap();
        assert_eq!(a, b);
    }
}
