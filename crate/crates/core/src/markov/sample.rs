//! Sampling words from `P_μ` and empirical local dimensions.

use std::io::Write;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::entropy::partition_entropies;
use super::measure::{log2_cylinder_measure_multiplicative, MarkovMeasure};
use crate::chain::chain_length_histogram;
use crate::error::{Error, Result};
use crate::word::CylinderWord;

/// Precomputed categorical laws for one measure.
pub struct Sampler {
    initial: WeightedIndex<f64>,
    rows: Vec<WeightedIndex<f64>>,
}

impl Sampler {
    pub fn new(mu: &MarkovMeasure) -> Self {
        let law = |w: &[f64]| WeightedIndex::new(w).expect("stochastic vector");
        Self {
            initial: law(mu.initial()),
            rows: (0..mu.m()).map(|i| law(mu.transition_row(i))).collect(),
        }
    }

    /// Draws a length-`n` word. Odd positions start a chain and take the
    /// initial law; position `2k` follows position `k` through `P`. Chains
    /// are therefore independent copies of the Markov chain, interleaved.
    pub fn sample<R: rand::Rng + ?Sized>(&self, n: usize, rng: &mut R) -> CylinderWord {
        let mut symbols = Vec::with_capacity(n);
        for pos in 1..=n {
            let s = if pos % 2 == 1 {
                self.initial.sample(rng)
            } else {
                self.rows[symbols[pos / 2 - 1] as usize].sample(rng)
            };
            symbols.push(s as u8);
        }
        CylinderWord::new(symbols)
    }
}

/// The generator behind every stochastic operation: ChaCha8 keyed by `seed`
/// on stream `stream`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One word of length `n` drawn from `P_μ`.
pub fn sample_sequence(mu: &MarkovMeasure, n: usize, seed: u64) -> CylinderWord {
    Sampler::new(mu).sample(n, &mut seeded_rng(seed, 0))
}

/// Words drawn from `P_μ` with their local dimensions `-(1/n) log2 P_μ[x_1^n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub seed: u64,
    pub n: usize,
    pub words: Vec<CylinderWord>,
    pub local_dims: Vec<f64>,
    pub mean: f64,
    pub std_dev: f64,
    /// False when `n` is not a power of two.
    pub dyadic: bool,
}

impl SampleBatch {
    /// CSV with columns `sample_index,word,local_dim`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["sample_index", "word", "local_dim"])
            .map_err(|e| Error::Io(e.to_string()))?;
        for (idx, (word, ld)) in self.words.iter().zip(&self.local_dims).enumerate() {
            w.write_record([idx.to_string(), word.to_string(), format!("{ld:.17e}")])
                .map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Samples `count` words; sample `j` uses stream `j` of the seeded generator,
/// so sample 0 coincides with [`sample_sequence`] for the same seed.
pub fn local_dimension_stats(
    mu: &MarkovMeasure,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<SampleBatch> {
    if n == 0 || count == 0 {
        return Err(Error::Domain(
            "word length and count must be positive".into(),
        ));
    }
    let sampler = Sampler::new(mu);
    let mut words = Vec::with_capacity(count);
    let mut local_dims = Vec::with_capacity(count);
    for j in 0..count {
        let word = sampler.sample(n, &mut seeded_rng(seed, j as u64));
        local_dims.push(-log2_cylinder_measure_multiplicative(mu, &word) / n as f64);
        words.push(word);
    }
    let mean = local_dims.iter().sum::<f64>() / count as f64;
    let var = if count > 1 {
        local_dims.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64
    } else {
        0.0
    };
    Ok(SampleBatch {
        seed,
        n,
        words,
        local_dims,
        mean,
        std_dev: var.sqrt(),
        dyadic: n.is_power_of_two(),
    })
}

/// `E[-(1/n) log2 P_μ[x_1^n]]`: each chain of length `k` contributes
/// `H^μ(α_k)`.
pub fn expected_local_dimension(mu: &MarkovMeasure, n: usize) -> f64 {
    let hist = chain_length_histogram(n);
    let h = partition_entropies(mu, hist.len() - 1);
    hist.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &mult)| mult as f64 * h[k - 1])
        .sum::<f64>()
        / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::is_multiplicatively_admissible;
    use crate::dimension::solve_golden_p;
    use crate::markov::entropy::s_mu_to_depth;

    #[test]
    fn n1_is_initial_law() {
        let mu = MarkovMeasure::golden(0.3).unwrap();
        let zeros = (0..20_000)
            .filter(|&s| sample_sequence(&mu, 1, s).symbol_at(1) == 0)
            .count();
        let freq = zeros as f64 / 20_000.0;
        // 4 sigma for Bernoulli(0.3)
        assert!((freq - 0.3).abs() < 4.0 * (0.21f64 / 20_000.0).sqrt());
    }

    #[test]
    fn samples_are_admissible_and_reproducible() {
        let p = solve_golden_p(1e-15);
        let mu = MarkovMeasure::golden(p).unwrap();
        for seed in 0..200 {
            let u = sample_sequence(&mu, 64, seed);
            assert!(is_multiplicatively_admissible(mu.support(), &u));
            assert_eq!(u, sample_sequence(&mu, 64, seed));
        }
        let batch = local_dimension_stats(&mu, 16, 4, 9).unwrap();
        assert_eq!(batch.words[0], sample_sequence(&mu, 16, 9));
    }

    #[test]
    fn fair_coin_local_dims_are_one() {
        let mu = MarkovMeasure::bernoulli(vec![0.5, 0.5]).unwrap();
        let batch = local_dimension_stats(&mu, 128, 50, 3).unwrap();
        assert!(batch.local_dims.iter().all(|&d| (d - 1.0).abs() < 1e-15));
    }

    #[test]
    fn n1_local_dim_is_two_point() {
        let mu = MarkovMeasure::golden(0.3).unwrap();
        let batch = local_dimension_stats(&mu, 1, 100, 0).unwrap();
        for (u, d) in batch.words.iter().zip(&batch.local_dims) {
            let expected = -mu.initial()[u.symbol_at(1) as usize].log2();
            assert_eq!(*d, expected);
        }
    }

    #[test]
    fn expected_local_dim_relation_to_partial_sums() {
        let mu = MarkovMeasure::golden(solve_golden_p(1e-15)).unwrap();
        // For n = 2^l the chains have lengths 1..l-1 (n/2^(k+1) of each)
        // plus the single chain of 1, of length l+1.
        for l in 1..=12 {
            let n = 1usize << l;
            let partial = if l > 1 {
                s_mu_to_depth(&mu, l - 1).partial
            } else {
                0.0
            };
            let h = partition_entropies(&mu, l + 1);
            let exact = partial + h[l] / n as f64;
            assert!((expected_local_dimension(&mu, n) - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn golden_local_dims_near_partial_sum() {
        let mu = MarkovMeasure::golden(solve_golden_p(1e-15)).unwrap();
        let n = 1 << 10;
        let batch = local_dimension_stats(&mu, n, 10_000, 0).unwrap();
        let partial = s_mu_to_depth(&mu, 10).partial;
        assert!(
            (batch.mean - partial).abs() < 0.01,
            "{} vs {partial}",
            batch.mean
        );
        let se = batch.std_dev / (10_000f64).sqrt();
        assert!((batch.mean - expected_local_dimension(&mu, n)).abs() < 5.0 * se);
        assert!(batch.local_dims.iter().all(|d| d.is_finite() && *d > 0.0));
        assert!(batch.dyadic);
    }

    #[test]
    fn csv_export() {
        let mu = MarkovMeasure::golden(0.4).unwrap();
        let batch = local_dimension_stats(&mu, 4, 3, 1).unwrap();
        let mut buf = Vec::new();
        batch.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "sample_index,word,local_dim");
        assert_eq!(lines.len(), 4);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields[1], batch.words[0].to_string());
        assert_eq!(fields[2].parse::<f64>().unwrap(), batch.local_dims[0]);
    }
}
