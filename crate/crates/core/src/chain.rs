//! Multiplicative structure: the index set `{1, .., n}` splits into chains
//! `J(i) = (i, 2i, 4i, ..)` for odd `i`, and a word satisfies the
//! multiplicative constraint `A(u_k, u_2k) = 1` exactly when each chain
//! restriction is an admissible word of the additive shift.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::TransferMatrix;
use crate::word::{count_admissible_words, CylinderWord};

/// Partition of `{1, .., n}` into geometric chains keyed by their odd base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    n: usize,
    chains: BTreeMap<usize, Vec<usize>>,
}

impl ChainDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chains(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.chains
    }

    pub fn chain(&self, odd: usize) -> Option<&[usize]> {
        self.chains.get(&odd).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.chains.iter().map(|(&i, c)| (i, c.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}

/// Length of `J(i) ∩ [1, n]`, namely `floor(log2(n / i)) + 1`.
#[inline]
pub fn chain_len(i: usize, n: usize) -> usize {
    debug_assert!(i >= 1 && i <= n);
    let mut len = 0;
    let mut j = i;
    while j <= n {
        len += 1;
        j = match j.checked_mul(2) {
            Some(v) => v,
            None => break,
        };
    }
    len
}

pub fn chain_decomposition(n: usize) -> ChainDecomposition {
    let chains = (1..=n)
        .step_by(2)
        .map(|i| {
            let mut chain = Vec::with_capacity(chain_len(i, n));
            let mut j = i;
            while j <= n {
                chain.push(j);
                j *= 2;
            }
            (i, chain)
        })
        .collect();
    ChainDecomposition { n, chains }
}

/// `hist[k]` = number of odd `i <= n` whose chain has length `k`.
pub fn chain_length_histogram(n: usize) -> Vec<usize> {
    let mut hist = vec![0usize; chain_len(1, n.max(1)) + 1];
    for i in (1..=n).step_by(2) {
        hist[chain_len(i, n)] += 1;
    }
    hist
}

/// Reads `u` along the 1-based positions in `chain`.
pub fn restrict_word(u: &CylinderWord, chain: &[usize]) -> Result<CylinderWord> {
    chain
        .iter()
        .map(|&pos| {
            if pos == 0 || pos > u.len() {
                Err(Error::IndexOutOfRange {
                    index: pos,
                    len: u.len(),
                })
            } else {
                Ok(u.symbol_at(pos))
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(CylinderWord::new)
}

/// True iff `A(u_k, u_2k) = 1` for every `k` with `2k <= len(u)`.
pub fn is_multiplicatively_admissible(a: &TransferMatrix, u: &CylinderWord) -> bool {
    let n = u.len();
    u.symbols().iter().all(|&s| (s as usize) < a.m())
        && (1..=n / 2).all(|k| a.get(u.symbol_at(k) as usize, u.symbol_at(2 * k) as usize))
}

/// Exact number of multiplicatively admissible words of length `n`:
/// the product over odd `i <= n` of the additive count at the chain length.
pub fn count_multiplicative_prefixes(a: &TransferMatrix, n: usize) -> BigUint {
    chain_length_histogram(n)
        .into_iter()
        .enumerate()
        .filter(|&(_, mult)| mult > 0)
        .fold(BigUint::one(), |acc, (len, mult)| {
            acc * count_admissible_words(a, len).pow(mult as u32)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> CylinderWord {
        CylinderWord::from_digits(s).unwrap()
    }

    fn expected(pairs: &[(usize, &[usize])]) -> BTreeMap<usize, Vec<usize>> {
        pairs.iter().map(|&(i, c)| (i, c.to_vec())).collect()
    }

    #[test]
    fn decomposes_small_horizons() {
        assert_eq!(
            chain_decomposition(8).chains(),
            &expected(&[(1, &[1, 2, 4, 8]), (3, &[3, 6]), (5, &[5]), (7, &[7])])
        );
        assert_eq!(chain_decomposition(1).chains(), &expected(&[(1, &[1])]));
        assert_eq!(
            chain_decomposition(12).chains(),
            &expected(&[
                (1, &[1, 2, 4, 8]),
                (3, &[3, 6, 12]),
                (5, &[5, 10]),
                (7, &[7]),
                (9, &[9]),
                (11, &[11]),
            ])
        );
    }

    #[test]
    fn restricts_along_chains() {
        let u = w("10010110");
        assert_eq!(restrict_word(&u, &[3, 6]).unwrap(), w("01"));
        assert_eq!(restrict_word(&u, &[1, 2, 4, 8]).unwrap(), w("1010"));
        assert_eq!(restrict_word(&w("0010"), &[3]).unwrap(), w("1"));
        assert_eq!(
            restrict_word(&w("0010"), &[3, 6]),
            Err(Error::IndexOutOfRange { index: 6, len: 4 })
        );
    }

    #[test]
    fn multiplicative_admissibility_examples() {
        let g = TransferMatrix::golden_mean();
        assert!(is_multiplicatively_admissible(&g, &w("1010")));
        assert!(!is_multiplicatively_admissible(&g, &w("0101")));
        assert!(!is_multiplicatively_admissible(&g, &w("110")));
        assert!(is_multiplicatively_admissible(&g, &CylinderWord::default()));
    }

    #[test]
    fn prefix_counts() {
        let g = TransferMatrix::golden_mean();
        assert_eq!(count_multiplicative_prefixes(&g, 2), BigUint::from(3u32));
        assert_eq!(count_multiplicative_prefixes(&g, 4), BigUint::from(10u32));
        assert_eq!(count_multiplicative_prefixes(&g, 8), BigUint::from(96u32));
        let f = TransferMatrix::full_shift(2).unwrap();
        assert_eq!(
            count_multiplicative_prefixes(&f, 10),
            BigUint::from(1024u32)
        );
    }

    #[test]
    fn chain_length_census_for_dyadic_n() {
        for l in 1..=12usize {
            let n = 1usize << l;
            let hist = chain_length_histogram(n);
            for k in 1..l {
                assert_eq!(hist[k], n >> (k + 1), "n={n} k={k}");
            }
            // (1, 2] holds no odd integer; the chain of 1 has length l + 1.
            assert_eq!(hist[l], 0);
            assert_eq!(hist[l + 1], 1);
        }
    }

    #[test]
    fn partition_up_to_large_horizon() {
        let mut seen = vec![false; (1 << 16) + 1];
        for n in [1usize, 2, 3, 100, 1023, 1 << 16] {
            seen.iter_mut().for_each(|s| *s = false);
            let d = chain_decomposition(n);
            let mut total = 0;
            for (i, chain) in d.iter() {
                assert_eq!(chain.len(), chain_len(i, n));
                assert_eq!(chain.len(), ((n / i) as f64).log2().floor() as usize + 1);
                for &j in chain {
                    assert!(!seen[j], "index {j} appears twice");
                    seen[j] = true;
                    total += 1;
                }
            }
            assert_eq!(total, n);
        }
    }

    proptest! {
        #[test]
        fn chains_partition_every_horizon(n in 1usize..=(1 << 16)) {
            let d = chain_decomposition(n);
            let total: usize = d.iter().map(|(_, c)| c.len()).sum();
            prop_assert_eq!(total, n);
            let mut all: Vec<usize> = d.iter().flat_map(|(_, c)| c.iter().copied()).collect();
            all.sort_unstable();
            all.dedup();
            prop_assert_eq!(all.len(), n);
        }

        #[test]
        fn admissible_iff_every_restriction_is(code in 0u32..(1 << 14), n in 1usize..=14) {
            let g = TransferMatrix::golden_mean();
            let u = CylinderWord::new((0..n).map(|b| ((code >> b) & 1) as u8).collect());
            let by_chains = chain_decomposition(n)
                .iter()
                .all(|(_, c)| restrict_word(&u, c).unwrap().is_admissible(&g));
            prop_assert_eq!(is_multiplicatively_admissible(&g, &u), by_chains);
        }
    }

    #[test]
    fn restriction_equivalence_exhaustive_n16() {
        let g = TransferMatrix::golden_mean();
        let n = 16;
        let d = chain_decomposition(n);
        for code in 0u32..(1 << n) {
            let u = CylinderWord::new((0..n).map(|b| ((code >> b) & 1) as u8).collect());
            let by_chains = d
                .iter()
                .all(|(_, c)| restrict_word(&u, c).unwrap().is_admissible(&g));
            assert_eq!(is_multiplicatively_admissible(&g, &u), by_chains);
        }
    }

    #[test]
    fn fibonacci_law_to_k64() {
        let g = TransferMatrix::golden_mean();
        let counts: Vec<BigUint> = (0..=65).map(|k| count_admissible_words(&g, k)).collect();
        for k in 2..=64 {
            assert_eq!(counts[k + 1], &counts[k] + &counts[k - 1]);
        }
    }
}
