//! Finite words over the alphabet and exact counting in the additive shift.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::TransferMatrix;

/// Default budget for exhaustive enumeration: `2^24` candidate words.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// A finite word `u_1 .. u_k`, stored first symbol first.
///
/// Positions are 1-based in the public API (`symbol_at(1)` is the first
/// symbol) so that chain indices `i, 2i, 4i, ..` can be used verbatim.
/// The empty word stands for the whole sequence space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CylinderWord {
    symbols: Vec<u8>,
}

impl CylinderWord {
    pub fn new(symbols: Vec<u8>) -> Self {
        Self { symbols }
    }

    /// Builds a word and checks every symbol is below `m`.
    pub fn with_alphabet(symbols: Vec<u8>, m: usize) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= m) {
            return Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                m,
            });
        }
        Ok(Self { symbols })
    }

    /// Parses a string of decimal digits such as `"10010110"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Domain(format!("{c:?} is not a digit symbol")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at 1-based position `pos`.
    #[inline]
    pub fn symbol_at(&self, pos: usize) -> u8 {
        self.symbols[pos - 1]
    }

    /// The prefix `u_1 .. u_n`.
    pub fn prefix(&self, n: usize) -> CylinderWord {
        Self::new(self.symbols[..n].to_vec())
    }

    /// Number of occurrences of `symbol`.
    pub fn count(&self, symbol: u8) -> usize {
        self.symbols.iter().filter(|&&s| s == symbol).count()
    }

    /// True when every adjacent pair is allowed by `a` (membership of the
    /// cylinder in the additive shift).
    pub fn is_admissible(&self, a: &TransferMatrix) -> bool {
        self.symbols.iter().all(|&s| (s as usize) < a.m())
            && self
                .symbols
                .windows(2)
                .all(|w| a.get(w[0] as usize, w[1] as usize))
    }
}

impl fmt::Display for CylinderWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Digits for m <= 10, dot-separated otherwise.
        if self.symbols.iter().all(|&s| s < 10) {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

impl From<Vec<u8>> for CylinderWord {
    fn from(symbols: Vec<u8>) -> Self {
        Self::new(symbols)
    }
}

/// Exact number of admissible words of length `k`, i.e. `<A^(k-1) 1, 1>`.
///
/// Returns 1 for `k = 0` (the empty word).
pub fn count_admissible_words(a: &TransferMatrix, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let m = a.m();
    // v[i] = number of admissible words of the current length starting at i
    let mut v = vec![BigUint::one(); m];
    for _ in 1..k {
        v = (0..m)
            .map(|i| {
                (0..m)
                    .filter(|&j| a.get(i, j))
                    .fold(BigUint::zero(), |acc, j| acc + &v[j])
            })
            .collect();
    }
    v.into_iter().sum()
}

/// All admissible words of length `k` in lexicographic order.
pub fn enumerate_admissible_words(a: &TransferMatrix, k: usize) -> Result<Vec<CylinderWord>> {
    enumerate_admissible_words_capped(a, k, DEFAULT_ENUMERATION_CAP)
}

/// As [`enumerate_admissible_words`] with an explicit cap on `m^k`.
pub fn enumerate_admissible_words_capped(
    a: &TransferMatrix,
    k: usize,
    cap: u64,
) -> Result<Vec<CylinderWord>> {
    let requested = (a.m() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::EnumerationTooLarge { requested, cap });
    }
    if k == 0 {
        return Ok(vec![CylinderWord::default()]);
    }
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(k);
    extend_admissible(a, k, &mut buf, &mut out);
    Ok(out)
}

fn extend_admissible(a: &TransferMatrix, k: usize, buf: &mut Vec<u8>, out: &mut Vec<CylinderWord>) {
    if buf.len() == k {
        out.push(CylinderWord::new(buf.clone()));
        return;
    }
    for s in 0..a.m() {
        if buf.last().is_none_or(|&prev| a.get(prev as usize, s)) {
            buf.push(s as u8);
            extend_admissible(a, k, buf, out);
            buf.pop();
        }
    }
}
