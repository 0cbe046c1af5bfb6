//! The 0-1 transfer matrix that defines which symbol pairs are allowed.
//!
//! Text format (shared with the CLI): the alphabet size `m` on the first
//! line, followed by `m` lines of `m` space-separated `0`/`1` entries.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A square 0-1 matrix `A` over the alphabet `{0, .., m-1}`.
///
/// `A(i, j) = 1` means symbol `j` may follow symbol `i`. For multiplicative
/// shifts "follow" means "sits at index `2k` when `i` sits at index `k`".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransferMatrix {
    m: usize,
    entries: Vec<bool>,
    primitivity_power: Option<usize>,
}

impl TransferMatrix {
    /// Builds a matrix from rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        if m < 2 {
            return Err(Error::MalformedMatrix(format!(
                "alphabet size must be at least 2, got {m}"
            )));
        }
        let mut entries = Vec::with_capacity(m * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::MalformedMatrix(format!(
                    "row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => entries.push(false),
                    1 => entries.push(true),
                    _ => {
                        return Err(Error::MalformedMatrix(format!(
                            "entry ({i}, {j}) = {v} is not 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(Self {
            m,
            entries,
            primitivity_power: None,
        })
    }

    /// `[[1,1],[1,0]]`: the golden mean matrix forbidding `11`.
    pub fn golden_mean() -> Self {
        Self::from_rows(&[[1u8, 1], [1, 0]]).expect("static matrix")
    }

    /// The all-ones matrix on `m` symbols.
    pub fn full_shift(m: usize) -> Result<Self> {
        Self::from_rows(&vec![vec![1u8; m]; m])
    }

    /// Alphabet size.
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.entries[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        self.entries.chunks(self.m)
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows()
            .map(|r| r.iter().filter(|&&b| b).count())
            .collect()
    }

    pub fn max_row_sum(&self) -> usize {
        self.row_sums().into_iter().max().unwrap_or(0)
    }

    /// `Some(r)` when every row has exactly `r` ones.
    pub fn common_row_sum(&self) -> Option<usize> {
        let sums = self.row_sums();
        let first = sums[0];
        sums.iter().all(|&s| s == first).then_some(first)
    }

    /// Exact match with `[[1,1],[1,0]]`.
    pub fn is_golden_mean(&self) -> bool {
        self.m == 2 && self.entries == [true, true, true, false]
    }

    pub fn primitivity_power(&self) -> Option<usize> {
        self.primitivity_power
    }

    /// Wielandt's bound `(m-1)^2 + 1` on the primitivity exponent.
    pub fn wielandt_cap(&self) -> usize {
        (self.m - 1) * (self.m - 1) + 1
    }

    /// Finds the smallest `r <= cap` with `A^r` entrywise positive and stores
    /// it on the matrix.
    pub fn validate_primitive(&mut self, cap: usize) -> Result<usize> {
        if cap == 0 {
            return Err(Error::Domain("primitivity cap must be at least 1".into()));
        }
        let m = self.m;
        let mut power = self.entries.clone();
        for r in 1..=cap {
            if power.iter().all(|&b| b) {
                self.primitivity_power = Some(r);
                return Ok(r);
            }
            if r == cap {
                break;
            }
            let mut next = vec![false; m * m];
            for i in 0..m {
                for k in 0..m {
                    if power[i * m + k] {
                        for j in 0..m {
                            if self.get(k, j) {
                                next[i * m + j] = true;
                            }
                        }
                    }
                }
            }
            power = next;
        }
        Err(Error::NotPrimitiveWithinCap { cap })
    }

    /// Validates primitivity against the Wielandt cap, consuming the matrix.
    pub fn into_primitive(mut self) -> Result<Self> {
        let cap = self.wielandt_cap();
        self.validate_primitive(cap)?;
        Ok(self)
    }

    /// Primitivity check that does not need a mutable matrix.
    pub fn is_primitive(&self) -> bool {
        self.primitivity_power.is_some() || self.clone().into_primitive().is_ok()
    }

    pub(crate) fn ensure_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitiveWithinCap {
                cap: self.wielandt_cap(),
            })
        }
    }

    /// Parses the text format and validates primitivity eagerly. A
    /// non-primitive but well-formed matrix is returned as an error.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        text.parse::<Self>()?.into_primitive()
    }
}

impl FromStr for TransferMatrix {
    type Err = Error;

    /// Parses the text format without checking primitivity.
    fn from_str(s: &str) -> Result<Self> {
        // Non-blank lines, each as a list of (1-based column, token).
        let lines: Vec<(usize, Vec<(usize, &str)>)> = s
            .lines()
            .enumerate()
            .map(|(li, line)| {
                let mut toks = Vec::new();
                let mut col = 0;
                for piece in line.split(char::is_whitespace) {
                    if !piece.is_empty() {
                        toks.push((col + 1, piece));
                    }
                    col += piece.chars().count() + 1;
                }
                (li + 1, toks)
            })
            .filter(|(_, toks)| !toks.is_empty())
            .collect();
        let mut it = lines.into_iter();
        let (line, head) = it.next().ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "empty matrix document".into(),
        })?;
        let (column, tok) = head[0];
        let m: usize = tok.parse().map_err(|_| Error::Parse {
            line,
            column,
            message: format!("expected alphabet size, found {tok:?}"),
        })?;
        if let Some(&(column, tok)) = head.get(1) {
            return Err(Error::Parse {
                line,
                column,
                message: format!("unexpected token {tok:?} after alphabet size"),
            });
        }
        if m < 2 {
            return Err(Error::Parse {
                line,
                column,
                message: format!("alphabet size must be at least 2, got {m}"),
            });
        }
        let mut rows = Vec::with_capacity(m);
        let mut last_line = line;
        for i in 0..m {
            let (line, toks) = it.next().ok_or(Error::Parse {
                line: last_line + 1,
                column: 1,
                message: format!("expected {m} rows, found {i}"),
            })?;
            last_line = line;
            let mut row = Vec::with_capacity(m);
            for &(column, tok) in &toks {
                let v = match tok {
                    "0" => 0u8,
                    "1" => 1u8,
                    other => {
                        return Err(Error::Parse {
                            line,
                            column,
                            message: format!("entry {other:?} is not 0 or 1"),
                        })
                    }
                };
                row.push(v);
            }
            if row.len() != m {
                return Err(Error::Parse {
                    line,
                    column: toks.get(m).map_or(1, |t| t.0),
                    message: format!("row {i} has {} entries, expected {m}", row.len()),
                });
            }
            rows.push(row);
        }
        if let Some((line, toks)) = it.next() {
            return Err(Error::Parse {
                line,
                column: toks[0].0,
                message: format!("unexpected trailing token {:?}", toks[0].1),
            });
        }
        Self::from_rows(&rows)
    }
}

impl fmt::Display for TransferMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.m)?;
        for row in self.rows() {
            let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
