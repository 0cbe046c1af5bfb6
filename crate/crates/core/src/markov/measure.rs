use std::fmt::Write as _;

use crate::chain::{chain_decomposition, restrict_word};
use crate::error::{Error, Result};
use crate::matrix::TransferMatrix;
use crate::word::CylinderWord;

const STOCHASTIC_TOL: f64 = 1e-12;

/// Markov measure on the additive shift `Σ_A`: an initial distribution and a
/// row-stochastic transition matrix supported on the ones of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovMeasure {
    initial: Vec<f64>,
    transitions: Vec<f64>,
    support: TransferMatrix,
}

impl MarkovMeasure {
    pub fn new(
        support: TransferMatrix,
        initial: Vec<f64>,
        transitions: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let m = support.m();
        if initial.len() != m || transitions.len() != m {
            return Err(Error::InvalidMeasure(format!(
                "expected {m} initial weights and {m} transition rows"
            )));
        }
        check_distribution(&initial, "initial vector")?;
        let mut flat = Vec::with_capacity(m * m);
        for (i, row) in transitions.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidMeasure(format!(
                    "transition row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            check_distribution(row, &format!("transition row {i}"))?;
            for (j, &pij) in row.iter().enumerate() {
                if pij > 0.0 && !support.get(i, j) {
                    return Err(Error::InvalidMeasure(format!(
                        "P({i},{j}) = {pij} on a forbidden transition"
                    )));
                }
            }
            flat.extend_from_slice(row);
        }
        Ok(Self {
            initial,
            transitions: flat,
            support,
        })
    }

    /// Initial law `(p, 1-p)` and transitions `[[p, 1-p], [1, 0]]` on the
    /// golden mean shift.
    pub fn golden(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
        }
        Self::new(
            TransferMatrix::golden_mean(),
            vec![p, 1.0 - p],
            vec![vec![p, 1.0 - p], vec![1.0, 0.0]],
        )
    }

    /// Uniform initial law and uniform rows over the allowed successors.
    pub fn uniform(support: TransferMatrix) -> Self {
        let m = support.m();
        let rows = support
            .rows()
            .map(|r| {
                let d = r.iter().filter(|&&b| b).count() as f64;
                r.iter().map(|&b| if b { 1.0 / d } else { 0.0 }).collect()
            })
            .collect();
        Self::new(support, vec![1.0 / m as f64; m], rows).expect("uniform rows are stochastic")
    }

    /// I.i.d. symbols with law `q` on the full shift.
    pub fn bernoulli(q: Vec<f64>) -> Result<Self> {
        let support = TransferMatrix::full_shift(q.len())?;
        let rows = vec![q.clone(); q.len()];
        Self::new(support, q, rows)
    }

    pub fn m(&self) -> usize {
        self.support.m()
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    #[inline]
    pub fn transition(&self, i: usize, j: usize) -> f64 {
        self.transitions[i * self.m() + j]
    }

    pub fn transition_row(&self, i: usize) -> &[f64] {
        &self.transitions[i * self.m()..(i + 1) * self.m()]
    }

    pub fn support(&self) -> &TransferMatrix {
        &self.support
    }

    /// Text form: `m`, the initial vector, then `m` transition rows, all at
    /// 17 significant digits so that parsing it back is exact.
    pub fn to_text(&self) -> String {
        let fmt_row = |row: &[f64]| {
            row.iter()
                .map(|x| format!("{x:.16e}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        writeln!(out, "{}", self.m()).unwrap();
        writeln!(out, "{}", fmt_row(&self.initial)).unwrap();
        for i in 0..self.m() {
            writeln!(out, "{}", fmt_row(self.transition_row(i))).unwrap();
        }
        out
    }

    /// Parses [`MarkovMeasure::to_text`] output and validates it against `support`.
    pub fn from_text(text: &str, support: &TransferMatrix) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let parse_err = |line: usize, column: usize, message: String| Error::Parse {
            line,
            column,
            message,
        };
        let (li, head) = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, "empty measure document".into()))?;
        let m: usize = head
            .trim()
            .parse()
            .map_err(|_| parse_err(li + 1, 1, format!("expected alphabet size, found {head:?}")))?;
        if m != support.m() {
            return Err(Error::InvalidMeasure(format!(
                "measure has alphabet size {m} but matrix has {}",
                support.m()
            )));
        }
        let mut rows = Vec::with_capacity(m + 1);
        for r in 0..=m {
            let (li, line) = lines.next().ok_or_else(|| {
                parse_err(li + 2 + r, 1, format!("expected {} vector lines", m + 1))
            })?;
            let mut row = Vec::with_capacity(m);
            let mut col = 1;
            for piece in line.split(' ') {
                if !piece.is_empty() {
                    let v: f64 = piece.parse().map_err(|_| {
                        parse_err(li + 1, col, format!("{piece:?} is not a decimal number"))
                    })?;
                    row.push(v);
                }
                col += piece.len() + 1;
            }
            if row.len() != m {
                return Err(parse_err(
                    li + 1,
                    1,
                    format!("expected {m} values, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if let Some((li, _)) = lines.next() {
            return Err(parse_err(li + 1, 1, "unexpected trailing content".into()));
        }
        let initial = rows.remove(0);
        Self::new(support.clone(), initial, rows)
    }
}

fn check_distribution(v: &[f64], what: &str) -> Result<()> {
    if v.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::InvalidMeasure(format!(
            "{what} has entries outside [0, 1]"
        )));
    }
    let s: f64 = v.iter().sum();
    if (s - 1.0).abs() > STOCHASTIC_TOL * v.len() as f64 {
        return Err(Error::InvalidMeasure(format!("{what} sums to {s}, not 1")));
    }
    Ok(())
}

/// `μ[u] = initial(u_1) Π P(u_j, u_{j+1})`; zero for inadmissible `u`. The
/// empty word has measure 1.
pub fn cylinder_measure_sigma(mu: &MarkovMeasure, u: &CylinderWord) -> f64 {
    let s = u.symbols();
    if s.iter().any(|&x| x as usize >= mu.m()) {
        return 0.0;
    }
    match s.first() {
        None => 1.0,
        Some(&first) => s.windows(2).fold(mu.initial[first as usize], |acc, w| {
            acc * mu.transition(w[0] as usize, w[1] as usize)
        }),
    }
}

/// `log2 μ[u]`, `-inf` when the measure vanishes.
pub fn log2_cylinder_measure_sigma(mu: &MarkovMeasure, u: &CylinderWord) -> f64 {
    let s = u.symbols();
    if s.iter().any(|&x| x as usize >= mu.m()) {
        return f64::NEG_INFINITY;
    }
    match s.first() {
        None => 0.0,
        Some(&first) => s
            .windows(2)
            .fold(mu.initial[first as usize].log2(), |acc, w| {
                acc + mu.transition(w[0] as usize, w[1] as usize).log2()
            }),
    }
}

/// `P_μ[u]`: the product over odd `i <= n` of `μ` at the chain restrictions.
pub fn cylinder_measure_multiplicative(mu: &MarkovMeasure, u: &CylinderWord) -> f64 {
    chain_decomposition(u.len())
        .iter()
        .map(|(_, chain)| {
            cylinder_measure_sigma(mu, &restrict_word(u, chain).expect("chain within word"))
        })
        .product()
}

/// `log2 P_μ[u]`, summed over chains to avoid underflow for long words.
pub fn log2_cylinder_measure_multiplicative(mu: &MarkovMeasure, u: &CylinderWord) -> f64 {
    chain_decomposition(u.len())
        .iter()
        .map(|(_, chain)| {
            log2_cylinder_measure_sigma(mu, &restrict_word(u, chain).expect("chain within word"))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::solve_golden_p;

    fn w(s: &str) -> CylinderWord {
        CylinderWord::from_digits(s).unwrap()
    }

    /// `(1-p)^N1(u) p^(N0(u) - N1(u_1..u_{k-1}))`.
    fn closed_form(u: &CylinderWord, p: f64) -> f64 {
        let k = u.len();
        let n1 = u.count(1) as i32;
        let n0 = u.count(0) as i32;
        let n1_head = if k == 0 {
            0
        } else {
            u.prefix(k - 1).count(1) as i32
        };
        (1.0 - p).powi(n1) * p.powi(n0 - n1_head)
    }

    #[test]
    fn golden_sigma_examples() {
        let p = solve_golden_p(1e-15);
        let mu = MarkovMeasure::golden(p).unwrap();
        assert!((cylinder_measure_sigma(&mu, &w("0")) - 0.56984).abs() < 1e-5);
        assert_eq!(cylinder_measure_sigma(&mu, &w("10")), 1.0 - p);
        let direct = cylinder_measure_sigma(&mu, &w("010"));
        assert!((direct - p * (1.0 - p)).abs() < 1e-16);
        assert!((direct - closed_form(&w("010"), p)).abs() < 1e-16);
        assert_eq!(cylinder_measure_sigma(&mu, &w("11")), 0.0);
    }

    #[test]
    fn closed_form_holds_for_all_words_to_16() {
        let g = TransferMatrix::golden_mean();
        for p in [0.3, 0.5, solve_golden_p(1e-15)] {
            let mu = MarkovMeasure::golden(p).unwrap();
            for k in 1..=16 {
                for u in crate::word::enumerate_admissible_words(&g, k).unwrap() {
                    let direct = cylinder_measure_sigma(&mu, &u);
                    let closed = closed_form(&u, p);
                    assert!((direct - closed).abs() <= 1e-15 * closed.max(1e-300) + 1e-300);
                }
            }
        }
    }

    #[test]
    fn multiplicative_examples() {
        let p = solve_golden_p(1e-15);
        let mu = MarkovMeasure::golden(p).unwrap();
        assert!((cylinder_measure_multiplicative(&mu, &w("00")) - p * p).abs() < 1e-16);
        assert!((cylinder_measure_multiplicative(&mu, &w("000")) - p.powi(3)).abs() < 1e-16);
        assert_eq!(cylinder_measure_multiplicative(&mu, &w("11")), 0.0);
        assert_eq!(
            log2_cylinder_measure_multiplicative(&mu, &w("11")),
            f64::NEG_INFINITY
        );
        let u = w("10010010");
        let lin = cylinder_measure_multiplicative(&mu, &u);
        assert!((lin.log2() - log2_cylinder_measure_multiplicative(&mu, &u)).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_measures() {
        let g = TransferMatrix::golden_mean();
        // Mass on the forbidden 1 -> 1.
        assert!(MarkovMeasure::new(
            g.clone(),
            vec![0.5, 0.5],
            vec![vec![0.5, 0.5], vec![0.5, 0.5]]
        )
        .is_err());
        assert!(MarkovMeasure::new(
            g.clone(),
            vec![0.6, 0.6],
            vec![vec![0.5, 0.5], vec![1.0, 0.0]]
        )
        .is_err());
        assert!(MarkovMeasure::new(g, vec![1.0], vec![vec![1.0]]).is_err());
        assert!(MarkovMeasure::golden(0.0).is_err());
        assert!(MarkovMeasure::golden(1.0).is_err());
    }

    #[test]
    fn forced_rows_are_deterministic() {
        let mu = MarkovMeasure::uniform(TransferMatrix::golden_mean());
        assert_eq!(mu.transition_row(1), &[1.0, 0.0]);
        assert_eq!(mu.transition_row(0), &[0.5, 0.5]);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let p = solve_golden_p(1e-15);
        let mu = MarkovMeasure::golden(p).unwrap();
        let text = mu.to_text();
        let back = MarkovMeasure::from_text(&text, mu.support()).unwrap();
        assert_eq!(back, mu);
        assert!(matches!(
            MarkovMeasure::from_text("2\n0.5 0.5\n0.5 x\n1 0\n", mu.support()),
            Err(Error::Parse {
                line: 3,
                column: 5,
                ..
            })
        ));
    }
}
