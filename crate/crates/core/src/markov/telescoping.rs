//! Dyadic-scale local dimensions of the optimal golden measure and their
//! telescoping average.
//!
//! With `a_j = -2^(-j) log2 P_μ[u_1^(2^j)]` and `p^3 = (1-p)^2`,
//! `(a_1 + .. + a_l) / l = -log2 p · (1 + [N_1(u)/2^l - N_1(u_1)] / (2l))`.

use super::measure::{log2_cylinder_measure_multiplicative, MarkovMeasure};
use crate::chain::is_multiplicatively_admissible;
use crate::error::{Error, Result};
use crate::matrix::TransferMatrix;
use crate::word::CylinderWord;

/// Allowed gap between the direct average and the identity.
pub const IDENTITY_TOL: f64 = 1e-12;

fn check_word(u: &CylinderWord, p: f64) -> Result<usize> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
    }
    let n = u.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(n));
    }
    if !is_multiplicatively_admissible(&TransferMatrix::golden_mean(), u) {
        return Err(Error::NotAdmissible);
    }
    Ok(n.trailing_zeros() as usize)
}

/// `a_1, .., a_l` evaluated directly from the golden measure with parameter `p`.
pub fn dyadic_local_dims(u: &CylinderWord, p: f64) -> Result<Vec<f64>> {
    let levels = check_word(u, p)?;
    let mu = MarkovMeasure::golden(p)?;
    Ok((1..=levels)
        .map(|j| {
            let n = 1usize << j;
            -log2_cylinder_measure_multiplicative(&mu, &u.prefix(n)) / n as f64
        })
        .collect())
}

/// Right-hand side of the telescoping identity.
pub fn telescoping_identity(u: &CylinderWord, p: f64) -> Result<f64> {
    let levels = check_word(u, p)? as f64;
    let n1_all = u.count(1) as f64 / u.len() as f64;
    let n1_first = u.prefix(1).count(1) as f64;
    Ok(-p.log2() * (1.0 + (n1_all - n1_first) / (2.0 * levels)))
}

/// `(a_1 + .. + a_l) / l`, checked against the identity. The identity only
/// holds at the root of `p^3 = (1-p)^2`; elsewhere this reports
/// [`Error::IdentityViolated`].
pub fn telescoping_average(u: &CylinderWord, p: f64) -> Result<f64> {
    let dims = dyadic_local_dims(u, p)?;
    let direct = dims.iter().sum::<f64>() / dims.len() as f64;
    let identity = telescoping_identity(u, p)?;
    if (direct - identity).abs() > IDENTITY_TOL {
        return Err(Error::IdentityViolated { direct, identity });
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::solve_golden_p;
    use crate::markov::sample::sample_sequence;

    fn zeros_with_leading_one(n: usize) -> CylinderWord {
        let mut s = vec![0u8; n];
        s[0] = 1;
        CylinderWord::new(s)
    }

    #[test]
    fn all_zero_word_averages_to_minus_log_p() {
        let p = solve_golden_p(1e-15);
        for l in 1..=10 {
            let u = CylinderWord::new(vec![0; 1 << l]);
            let avg = telescoping_average(&u, p).unwrap();
            assert!((avg + p.log2()).abs() < 1e-13);
        }
    }

    #[test]
    fn single_leading_one() {
        let p = solve_golden_p(1e-15);
        for l in 1..=10usize {
            let u = zeros_with_leading_one(1 << l);
            let lf = l as f64;
            let expected = -p.log2() * (1.0 + (0.5f64.powi(l as i32) - 1.0) / (2.0 * lf));
            assert!((telescoping_average(&u, p).unwrap() - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn random_words_satisfy_identity() {
        let p = solve_golden_p(1e-15);
        let mu = MarkovMeasure::golden(0.35).unwrap();
        for seed in 0..50 {
            let u = sample_sequence(&mu, 1 << 10, seed);
            let direct = dyadic_local_dims(&u, p).unwrap();
            let avg = direct.iter().sum::<f64>() / 10.0;
            assert!((avg - telescoping_identity(&u, p).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn error_paths() {
        let p = solve_golden_p(1e-15);
        assert_eq!(
            telescoping_average(&CylinderWord::new(vec![0; 6]), p),
            Err(Error::LengthNotPowerOfTwo(6))
        );
        assert_eq!(
            telescoping_average(&CylinderWord::new(vec![1, 1, 0, 0]), p),
            Err(Error::NotAdmissible)
        );
        // Off the root the identity does not hold.
        assert!(matches!(
            telescoping_average(&zeros_with_leading_one(8), 0.3),
            Err(Error::IdentityViolated { .. })
        ));
    }
}
