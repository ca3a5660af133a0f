//! Quantum integers, factorials and Gaussian binomials in `Z[v, v^-1]`.

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// The closed family of quantum numbers used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantumValue {
    /// `[[n]] = 1 + v^2 + ... + v^(2n-2)`.
    DoubleBracket(i64),
    /// `[n] = (v^n - v^-n) / (v - v^-1)`.
    Bracket(i64),
    /// `[n]! = [1][2]...[n]`.
    Factorial(i64),
    /// Gaussian binomial `[s over t]`.
    Binomial { s: i64, t: i64 },
    /// Gaussian binomial evaluated at `v^2`.
    BinomialVSquared { s: i64, t: i64 },
}

impl QuantumValue {
    pub fn eval(self) -> Result<LaurentPoly> {
        match self {
            QuantumValue::DoubleBracket(n) => Ok(double_bracket(n)),
            QuantumValue::Bracket(n) => Ok(bracket(n)),
            QuantumValue::Factorial(n) => factorial(n),
            QuantumValue::Binomial { s, t } => binomial(s, t),
            QuantumValue::BinomialVSquared { s, t } => Ok(binomial(s, t)?.substitute_power(2)),
        }
    }
}

/// `[[n]] = (v^(2n) - 1) / (v^2 - 1)`; negative `n` uses the same quotient.
pub fn double_bracket(n: i64) -> LaurentPoly {
    if n >= 0 {
        LaurentPoly::from_terms((0..n).map(|k| (2 * k, 1)))
    } else {
        // (v^(2n) - 1)/(v^2 - 1) = -(v^-2 + ... + v^(2n))
        LaurentPoly::from_terms((n..0).map(|k| (2 * k, -1)))
    }
}

/// `[n] = v^(n-1) + v^(n-3) + ... + v^(1-n)`, with `[-n] = -[n]`.
pub fn bracket(n: i64) -> LaurentPoly {
    if n < 0 {
        return -&bracket(-n);
    }
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1)))
}

pub fn factorial(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::Domain(format!("quantum factorial of negative integer {n}")));
    }
    Ok((1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &bracket(k)))
}

/// `[s over t] = prod_{i=1}^t [s-i+1] / [i]` for any integer `s`; `t = 0` gives 1.
pub fn binomial(s: i64, t: i64) -> Result<LaurentPoly> {
    if t < 0 {
        return Err(Error::Domain(format!("Gaussian binomial with negative lower index {t}")));
    }
    let mut num = LaurentPoly::one();
    for i in 1..=t {
        num = &num * &bracket(s - i + 1);
    }
    let den = factorial(t)?;
    num.div_exact(&den).ok_or_else(|| Error::Internal(format!("[{s} over {t}] is not a Laurent polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn small_values() {
        assert_eq!(double_bracket(3), lp(&[(0, 1), (2, 1), (4, 1)]));
        assert_eq!(double_bracket(3), bracket(3).shift(2));
        assert_eq!(factorial(2).unwrap(), lp(&[(1, 1), (-1, 1)]));
        assert!(double_bracket(0).is_zero());
        assert!(bracket(0).is_zero());
        assert!(factorial(0).unwrap().is_one());
        assert!(matches!(factorial(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn four_choose_two() {
        let expected = lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]);
        assert_eq!(binomial(4, 2).unwrap(), expected);
    }

    #[test]
    fn negative_arguments_match_quotient_definition() {
        // (v^(2n) - 1) == [[n]] (v^2 - 1)
        let v2m1 = lp(&[(2, 1), (0, -1)]);
        for n in -4..=4 {
            let lhs = &LaurentPoly::v_pow(2 * n) - &LaurentPoly::one();
            assert_eq!(lhs, &double_bracket(n) * &v2m1, "n = {n}");
        }
        // [-1 over 2] = [-1][-2]/[2]! = [1][2]/[2] = 1
        assert!(binomial(-1, 2).unwrap().is_one());
    }
}
