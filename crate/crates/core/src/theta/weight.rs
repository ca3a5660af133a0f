use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::composition::Composition;
use crate::error::{Error, Result};

/// A weight `j` in `Z^(2n+1)`, stored through its reduced form
/// `(j_1 + j_N, ..., j_n + j_{n+2}, j_{n+1})`. Pairings against
/// centro-symmetric vectors only see the reduced form, so two raw vectors with
/// the same reduced form index the same basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedWeight {
    reduced: Vec<i64>,
}

impl SignedWeight {
    pub fn zero(n: usize) -> Self {
        Self { reduced: vec![0; n + 1] }
    }

    pub fn from_reduced(reduced: Vec<i64>) -> Result<Self> {
        if reduced.is_empty() {
            return Err(Error::Malformed("reduced weight needs at least one entry".into()));
        }
        Ok(Self { reduced })
    }

    pub fn from_raw(raw: &[i64]) -> Result<Self> {
        if raw.len().is_multiple_of(2) {
            return Err(Error::Malformed(format!("weight of even length {}", raw.len())));
        }
        let n = raw.len() / 2;
        let mut reduced: Vec<i64> = (0..n).map(|i| raw[i] + raw[raw.len() - 1 - i]).collect();
        reduced.push(raw[n]);
        Ok(Self { reduced })
    }

    /// The raw representative supported on the first `n+1` coordinates.
    pub fn raw(&self) -> Vec<i64> {
        let mut raw = self.reduced.clone();
        raw.resize(2 * self.n() + 1, 0);
        raw
    }

    pub fn n(&self) -> usize {
        self.reduced.len() - 1
    }

    pub fn reduced(&self) -> &[i64] {
        &self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.reduced.iter().all(|&x| x == 0)
    }

    /// The standard basis vector `e_i`, `1 <= i <= 2n+1`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.reduced[reduced_index(n, i)] += 1;
        w
    }

    /// `alpha_h = e_h - e_{h+1}`.
    pub fn alpha(n: usize, h: usize) -> Self {
        &Self::unit(n, h) - &Self::unit(n, h + 1)
    }

    /// `alpha_h^- = -e_h - e_{h+1}`.
    pub fn alpha_minus(n: usize, h: usize) -> Self {
        -&(&Self::unit(n, h) + &Self::unit(n, h + 1))
    }

    /// `c . j` for a centro-symmetric `c` of length `2n+1`.
    pub fn dot_centro(&self, c: &[i64]) -> i64 {
        let n = self.n();
        debug_assert_eq!(c.len(), 2 * n + 1);
        debug_assert!((0..c.len()).all(|i| c[i] == c[c.len() - 1 - i]));
        (0..=n).map(|i| c[i] * self.reduced[i]).sum()
    }

    /// `tilde(l) . j`.
    pub fn dot_tilde(&self, l: &Composition) -> i64 {
        let n = self.n();
        (0..n).map(|i| l.parts()[i] * self.reduced[i]).sum::<i64>() + (2 * l.parts()[n] + 1) * self.reduced[n]
    }

    /// `j_h + j_{N+1-h}`, 1-based `h`.
    pub fn pair_sum(&self, h: usize) -> i64 {
        let n = self.n();
        if h == n + 1 {
            2 * self.reduced[n]
        } else {
            self.reduced[reduced_index(n, h)]
        }
    }
}

fn reduced_index(n: usize, i: usize) -> usize {
    assert!((1..=2 * n + 1).contains(&i), "index {i} out of range for n = {n}");
    if i <= n + 1 {
        i - 1
    } else {
        2 * n + 1 - i
    }
}

impl Add<&SignedWeight> for &SignedWeight {
    type Output = SignedWeight;
    fn add(self, rhs: &SignedWeight) -> SignedWeight {
        assert_eq!(self.n(), rhs.n());
        SignedWeight { reduced: self.reduced.iter().zip(&rhs.reduced).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&SignedWeight> for &SignedWeight {
    type Output = SignedWeight;
    fn sub(self, rhs: &SignedWeight) -> SignedWeight {
        self + &(-rhs)
    }
}

impl Neg for &SignedWeight {
    type Output = SignedWeight;
    fn neg(self) -> SignedWeight {
        SignedWeight { reduced: self.reduced.iter().map(|a| -a).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirrored_units_coincide() {
        for i in 1..=5 {
            assert_eq!(SignedWeight::unit(2, i), SignedWeight::unit(2, 6 - i));
        }
    }

    #[test]
    fn pairing_matches_raw_dot() {
        let raw = [3, -1, 4, 1, -5];
        let w = SignedWeight::from_raw(&raw).unwrap();
        for l in Composition::all(2, 3) {
            let t = l.tilde();
            let direct: i64 = t.iter().zip(raw).map(|(a, b)| a * b).sum();
            assert_eq!(w.dot_tilde(&l), direct);
            assert_eq!(w.dot_centro(&t), direct);
        }
        assert_eq!(w.pair_sum(1), -2);
        assert_eq!(w.pair_sum(3), 8);
    }
}
