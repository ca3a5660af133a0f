use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Lambda(n+1, r)`: `n+1` nonnegative parts summing to `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<i64>,
}

impl Composition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Malformed("composition needs at least one part".into()));
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::Malformed(format!("negative part in {parts:?}")));
        }
        Ok(Self { parts })
    }

    /// Rank `n`, i.e. one less than the number of parts.
    pub fn n(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn r(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// 1-based part.
    pub fn part(&self, i: usize) -> i64 {
        self.parts[i - 1]
    }

    /// `(l_1, ..., l_n, 2 l_{n+1} + 1, l_n, ..., l_1)`.
    pub fn tilde(&self) -> Vec<i64> {
        let n = self.n();
        let mut out = Vec::with_capacity(2 * n + 1);
        out.extend_from_slice(&self.parts[..n]);
        out.push(2 * self.parts[n] + 1);
        out.extend(self.parts[..n].iter().rev());
        out
    }

    /// Inverse of [`Composition::tilde`]; `None` unless `v` is palindromic of
    /// odd length with odd nonnegative middle and nonnegative entries.
    pub fn from_tilde(v: &[i64]) -> Option<Self> {
        if v.len().is_multiple_of(2) {
            return None;
        }
        let n = v.len() / 2;
        if (0..n).any(|i| v[i] != v[v.len() - 1 - i]) || v.iter().any(|&x| x < 0) {
            return None;
        }
        let mid = v[n];
        if mid % 2 != 1 {
            return None;
        }
        let mut parts = v[..n].to_vec();
        parts.push((mid - 1) / 2);
        Some(Self { parts })
    }

    /// All of `Lambda(n+1, r)` in lexicographic order; empty for `r < 0`.
    pub fn all(n: usize, r: i64) -> Vec<Self> {
        weak_compositions(r, n + 1).into_iter().map(|parts| Self { parts }).collect()
    }
}

/// All weak compositions of `total` into `k` parts, lexicographically ordered.
pub fn weak_compositions(total: i64, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if total < 0 || k == 0 {
        if total == 0 && k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    fn rec(rest: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == k {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=rest {
            cur.push(x);
            rec(rest - x, k, cur, out);
            cur.pop();
        }
    }
    rec(total, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tilde_examples() {
        assert_eq!(Composition::new(vec![1, 0]).unwrap().tilde(), vec![1, 1, 1]);
        assert_eq!(Composition::new(vec![0, 1, 1]).unwrap().tilde(), vec![0, 1, 3, 1, 0]);
    }

    #[test]
    fn tilde_round_trip() {
        let all = Composition::all(1, 3);
        assert_eq!(all.len(), 4);
        for l in all {
            assert_eq!(Composition::from_tilde(&l.tilde()), Some(l));
        }
        assert_eq!(Composition::from_tilde(&[1, 2, 1]), None);
        assert_eq!(Composition::from_tilde(&[1, 1, 2]), None);
    }

    #[test]
    fn counts() {
        assert_eq!(weak_compositions(3, 3).len(), 10);
        assert_eq!(weak_compositions(-1, 3).len(), 0);
        assert_eq!(weak_compositions(0, 0).len(), 1);
    }
}
