use std::fmt;

use serde::{Deserialize, Serialize};

use super::composition::{weak_compositions, Composition};
use crate::error::{Error, Result};

/// A centro-symmetric `(2n+1) x (2n+1)` matrix over `N`:
/// `a_{i,j} = a_{N+1-i, N+1-j}`. Indices in the public API are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMatrix {
    n: usize,
    entries: Vec<i64>,
}

/// Outcome of comparing two matrices in the corner-sum preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreorderRelation {
    /// `A <= B` and `B <= A`.
    Equivalent,
    /// `A < B`.
    Less,
    /// `B < A`.
    Greater,
    Incomparable,
}

#[derive(Serialize, Deserialize)]
struct ThetaMatrixRepr {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl Serialize for ThetaMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ThetaMatrixRepr { n: self.n, entries: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ThetaMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ThetaMatrixRepr::deserialize(d)?;
        ThetaMatrix::new(r.n, r.entries).map_err(serde::de::Error::custom)
    }
}

impl ThetaMatrix {
    pub fn new(n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        let size = 2 * n + 1;
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(Error::Malformed(format!("expected a {size}x{size} matrix")));
        }
        Self::from_flat(n, rows.into_iter().flatten().collect())
    }

    pub fn from_flat(n: usize, entries: Vec<i64>) -> Result<Self> {
        let size = 2 * n + 1;
        if entries.len() != size * size {
            return Err(Error::Malformed(format!("expected {} entries", size * size)));
        }
        if entries.iter().any(|&x| x < 0) {
            return Err(Error::Malformed("negative matrix entry".into()));
        }
        let m = Self { n, entries };
        if !m.is_centro_symmetric() {
            return Err(Error::NotCentroSymmetric);
        }
        Ok(m)
    }

    pub fn zero(n: usize) -> Self {
        let size = 2 * n + 1;
        Self { n, entries: vec![0; size * size] }
    }

    /// `diag(d)` for a palindromic nonnegative `d` of length `2n+1`.
    pub fn diag(d: &[i64]) -> Result<Self> {
        if d.len().is_multiple_of(2) {
            return Err(Error::Malformed("diagonal of even length".into()));
        }
        let n = d.len() / 2;
        let mut m = Self::zero(n);
        for (i, &x) in d.iter().enumerate() {
            m.entries[i * (2 * n + 1) + i] = x;
        }
        if m.entries.iter().any(|&x| x < 0) {
            return Err(Error::Malformed("negative diagonal entry".into()));
        }
        if !m.is_centro_symmetric() {
            return Err(Error::NotCentroSymmetric);
        }
        Ok(m)
    }

    /// `diag(tilde(l))`.
    pub fn from_composition(l: &Composition) -> Self {
        Self::diag(&l.tilde()).expect("tilde vectors are palindromic")
    }

    /// `E^theta_{i,j} = E_{i,j} + E_{N+1-i,N+1-j}`.
    pub fn e_theta(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        let size = m.size();
        m.entries[(i - 1) * size + (j - 1)] += 1;
        m.entries[(size - i) * size + (size - j)] += 1;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = 2n + 1`.
    pub fn size(&self) -> usize {
        2 * self.n + 1
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[(i - 1) * self.size() + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.size()).map(<[i64]>::to_vec).collect()
    }

    pub fn flat(&self) -> &[i64] {
        &self.entries
    }

    fn is_centro_symmetric(&self) -> bool {
        let len = self.entries.len();
        (0..len).all(|k| self.entries[k] == self.entries[len - 1 - k])
    }

    /// `|A|`.
    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn ro(&self) -> Vec<i64> {
        self.rows().iter().map(|r| r.iter().sum()).collect()
    }

    pub fn co(&self) -> Vec<i64> {
        let s = self.size();
        (0..s).map(|j| (0..s).map(|i| self.entries[i * s + j]).sum()).collect()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        let s = self.size();
        (0..s).map(|i| self.entries[i * s + i]).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let s = self.size();
        (0..s).all(|i| (0..s).all(|j| i == j || self.entries[i * s + j] == 0))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.diagonal().iter().all(|&x| x == 0)
    }

    /// `A` with its diagonal removed.
    pub fn off_diagonal(&self) -> Self {
        let mut m = self.clone();
        let s = self.size();
        for i in 0..s {
            m.entries[i * s + i] = 0;
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        Self { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, m: i64) -> Self {
        assert!(m >= 0);
        Self { n: self.n, entries: self.entries.iter().map(|a| a * m).collect() }
    }

    /// `self + plus - minus`, or `None` if an entry would go negative.
    pub fn checked_add_sub(&self, plus: &Self, minus: &Self) -> Option<Self> {
        let entries: Vec<i64> =
            (0..self.entries.len()).map(|k| self.entries[k] + plus.entries[k] - minus.entries[k]).collect();
        entries.iter().all(|&x| x >= 0).then_some(Self { n: self.n, entries })
    }

    /// `A + diag(d)` for a palindromic `d` with `A + diag(d)` nonnegative.
    pub fn checked_add_diag(&self, d: &[i64]) -> Option<Self> {
        let s = self.size();
        let mut m = self.clone();
        for (i, &x) in d.iter().enumerate() {
            m.entries[i * s + i] += x;
            if m.entries[i * s + i] < 0 {
                return None;
            }
        }
        Some(m)
    }

    /// `d(A) - r(A) = (sum_{i>=k, j<l} a_ij a_kl - sum_{j<n+1<=i} a_ij) / 2`.
    pub fn dr_exponent(&self) -> Result<i64> {
        let s = self.size();
        // upper_right[i][j] = sum of a_kl over k <= i, l > j (0-based)
        let mut upper_right = vec![0i64; s * s];
        for i in 0..s {
            let mut row_tail = 0;
            for j in (0..s).rev() {
                let above = if i > 0 { upper_right[(i - 1) * s + j] } else { 0 };
                upper_right[i * s + j] = above + row_tail;
                row_tail += self.entries[i * s + j];
            }
        }
        let mut quad = 0i64;
        for i in 0..s {
            for j in 0..s {
                let a = self.entries[i * s + j];
                if a != 0 {
                    quad += a * upper_right[i * s + j];
                }
            }
        }
        let mid = self.n;
        let lin: i64 = (mid..s).flat_map(|i| (0..mid).map(move |j| self.entries[i * s + j])).sum();
        let total = quad - lin;
        if total % 2 != 0 {
            return Err(Error::Malformed("odd orbit-dimension sum".into()));
        }
        Ok(total / 2)
    }

    /// `beta_p(A, h)` for `1 <= h <= n`.
    pub fn beta(&self, h: usize, p: usize) -> i64 {
        let s = self.size();
        let first: i64 = (p..=s).map(|j| self.get(h, j)).sum();
        let second: i64 = (p + 1..=s).map(|j| self.get(h + 1, j)).sum();
        let corr = i64::from(h == self.n && p <= self.n);
        first - second + corr
    }

    /// `beta'_p(A, h)` for `1 <= h <= n`.
    pub fn beta_prime(&self, h: usize, p: usize) -> i64 {
        let first: i64 = (1..=p).map(|j| self.get(h + 1, j)).sum();
        let second: i64 = (1..p).map(|j| self.get(h, j)).sum();
        first - second
    }

    /// Corner sums `sum_{r<=i, s>=j} a_rs` for all `i < j`, row-major in `(i, j)`.
    fn corner_sums(&self) -> Vec<i64> {
        let s = self.size();
        let mut out = Vec::with_capacity(s * (s - 1) / 2);
        for i in 1..=s {
            for j in (i + 1)..=s {
                let mut acc = 0;
                for r in 1..=i {
                    for c in j..=s {
                        acc += self.get(r, c);
                    }
                }
                out.push(acc);
            }
        }
        out
    }

    /// `self <= other` in the corner-sum preorder.
    pub fn preceq(&self, other: &Self) -> bool {
        self.corner_sums().iter().zip(other.corner_sums()).all(|(a, b)| *a <= b)
    }

    /// `self < other`: `self <= other` and not `other <= self`.
    pub fn prec(&self, other: &Self) -> bool {
        self.compare_preorder(other) == PreorderRelation::Less
    }

    pub fn compare_preorder(&self, other: &Self) -> PreorderRelation {
        let a = self.corner_sums();
        let b = other.corner_sums();
        let le = a.iter().zip(&b).all(|(x, y)| x <= y);
        let ge = a.iter().zip(&b).all(|(x, y)| x >= y);
        match (le, ge) {
            (true, true) => PreorderRelation::Equivalent,
            (true, false) => PreorderRelation::Less,
            (false, true) => PreorderRelation::Greater,
            (false, false) => PreorderRelation::Incomparable,
        }
    }

    /// `||A|| = sum_{i<j} (j-i)(j-i+1)/2 (a_ij + a_ji)`.
    pub fn norm(&self) -> i64 {
        let s = self.size();
        let mut acc = 0;
        for i in 1..=s {
            for j in (i + 1)..=s {
                let d = (j - i) as i64;
                acc += d * (d + 1) / 2 * (self.get(i, j) + self.get(j, i));
            }
        }
        acc
    }

    /// Embedding into rank `r > n`: the middle row and column go to the
    /// middle, the outer `n` rows and columns keep their corner positions.
    pub fn embed_circ(&self, r: usize) -> Result<Self> {
        if self.n >= r {
            return Err(Error::Misuse(format!("embedding needs n < r, got n = {}, r = {r}", self.n)));
        }
        let shift = 2 * (r - self.n);
        let map = |i: usize| -> usize {
            if i <= self.n {
                i
            } else if i == self.n + 1 {
                r + 1
            } else {
                i + shift
            }
        };
        let mut out = Self::zero(r);
        let big = out.size();
        for i in 1..=self.size() {
            for j in 1..=self.size() {
                out.entries[(map(i) - 1) * big + (map(j) - 1)] = self.get(i, j);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for ThetaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl fmt::Display for ThetaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// All of `Xi_{2n+1, 2r+1}`, sorted.
pub fn enumerate_xi(n: usize, r: i64) -> Vec<ThetaMatrix> {
    let size = 2 * n + 1;
    let half = (size * size - 1) / 2;
    // Entries at flat positions k < half are free; the centre holds 2c + 1.
    let mut out: Vec<ThetaMatrix> = weak_compositions(r, half + 1)
        .into_iter()
        .map(|dist| {
            let mut entries = vec![0; size * size];
            for k in 0..half {
                entries[k] = dist[k];
                entries[size * size - 1 - k] = dist[k];
            }
            entries[half] = 2 * dist[half] + 1;
            ThetaMatrix { n, entries }
        })
        .collect();
    out.sort();
    out
}

/// Zero-diagonal centro-symmetric matrices with `|A| <= max_sum`, sorted.
pub fn enumerate_zero_diag(n: usize, max_sum: i64) -> Vec<ThetaMatrix> {
    let size = 2 * n + 1;
    let half = (size * size - 1) / 2;
    let free: Vec<usize> = (0..half).filter(|&k| k / size != k % size).collect();
    let mut out = Vec::new();
    for s in 0..=max_sum / 2 {
        for dist in weak_compositions(s, free.len()) {
            let mut entries = vec![0; size * size];
            for (&k, &x) in free.iter().zip(&dist) {
                entries[k] = x;
                entries[size * size - 1 - k] = x;
            }
            out.push(ThetaMatrix { n, entries });
        }
    }
    out.sort();
    out
}

/// The triples `(i, h, j)` with `1 <= j <= h < i <= 2n+1`, ordered by `i`,
/// then `j`, then decreasing `h`.
pub fn triple_order(n: usize) -> Vec<(usize, usize, usize)> {
    let size = 2 * n + 1;
    let mut out = Vec::new();
    for i in 2..=size {
        for j in 1..i {
            for h in (j..i).rev() {
                out.push((i, h, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, rows: &[&[i64]]) -> ThetaMatrix {
        ThetaMatrix::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rejects_asymmetric() {
        let r = ThetaMatrix::new(1, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]);
        assert_eq!(r, Err(Error::NotCentroSymmetric));
    }

    #[test]
    fn row_and_column_sums() {
        let a = ThetaMatrix::e_theta(1, 1, 2).add(&ThetaMatrix::diag(&[0, 1, 0]).unwrap());
        assert_eq!(a.ro(), vec![1, 1, 1]);
        assert_eq!(a.co(), vec![0, 3, 0]);
    }

    #[test]
    fn centre_unit_is_doubled() {
        assert_eq!(ThetaMatrix::e_theta(1, 2, 2).get(2, 2), 2);
    }

    #[test]
    fn beta_examples() {
        for n in 1..=3 {
            for h in 1..n {
                for mult in 1..=3 {
                    let a = ThetaMatrix::e_theta(n, h, h + 1).scale(mult);
                    assert_eq!(a.beta(h, h + 1), mult);
                }
            }
            let a = ThetaMatrix::e_theta(n, n, n + 1);
            assert_eq!(a.beta_prime(n, n), 0);
        }
    }

    #[test]
    fn diagonal_exponent_vanishes() {
        for a in enumerate_xi(1, 2).into_iter().filter(ThetaMatrix::is_diagonal) {
            assert_eq!(a.dr_exponent().unwrap(), 0);
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(ThetaMatrix::zero(1).norm(), 0);
        assert_eq!(ThetaMatrix::e_theta(1, 2, 1).norm(), 2);
    }

    #[test]
    fn preorder_example() {
        let a = ThetaMatrix::e_theta(1, 2, 1).add(&ThetaMatrix::diag(&[0, 1, 0]).unwrap());
        let d = ThetaMatrix::diag(&[1, 1, 1]).unwrap();
        assert_eq!(d.compare_preorder(&a), PreorderRelation::Less);
    }

    #[test]
    fn triple_order_prefix() {
        let t = triple_order(1);
        assert_eq!(t, vec![(2, 1, 1), (3, 2, 1), (3, 1, 1), (3, 2, 2)]);
        assert_eq!(*triple_order(2).last().unwrap(), (5, 4, 4));
    }

    #[test]
    fn embedding_places_blocks() {
        let a = m(1, &[&[1, 0, 2], &[0, 1, 0], &[2, 0, 1]]);
        let b = a.embed_circ(2).unwrap();
        assert_eq!(b.get(1, 1), 1);
        assert_eq!(b.get(1, 5), 2);
        assert_eq!(b.get(3, 3), 1);
        assert_eq!(b.get(5, 1), 2);
        assert_eq!(b.sum(), a.sum());
        assert!(a.embed_circ(1).is_err());
    }

    #[test]
    fn json_shape() {
        let a = ThetaMatrix::e_theta(1, 1, 2);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":1,"entries":[[0,1,0],[0,0,0],[0,1,0]]}"#);
        let b: ThetaMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
