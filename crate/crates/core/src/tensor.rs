//! The tensor space `Omega^{(x) r}` with the quantum `gl_{2n+1}` action, the
//! i-quantum action through the coideal embedding, the right Hecke action
//! of type B, and the bimodule map onto `S(n, r) e`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::RatFunc;
use crate::error::{Error, Result};
use crate::iquantum::{omega_letter, phi_letter, Letter};
use crate::linalg::{rank_at, sparse_rank};
use crate::schur::{apply_generator, SchurElt};
use crate::theta::ThetaMatrix;

/// A vector in `Omega^{(x) r}`, keyed by index tuples with entries in `1..=2n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElt {
    n: usize,
    r: usize,
    terms: BTreeMap<Vec<usize>, RatFunc>,
}

impl TensorElt {
    pub fn zero(n: usize, r: usize) -> Self {
        Self { n, r, terms: BTreeMap::new() }
    }

    pub fn basis(n: usize, idx: Vec<usize>) -> Result<Self> {
        if idx.iter().any(|&i| i == 0 || i > 2 * n + 1) {
            return Err(Error::Domain(format!("index tuple {idx:?} out of range for n = {n}")));
        }
        let r = idx.len();
        let mut x = Self::zero(n, r);
        x.terms.insert(idx, RatFunc::one());
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &RatFunc) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), &(x * c));
        }
    }

    /// Applies a map defined on basis vectors, extended linearly.
    pub fn map(&self, f: impl Fn(&[usize]) -> Result<TensorElt>) -> Result<TensorElt> {
        let mut out = Self::zero(self.n, self.r);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }
}

/// All index tuples in `[1, 2n+1]^r`, lexicographically.
pub fn index_tuples(n: usize, r: usize) -> Vec<Vec<usize>> {
    let size = 2 * n + 1;
    let mut out = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::with_capacity(out.len() * size);
        for t in &out {
            for i in 1..=size {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Generators of quantum `gl_{2n+1}` acting on the tensor space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GlGen {
    E(usize),
    F(usize),
    /// `K_j^p`.
    K(usize, i64),
}

fn k_tilde_exp(h: usize, i: usize) -> i64 {
    i64::from(i == h) - i64::from(i == h + 1)
}

/// A single generator on a basis tensor, through the iterated coproduct.
pub fn gl_act_basis(g: GlGen, n: usize, idx: &[usize]) -> TensorElt {
    let r = idx.len();
    let mut out = TensorElt::zero(n, r);
    match g {
        GlGen::K(j, p) => {
            let count = idx.iter().filter(|&&i| i == j).count() as i64;
            out.add_term(idx.to_vec(), &RatFunc::v_pow(p * count));
        }
        GlGen::E(h) => {
            // E_h at position l, K~_h on every later position.
            for l in 0..r {
                if idx[l] != h + 1 {
                    continue;
                }
                let e: i64 = idx[l + 1..].iter().map(|&i| k_tilde_exp(h, i)).sum();
                let mut t = idx.to_vec();
                t[l] = h;
                out.add_term(t, &RatFunc::v_pow(e));
            }
        }
        GlGen::F(h) => {
            // K~_h^{-1} on every earlier position, F_h at position l.
            for l in 0..r {
                if idx[l] != h {
                    continue;
                }
                let e: i64 = -idx[..l].iter().map(|&i| k_tilde_exp(h, i)).sum::<i64>();
                let mut t = idx.to_vec();
                t[l] = h + 1;
                out.add_term(t, &RatFunc::v_pow(e));
            }
        }
    }
    out
}

pub fn gl_act(g: GlGen, x: &TensorElt) -> TensorElt {
    x.map(|k| Ok(gl_act_basis(g, x.n, k))).expect("gl action is total")
}

/// `iota(letter)` as a sum of scalar multiples of products of `gl`
/// generators, each product read left to right. The torus factor attached to
/// `E_i` in the image of `f_i` is `K~_{N-i}^{-1}`; with `K~_{N-i}` the image
/// fails to commute with the type-B Hecke generator already at `n = r = 1`.
pub fn iota_image(l: Letter, n: usize) -> Vec<(RatFunc, Vec<GlGen>)> {
    use GlGen::*;
    let size = 2 * n + 1;
    let one = RatFunc::one;
    match l {
        Letter::E(i) => vec![(one(), vec![F(i)]), (one(), vec![K(i, -1), K(i + 1, 1), E(size - i)])],
        Letter::F(i) => vec![(one(), vec![E(i), K(size - i, -1), K(size + 1 - i, 1)]), (one(), vec![F(size - i)])],
        Letter::D(a) if a == n + 1 => vec![(RatFunc::v_pow(-1), vec![K(n + 1, -2)])],
        Letter::DInv(a) if a == n + 1 => vec![(RatFunc::v_pow(1), vec![K(n + 1, 2)])],
        Letter::D(a) => vec![(one(), vec![K(a, -1), K(size + 1 - a, -1)])],
        Letter::DInv(a) => vec![(one(), vec![K(a, 1), K(size + 1 - a, 1)])],
    }
}

/// `iota(l)` on a basis tensor.
pub fn iota_act_basis(l: Letter, n: usize, idx: &[usize]) -> TensorElt {
    let mut out = TensorElt::zero(n, idx.len());
    let start = TensorElt::basis(n, idx.to_vec()).expect("valid tuple");
    for (c, word) in iota_image(l, n) {
        let mut acc = start.clone();
        for &g in word.iter().rev() {
            acc = gl_act(g, &acc);
        }
        out.add_scaled(&acc, &c);
    }
    out
}

pub fn iota_act(l: Letter, x: &TensorElt) -> TensorElt {
    x.map(|k| Ok(iota_act_basis(l, x.n, k))).expect("action is total")
}

/// `omega_i T_k` on a basis tensor; `k = r` is the type-B generator, which
/// compares the last letter with the middle index and reflects it.
pub fn hecke_act_basis(n: usize, idx: &[usize], k: usize) -> Result<TensorElt> {
    let r = idx.len();
    if k == 0 || k > r {
        return Err(Error::Domain(format!("T_{k} is not a generator for r = {r}")));
    }
    let q1 = &RatFunc::v_pow(2) - &RatFunc::one();
    let mut out = TensorElt::zero(n, r);
    let (a, b, swapped) = if k < r {
        let mut t = idx.to_vec();
        t.swap(k - 1, k);
        (idx[k - 1], idx[k], t)
    } else {
        let mut t = idx.to_vec();
        t[r - 1] = 2 * n + 2 - idx[r - 1];
        (idx[r - 1], n + 1, t)
    };
    match a.cmp(&b) {
        std::cmp::Ordering::Less => out.add_term(swapped, &RatFunc::v_pow(1)),
        std::cmp::Ordering::Equal => out.add_term(idx.to_vec(), &RatFunc::v_pow(2)),
        std::cmp::Ordering::Greater => {
            out.add_term(idx.to_vec(), &q1);
            out.add_term(swapped, &RatFunc::v_pow(1));
        }
    }
    Ok(out)
}

pub fn hecke_act(x: &TensorElt, k: usize) -> Result<TensorElt> {
    x.map(|idx| hecke_act_basis(x.n, idx, k))
}

/// Every generator letter of the i-quantum group at rank `n`.
pub fn all_letters(n: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for h in 1..=n {
        out.push(Letter::E(h));
        out.push(Letter::F(h));
    }
    for a in 1..=n + 1 {
        out.push(Letter::D(a));
        out.push(Letter::DInv(a));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub n: usize,
    pub r: usize,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(g x) T_k = g (x T_k)` for every generator `g`, Hecke generator `T_k`,
/// and basis tensor `x`.
pub fn commutation_check(n: usize, r: usize) -> Result<CommutationReport> {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for idx in index_tuples(n, r) {
        let x = TensorElt::basis(n, idx.clone())?;
        for k in 1..=r {
            let xt = hecke_act(&x, k)?;
            for l in all_letters(n) {
                pairs += 1;
                let lhs = hecke_act(&iota_act(l, &x), k)?;
                let rhs = iota_act(l, &xt);
                if lhs != rhs {
                    failures.push(format!("{l} against T_{k} at {idx:?}"));
                }
            }
        }
    }
    Ok(CommutationReport { n, r, pairs_checked: pairs, failures })
}

/// The Hecke relations as operator identities on every basis tensor.
pub fn hecke_module_check(n: usize, r: usize) -> Result<Vec<String>> {
    let q = RatFunc::v_pow(2);
    let q1 = &q - &RatFunc::one();
    let mut failures = Vec::new();
    let word = |x: &TensorElt, ks: &[usize]| -> Result<TensorElt> {
        ks.iter().try_fold(x.clone(), |acc, &k| hecke_act(&acc, k))
    };
    for idx in index_tuples(n, r) {
        let x = TensorElt::basis(n, idx.clone())?;
        for i in 1..=r {
            let xt = hecke_act(&x, i)?;
            let mut expected = TensorElt::zero(n, r);
            expected.add_scaled(&xt, &q1);
            expected.add_scaled(&x, &q);
            if hecke_act(&xt, i)? != expected {
                failures.push(format!("quadratic T_{i} at {idx:?}"));
            }
            for j in i + 1..=r {
                let ok = if j - i >= 2 {
                    word(&x, &[i, j])? == word(&x, &[j, i])?
                } else if j < r {
                    word(&x, &[i, j, i])? == word(&x, &[j, i, j])?
                } else {
                    word(&x, &[i, j, i, j])? == word(&x, &[j, i, j, i])?
                };
                if !ok {
                    failures.push(format!("braid T_{i}, T_{j} at {idx:?}"));
                }
            }
        }
    }
    Ok(failures)
}

/// Rank at which `eta` is built: `n` itself when `n >= r`, else `r`.
fn eta_rank(n: usize, r: usize) -> usize {
    n.max(r)
}

/// `A_i`: the matrix whose first `r` columns record the tuple, whose middle
/// column is the middle unit vector, and whose last `r` columns mirror the
/// first. For `n < r` the tuple is embedded into rank `r` first.
pub fn a_matrix(n: usize, idx: &[usize]) -> Result<ThetaMatrix> {
    let r = idx.len();
    let m = eta_rank(n, r);
    let size = 2 * m + 1;
    let lift = |i: usize| -> usize {
        if i <= n {
            i
        } else if i == n + 1 {
            m + 1
        } else {
            i + 2 * (m - n)
        }
    };
    let mut rows = vec![vec![0; size]; size];
    for (l, &i) in idx.iter().enumerate() {
        if i == 0 || i > 2 * n + 1 {
            return Err(Error::Domain(format!("index tuple {idx:?} out of range for n = {n}")));
        }
        let k = lift(i);
        rows[k - 1][l] = 1;
        rows[size - k][size - 1 - l] = 1;
    }
    rows[m][m] = 1;
    ThetaMatrix::new(m, rows)
}

/// `eta(x)` in the Schur algebra of rank `max(n, r)`.
pub fn eta(x: &TensorElt) -> Result<SchurElt> {
    let m = eta_rank(x.n, x.r);
    let mut out = SchurElt::zero(m, x.r);
    for (idx, c) in x.terms() {
        out.add_term(a_matrix(x.n, idx)?, c);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerReport {
    pub n: usize,
    pub r: usize,
    pub cases_checked: usize,
    pub failures: Vec<String>,
}

impl IntertwinerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `eta(iota(g) x) = phi_r(omega(g)) eta(x)` on every basis tensor and
/// generator; requires `n >= r`.
pub fn intertwiner_check(n: usize, r: usize) -> Result<IntertwinerReport> {
    if n < r {
        return Err(Error::Misuse(format!("the intertwiner check needs n >= r, got n = {n}, r = {r}")));
    }
    let mut failures = Vec::new();
    let mut cases = 0;
    for idx in index_tuples(n, r) {
        let x = TensorElt::basis(n, idx.clone())?;
        let ex = eta(&x)?;
        for l in all_letters(n) {
            cases += 1;
            let lhs = eta(&iota_act(l, &x))?;
            let (c1, l2) = omega_letter(l, n);
            let (c2, g) = phi_letter(l2, n);
            let rhs = apply_generator(&g, &ex)?.scale(&(&c1 * &c2));
            if lhs != rhs {
                failures.push(format!("{l} at {idx:?}"));
            }
        }
    }
    Ok(IntertwinerReport { n, r, cases_checked: cases, failures })
}

/// Linear equations `X T_k = T_k X` in the `M^2` entries of an endomorphism
/// `X` of the tensor space, `M = (2n+1)^r`.
pub fn commutant_equations(n: usize, r: usize) -> Result<Vec<Vec<(usize, RatFunc)>>> {
    let tuples = index_tuples(n, r);
    let m = tuples.len();
    let pos: BTreeMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    // Matrices of the right action: row = source tuple, column = target tuple.
    let mut rows = Vec::new();
    for k in 1..=r {
        let mut t = vec![Vec::new(); m];
        for (a, idx) in tuples.iter().enumerate() {
            for (target, c) in hecke_act_basis(n, idx, k)?.terms() {
                t[a].push((pos[target], c.clone()));
            }
        }
        // Column-major view of T for the X T side.
        let mut t_cols = vec![Vec::new(); m];
        for (a, row) in t.iter().enumerate() {
            for (b, c) in row {
                t_cols[*b].push((a, c.clone()));
            }
        }
        // (X T)_{a b} - (T X)_{a b} = sum_c X_{a c} T_{c b} - sum_c T_{a c} X_{c b}.
        for a in 0..m {
            for b in 0..m {
                let mut eq: BTreeMap<usize, RatFunc> = BTreeMap::new();
                for (c, x) in &t_cols[b] {
                    *eq.entry(a * m + c).or_insert_with(RatFunc::zero) += x;
                }
                for (c, x) in &t[a] {
                    *eq.entry(c * m + b).or_insert_with(RatFunc::zero) -= x;
                }
                let eq: Vec<(usize, RatFunc)> = eq.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if !eq.is_empty() {
                    rows.push(eq);
                }
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantReport {
    pub n: usize,
    pub r: usize,
    /// Nullity at each specialization of `v`, as `(point, dimension)`.
    pub specializations: Vec<(String, usize)>,
    pub exact: Option<usize>,
    pub dimension: usize,
    pub agree: bool,
}

/// Dimension of the Hecke commutant: nullity of the commutation system at
/// `trials` random rational points, and over `Q(v)` itself when `exact`.
pub fn commutant_dimension<R: Rng>(
    n: usize,
    r: usize,
    trials: usize,
    exact: bool,
    rng: &mut R,
) -> Result<CommutantReport> {
    let eqs = commutant_equations(n, r)?;
    let unknowns = index_tuples(n, r).len().pow(2);
    let mut points = Vec::new();
    while points.len() < trials {
        let p = BigRational::new(BigInt::from(rng.gen_range(2..1000i64)), BigInt::from(rng.gen_range(1..1000i64)));
        if eqs.iter().all(|row| row.iter().all(|(_, x)| x.eval(&p).is_some())) && !points.contains(&p) {
            points.push(p);
        }
    }
    let specializations: Vec<(String, usize)> = points
        .par_iter()
        .map(|p| {
            let rank = rank_at(&eqs, p).expect("points avoid poles");
            (p.to_string(), unknowns - rank)
        })
        .collect();
    let exact = exact.then(|| unknowns - sparse_rank(eqs.clone()));
    let first = specializations.first().map(|s| s.1).unwrap_or(0);
    let agree = specializations.iter().all(|s| s.1 == first) && exact.is_none_or(|e| e == first);
    Ok(CommutantReport { n, r, specializations, exact, dimension: exact.unwrap_or(first), agree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_hecke_action() {
        let n = 1;
        let v = |k| RatFunc::v_pow(k);
        let t = |i: usize| hecke_act_basis(n, &[i], 1).unwrap();
        assert_eq!(t(1), TensorElt::zero(n, 1).tap_add(vec![3], v(1)));
        assert_eq!(t(2), TensorElt::zero(n, 1).tap_add(vec![2], v(2)));
        assert_eq!(t(3), TensorElt::zero(n, 1).tap_add(vec![3], &v(2) - &RatFunc::one()).tap_add(vec![1], v(1)));
    }

    impl TensorElt {
        fn tap_add(mut self, idx: Vec<usize>, c: RatFunc) -> Self {
            self.add_term(idx, &c);
            self
        }
    }

    #[test]
    fn a_matrix_columns() {
        let a = a_matrix(1, &[2]).unwrap();
        assert_eq!(a.rows(), vec![vec![0, 0, 0], vec![1, 1, 1], vec![0, 0, 0]]);
        let co = a_matrix(2, &[1, 5]).unwrap().co();
        assert_eq!(co, vec![1, 1, 1, 1, 1]);
    }
}
