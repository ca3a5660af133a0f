//! The stabilized algebra spanned by the formal elements `A(j)`, with the
//! closed multiplication formulas, divided powers, monomials and the
//! projections onto each `S(n, r)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffs::quantum::factorial;
use crate::coeffs::RatFunc;
use crate::error::{Error, Result};
use crate::schur::{build_ajr, closed_formula_terms, Generator, SchurElt};
use crate::theta::{triple_order, SignedWeight, ThetaMatrix};

type Key = (ThetaMatrix, SignedWeight);

/// A finite combination of basis elements `A(j)`, `A` zero-diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabElt {
    n: usize,
    terms: BTreeMap<Key, RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(rename = "A")]
    a: ThetaMatrix,
    j: SignedWeight,
    c: RatFunc,
}

#[derive(Serialize, Deserialize)]
struct StabEltRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for StabElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms =
            self.terms.iter().map(|((a, j), c)| TermRepr { a: a.clone(), j: j.clone(), c: c.clone() }).collect();
        StabEltRepr { n: self.n, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StabElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = StabEltRepr::deserialize(d)?;
        let mut x = StabElt::zero(repr.n);
        for t in repr.terms {
            StabElt::check_key(repr.n, &t.a, &t.j).map_err(serde::de::Error::custom)?;
            x.add_term(t.a, t.j, &t.c);
        }
        Ok(x)
    }
}

impl StabElt {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// `O(0)`, the identity.
    pub fn one(n: usize) -> Self {
        Self::basis(ThetaMatrix::zero(n), SignedWeight::zero(n)).expect("zero matrix is a valid key")
    }

    pub fn basis(a: ThetaMatrix, j: SignedWeight) -> Result<Self> {
        let n = a.n();
        Self::check_key(n, &a, &j)?;
        let mut x = Self::zero(n);
        x.terms.insert((a, j), RatFunc::one());
        Ok(x)
    }

    /// `O(j)`.
    pub fn diagonal(j: SignedWeight) -> Self {
        Self::basis(ThetaMatrix::zero(j.n()), j).expect("zero matrix is a valid key")
    }

    /// `g(0)` (or `O(j)`) as an element.
    pub fn generator(g: &Generator, n: usize) -> Self {
        match g {
            Generator::O(j) => Self::diagonal(j.clone()),
            _ => Self::basis(g.matrix(n), SignedWeight::zero(n)).expect("generator matrices are valid keys"),
        }
    }

    fn check_key(n: usize, a: &ThetaMatrix, j: &SignedWeight) -> Result<()> {
        if a.n() != n || j.n() != n {
            return Err(Error::Malformed(format!("key of rank ({}, {}) for n = {n}", a.n(), j.n())));
        }
        if !a.has_zero_diagonal() {
            return Err(Error::Malformed(format!("{a} has a nonzero diagonal")));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ThetaMatrix, &SignedWeight, &RatFunc)> {
        self.terms.iter().map(|((a, j), c)| (a, j, c))
    }

    pub fn coeff(&self, a: &ThetaMatrix, j: &SignedWeight) -> RatFunc {
        self.terms.get(&(a.clone(), j.clone())).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, a: ThetaMatrix, j: SignedWeight, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, j)) {
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
        assert_eq!(self.n, other.n, "rank mismatch");
        for ((a, j), x) in &other.terms {
            self.add_term(a.clone(), j.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::from_int(-1));
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    /// Largest `||A||` among the terms.
    pub fn max_norm(&self) -> Option<i64> {
        self.terms.keys().map(|(a, _)| a.norm()).max()
    }
}

impl fmt::Display for StabElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, j), c)| format!("({c}) {a}({:?})", j.reduced())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `g(0) x` by the closed multiplication formulas.
pub fn mf_mul(g: &Generator, x: &StabElt) -> Result<StabElt> {
    let mut out = StabElt::zero(x.n());
    for (a, j, c) in x.terms() {
        for t in closed_formula_terms(g, a, j)? {
            out.add_term(t.matrix, t.weight, &(&t.coeff * c));
        }
    }
    Ok(out)
}

/// `g_1 g_2 ... g_k x`.
pub fn mf_mul_word(word: &[Generator], x: &StabElt) -> Result<StabElt> {
    word.iter().rev().try_fold(x.clone(), |acc, g| mf_mul(g, &acc))
}

/// `(m E^theta)(0)` for the raising (`E`) or lowering (`F`) generator at `h`.
pub fn divided_power(g: &Generator, n: usize, m: usize) -> Result<StabElt> {
    match g {
        Generator::E(_) | Generator::F(_) => {
            if m == 0 {
                return Ok(StabElt::one(n));
            }
            StabElt::basis(g.matrix(n).scale(m as i64), SignedWeight::zero(n))
        }
        Generator::O(_) => Err(Error::Misuse("divided powers are defined for E and F only".into())),
    }
}

/// `pi_r`: `A(j) -> A(j, r)`.
pub fn pi_r(x: &StabElt, r: usize) -> Result<SchurElt> {
    let mut out = SchurElt::zero(x.n(), r);
    for (a, j, c) in x.terms() {
        out.add_scaled(&build_ajr(a, j, r)?, c);
    }
    Ok(out)
}

/// A factor of a monomial word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordFactor {
    /// `O(j)`.
    Diag(SignedWeight),
    /// `(m E^theta_{h,h+1})(0)`.
    Raise { h: usize, m: usize },
    /// `(m E^theta_{h+1,h})(0)`.
    Lower { h: usize, m: usize },
}

/// An ordered product of factors, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialWord {
    pub n: usize,
    pub factors: Vec<WordFactor>,
}

impl MonomialWord {
    /// `m^{A, j} = O(j) prod_{(i,h,j') in triple order} (a_{i,j'} E^theta_{h+1,h})(0)`,
    /// where a factor with `h > n` is the raising generator at `N - h`.
    pub fn for_matrix(a: &ThetaMatrix, j: &SignedWeight) -> Result<Self> {
        let n = a.n();
        if !a.has_zero_diagonal() {
            return Err(Error::Malformed(format!("{a} has a nonzero diagonal")));
        }
        let size = a.size();
        let mut factors = Vec::new();
        if !j.is_zero() {
            factors.push(WordFactor::Diag(j.clone()));
        }
        for (i, h, col) in triple_order(n) {
            let m = a.get(i, col) as usize;
            if m == 0 {
                continue;
            }
            factors.push(if h <= n { WordFactor::Lower { h, m } } else { WordFactor::Raise { h: size - h, m } });
        }
        Ok(Self { n, factors })
    }

    /// The value of the word acting on `x` from the left.
    pub fn apply(&self, x: &StabElt) -> Result<StabElt> {
        let mut acc = x.clone();
        for f in self.factors.iter().rev() {
            acc = apply_factor(f, &acc)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self) -> Result<StabElt> {
        self.apply(&StabElt::one(self.n))
    }
}

fn apply_factor(f: &WordFactor, x: &StabElt) -> Result<StabElt> {
    let (g, m) = match f {
        WordFactor::Diag(j) => return mf_mul(&Generator::O(j.clone()), x),
        WordFactor::Raise { h, m } => (Generator::E(*h), *m),
        WordFactor::Lower { h, m } => (Generator::F(*h), *m),
    };
    let mut acc = x.clone();
    for _ in 0..m {
        acc = mf_mul(&g, &acc)?;
    }
    let fact = RatFunc::from(factorial(m as i64)?);
    Ok(acc.scale(&fact.inv()?))
}

/// `m^{A, j}` together with its value.
pub fn monomial(a: &ThetaMatrix, j: &SignedWeight) -> Result<(MonomialWord, StabElt)> {
    let w = MonomialWord::for_matrix(a, j)?;
    let value = w.evaluate()?;
    Ok((w, value))
}

/// The rescaled monomial `v^{-ro(A).j} m^{A,j}`, certified to be `A(j)` plus
/// terms `B(j')` with `B` strictly below `A`.
#[derive(Clone, Debug, Serialize)]
pub struct TriangularExpansion {
    pub matrix: ThetaMatrix,
    pub weight: SignedWeight,
    pub value: StabElt,
    pub leading_is_one: bool,
    pub lower_terms_strictly_below: bool,
    pub lower_norms_smaller: bool,
}

pub fn triangular_expand(a: &ThetaMatrix, j: &SignedWeight) -> Result<TriangularExpansion> {
    let (_, value) = monomial(a, j)?;
    let value = value.scale(&RatFunc::v_pow(-j.dot_centro(&a.ro())));
    let leading_is_one = value.coeff(a, j).is_one();
    let mut below = true;
    let mut norms = true;
    for (b, jb, _) in value.terms() {
        if b == a && jb == j {
            continue;
        }
        below &= b.prec(a);
        norms &= b.norm() < a.norm();
    }
    let report = TriangularExpansion {
        matrix: a.clone(),
        weight: j.clone(),
        value,
        leading_is_one,
        lower_terms_strictly_below: below,
        lower_norms_smaller: norms,
    };
    if !(report.leading_is_one && report.lower_terms_strictly_below) {
        return Err(Error::Triangularity(format!("monomial of {a} at {:?}", j.reduced())));
    }
    Ok(report)
}

/// `x` as a combination of monomials, peeling maximal-norm terms (largest
/// matrix first among equal norms). Each peel replaces the leading `A(j)` by
/// its rescaled monomial minus strictly lower terms.
pub fn express_in_generators(x: &StabElt, max_steps: usize) -> Result<Vec<(RatFunc, MonomialWord)>> {
    let mut rest = x.clone();
    let mut out = Vec::new();
    let mut steps = 0;
    while let Some(((a, j), c)) = leading_term(&rest) {
        steps += 1;
        if steps > max_steps {
            return Err(Error::BudgetExceeded(format!("more than {max_steps} peeling steps")));
        }
        let (word, value) = monomial(&a, &j)?;
        let scalar = &c * &RatFunc::v_pow(-j.dot_centro(&a.ro()));
        rest.add_scaled(&value, &-&scalar);
        if !rest.coeff(&a, &j).is_zero() {
            return Err(Error::Triangularity(format!("leading coefficient of monomial {a} is not one")));
        }
        out.push((scalar, word));
    }
    Ok(out)
}

fn leading_term(x: &StabElt) -> Option<(Key, RatFunc)> {
    x.terms
        .iter()
        .max_by(|(ka, _), (kb, _)| (ka.0.norm(), &ka.0, &ka.1).cmp(&(kb.0.norm(), &kb.0, &kb.1)))
        .map(|(k, c)| (k.clone(), c.clone()))
}

/// Re-evaluates a monomial combination.
pub fn evaluate_combination(n: usize, combo: &[(RatFunc, MonomialWord)]) -> Result<StabElt> {
    let mut out = StabElt::zero(n);
    for (c, w) in combo {
        out.add_scaled(&w.evaluate()?, c);
    }
    Ok(out)
}

/// Default peeling budget for [`stab_mul`].
pub const DEFAULT_PEEL_BUDGET: usize = 10_000;

/// `x y`: `x` is written in monomials, each of which then acts on `y`.
pub fn stab_mul(x: &StabElt, y: &StabElt) -> Result<StabElt> {
    let mut out = StabElt::zero(y.n());
    for (c, w) in express_in_generators(x, DEFAULT_PEEL_BUDGET)? {
        out.add_scaled(&w.apply(y)?, &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_action() {
        let n = 2;
        let a = ThetaMatrix::e_theta(n, 1, 3);
        let j = SignedWeight::unit(n, 2);
        let jp = SignedWeight::from_reduced(vec![1, -1, 2]).unwrap();
        let x = StabElt::basis(a.clone(), j.clone()).unwrap();
        let y = mf_mul(&Generator::O(jp.clone()), &x).unwrap();
        let expected = StabElt::basis(a.clone(), &j + &jp).unwrap().scale(&RatFunc::v_pow(jp.dot_centro(&a.ro())));
        assert_eq!(y, expected);
    }

    #[test]
    fn single_factor_monomial() {
        let a = ThetaMatrix::e_theta(1, 2, 1);
        let (w, value) = monomial(&a, &SignedWeight::zero(1)).unwrap();
        assert_eq!(w.factors, vec![WordFactor::Lower { h: 1, m: 1 }]);
        assert_eq!(value, StabElt::basis(a, SignedWeight::zero(1)).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let x = StabElt::basis(ThetaMatrix::e_theta(1, 1, 2), SignedWeight::unit(1, 2)).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        let y: StabElt = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
