//! The q-Schur algebra `S(n, r)` in the normalized basis `[A] = v^{-(d(A)-r(A))} e_A`,
//! with generator actions and the closed multiplication formulas on `A(j, r)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coeffs::quantum::double_bracket;
use crate::coeffs::{LaurentPoly, RatFunc};
use crate::error::{Error, Result};
use crate::hecke::SchurOracle;
use crate::theta::{Composition, SignedWeight, ThetaMatrix};

/// The generators of the stabilized algebra: `O(j)`, `E^theta_{h,h+1}(0)`
/// and `E^theta_{h+1,h}(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    O(SignedWeight),
    E(usize),
    F(usize),
}

impl Generator {
    /// The zero-diagonal matrix whose `A(0)` this generator is.
    pub fn matrix(&self, n: usize) -> ThetaMatrix {
        match self {
            Generator::O(_) => ThetaMatrix::zero(n),
            Generator::E(h) => ThetaMatrix::e_theta(n, *h, h + 1),
            Generator::F(h) => ThetaMatrix::e_theta(n, h + 1, *h),
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        match self {
            Generator::O(w) if w.n() != n => Err(Error::Malformed(format!("weight of rank {} for n = {n}", w.n()))),
            Generator::E(h) | Generator::F(h) if !(1..=n).contains(h) => {
                Err(Error::Malformed(format!("generator index {h} outside [1, {n}]")))
            }
            _ => Ok(()),
        }
    }
}

/// An element of `S(n, r)` over `Q(v)` in the basis `[A]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurElt {
    n: usize,
    r: usize,
    terms: BTreeMap<ThetaMatrix, RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(rename = "A")]
    a: ThetaMatrix,
    c: RatFunc,
}

#[derive(Serialize, Deserialize)]
struct SchurEltRepr {
    n: usize,
    r: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for SchurElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|(a, c)| TermRepr { a: a.clone(), c: c.clone() }).collect();
        SchurEltRepr { n: self.n, r: self.r, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchurElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SchurEltRepr::deserialize(d)?;
        let mut x = SchurElt::zero(repr.n, repr.r);
        for t in repr.terms {
            x.check_key(&t.a).map_err(serde::de::Error::custom)?;
            x.add_term(t.a, &t.c);
        }
        Ok(x)
    }
}

impl SchurElt {
    pub fn zero(n: usize, r: usize) -> Self {
        Self { n, r, terms: BTreeMap::new() }
    }

    pub fn basis(n: usize, r: usize, a: ThetaMatrix) -> Result<Self> {
        let mut x = Self::zero(n, r);
        x.check_key(&a)?;
        x.terms.insert(a, RatFunc::one());
        Ok(x)
    }

    /// `sum_lambda [diag(tilde lambda)]`, the identity.
    pub fn identity(n: usize, r: usize) -> Self {
        let mut x = Self::zero(n, r);
        for l in Composition::all(n, r as i64) {
            x.terms.insert(ThetaMatrix::from_composition(&l), RatFunc::one());
        }
        x
    }

    fn check_key(&self, a: &ThetaMatrix) -> Result<()> {
        if a.n() != self.n || a.sum() != 2 * self.r as i64 + 1 {
            return Err(Error::Malformed(format!("{a} is not in Xi for (n, r) = ({}, {})", self.n, self.r)));
        }
        Ok(())
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

    pub fn terms(&self) -> impl Iterator<Item = (&ThetaMatrix, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: &ThetaMatrix) -> RatFunc {
        self.terms.get(a).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, a: ThetaMatrix, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.check_key(&a).is_ok(), "bad key {a}");
        match self.terms.entry(a) {
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
        assert_eq!((self.n, self.r), (other.n, other.r), "mismatched algebras");
        for (a, x) in &other.terms {
            self.add_term(a.clone(), &(x * c));
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
        let mut out = Self::zero(self.n, self.r);
        out.add_scaled(self, c);
        out
    }

    /// True when every coefficient lies in `Z[v, v^-1]`.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(RatFunc::is_laurent)
    }

    /// Rescales into the unnormalized basis `e_A`.
    pub fn to_e_basis(&self) -> Result<BTreeMap<ThetaMatrix, RatFunc>> {
        self.terms.iter().map(|(a, c)| Ok((a.clone(), c.shift(-a.dr_exponent()?)))).collect()
    }

    pub fn from_e_basis(n: usize, r: usize, e: &BTreeMap<ThetaMatrix, RatFunc>) -> Result<Self> {
        let mut x = Self::zero(n, r);
        for (a, c) in e {
            x.check_key(a)?;
            x.add_term(a.clone(), &c.shift(a.dr_exponent()?));
        }
        Ok(x)
    }
}

fn bar_dbl(m: i64) -> LaurentPoly {
    double_bracket(m).bar()
}

fn require_nonneg(a: &ThetaMatrix, plus: &ThetaMatrix, minus: &ThetaMatrix) -> Result<ThetaMatrix> {
    a.checked_add_sub(plus, minus)
        .ok_or_else(|| Error::Internal(format!("unguarded negative entry in {a} + {plus:?} - {minus:?}")))
}

/// `[E^theta_{h,h+1} + tilde(l)] [A]` (raising) or `[E^theta_{h+1,h} + tilde(l)] [A]`
/// (lowering) by the row-by-row formula; `l` has sum `r - 1`.
pub fn simple_product(raising: bool, h: usize, l: &Composition, a: &ThetaMatrix) -> Result<SchurElt> {
    let n = a.n();
    if !(1..=n).contains(&h) || l.n() != n {
        return Err(Error::Malformed(format!("invalid generator data h = {h}, lambda = {l:?}")));
    }
    let r = (a.sum() - 1) / 2;
    if l.r() != r - 1 {
        return Err(Error::Malformed(format!("lambda must sum to {}", r - 1)));
    }
    let mut out = SchurElt::zero(n, r as usize);
    let row = if raising { h + 1 } else { h };
    let mut expected = l.tilde();
    let e_row = ThetaMatrix::e_theta(n, row, row).ro();
    for (x, y) in expected.iter_mut().zip(e_row) {
        *x += y;
    }
    if expected != a.ro() {
        return Ok(out);
    }
    let size = a.size();
    for p in 1..=size {
        let (plus, minus) = if raising {
            (ThetaMatrix::e_theta(n, h, p), ThetaMatrix::e_theta(n, h + 1, p))
        } else {
            (ThetaMatrix::e_theta(n, h + 1, p), ThetaMatrix::e_theta(n, h, p))
        };
        let (guard_row, other_row) = if raising { (h + 1, h) } else { (h, h + 1) };
        let threshold = if guard_row == n + 1 && p == n + 1 { 2 } else { 1 };
        if a.get(guard_row, p) < threshold {
            continue;
        }
        let exp = if raising { a.beta(h, p) } else { a.beta_prime(h, p) };
        let c = bar_dbl(a.get(other_row, p) + 1).shift(exp);
        out.add_term(require_nonneg(a, &plus, &minus)?, &RatFunc::from(c));
    }
    Ok(out)
}

/// `g(0, r) [A]` for a generator `g`, via the unique diagonal summand of
/// `g(0, r)` that acts nontrivially.
pub fn generator_times_basis(g: &Generator, a: &ThetaMatrix) -> Result<SchurElt> {
    let n = a.n();
    g.check(n)?;
    let r = ((a.sum() - 1) / 2) as usize;
    match g {
        Generator::O(w) => {
            let mut out = SchurElt::zero(n, r);
            out.add_term(a.clone(), &RatFunc::v_pow(w.dot_centro(&a.ro())));
            Ok(out)
        }
        Generator::E(h) | Generator::F(h) => {
            let raising = matches!(g, Generator::E(_));
            let row = if raising { h + 1 } else { *h };
            let mut t = a.ro();
            let e = ThetaMatrix::e_theta(n, row, row).ro();
            for (x, y) in t.iter_mut().zip(e) {
                *x -= y;
            }
            match Composition::from_tilde(&t) {
                Some(l) if r >= 1 => simple_product(raising, *h, &l, a),
                _ => Ok(SchurElt::zero(n, r)),
            }
        }
    }
}

/// `g(0, r) x`, termwise.
pub fn apply_generator(g: &Generator, x: &SchurElt) -> Result<SchurElt> {
    let mut out = SchurElt::zero(x.n(), x.r());
    for (a, c) in x.terms() {
        out.add_scaled(&generator_times_basis(g, a)?, c);
    }
    Ok(out)
}

/// `A(j, r) = sum_{lambda in Lambda(n+1, r - |A|/2)} v^{tilde(lambda).j} [A + tilde(lambda)]`.
pub fn build_ajr(a: &ThetaMatrix, j: &SignedWeight, r: usize) -> Result<SchurElt> {
    let n = a.n();
    if !a.has_zero_diagonal() {
        return Err(Error::Malformed(format!("{a} has a nonzero diagonal")));
    }
    if a.sum() % 2 != 0 {
        return Err(Error::Malformed(format!("{a} has odd entry sum")));
    }
    if j.n() != n {
        return Err(Error::Malformed("weight rank differs from matrix rank".into()));
    }
    let mut out = SchurElt::zero(n, r);
    let rest = r as i64 - a.sum() / 2;
    for l in Composition::all(n, rest) {
        let m = a.checked_add_diag(&l.tilde()).expect("adding a diagonal keeps entries nonnegative");
        out.add_term(m, &RatFunc::v_pow(j.dot_tilde(&l)));
    }
    Ok(out)
}

/// One summand `c * B(j')` of a closed multiplication formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTerm {
    pub coeff: RatFunc,
    pub matrix: ThetaMatrix,
    pub weight: SignedWeight,
}

/// The closed formula for `g(0) A(j)`, as a list of `c * B(j')` with `B`
/// zero-diagonal. The terms are independent of `r`.
pub fn closed_formula_terms(g: &Generator, a: &ThetaMatrix, j: &SignedWeight) -> Result<Vec<FormulaTerm>> {
    let n = a.n();
    g.check(n)?;
    if !a.has_zero_diagonal() {
        return Err(Error::Malformed(format!("{a} has a nonzero diagonal")));
    }
    let size = a.size();
    let mut out = Vec::new();
    let mut push = |coeff: RatFunc, matrix: ThetaMatrix, weight: SignedWeight| {
        if !coeff.is_zero() {
            out.push(FormulaTerm { coeff, matrix, weight });
        }
    };
    let one_minus_v2 = RatFunc::one() - RatFunc::v_pow(-2);
    match g {
        Generator::O(w) => push(RatFunc::v_pow(w.dot_centro(&a.ro())), a.clone(), w + j),
        Generator::E(h) => {
            let h = *h;
            let alpha = SignedWeight::alpha(n, h);
            let alpha_m = SignedWeight::alpha_minus(n, h);
            for p in (1..h).chain(h + 2..=size) {
                if a.get(h + 1, p) < 1 {
                    continue;
                }
                let c = bar_dbl(a.get(h, p) + 1).shift(a.beta(h, p));
                let b = require_nonneg(a, &ThetaMatrix::e_theta(n, h, p), &ThetaMatrix::e_theta(n, h + 1, p))?;
                let wt = if p < h { j + &alpha } else { j.clone() };
                push(RatFunc::from(c), b, wt);
            }
            if a.get(h + 1, h) >= 1 {
                let c = RatFunc::v_pow(a.beta(h, h) - j.pair_sum(h) - 1).checked_div(&one_minus_v2)?;
                let b = require_nonneg(a, &ThetaMatrix::zero(n), &ThetaMatrix::e_theta(n, h + 1, h))?;
                push(c.clone(), b.clone(), j + &alpha);
                push(-c, b, j + &alpha_m);
            }
            let c = bar_dbl(a.get(h, h + 1) + 1).shift(a.beta(h, h + 1) + j.pair_sum(h + 1));
            push(RatFunc::from(c), a.add(&ThetaMatrix::e_theta(n, h, h + 1)), j.clone());
        }
        Generator::F(h) => {
            let h = *h;
            let alpha = SignedWeight::alpha(n, h);
            let alpha_m = SignedWeight::alpha_minus(n, h);
            for p in (1..h).chain(h + 2..=size) {
                if a.get(h, p) < 1 {
                    continue;
                }
                let c = bar_dbl(a.get(h + 1, p) + 1).shift(a.beta_prime(h, p));
                let b = require_nonneg(a, &ThetaMatrix::e_theta(n, h + 1, p), &ThetaMatrix::e_theta(n, h, p))?;
                let wt = if p < h { j.clone() } else { j - &alpha };
                push(RatFunc::from(c), b, wt);
            }
            let c = bar_dbl(a.get(h + 1, h) + 1).shift(a.beta_prime(h, h) + j.pair_sum(h));
            push(RatFunc::from(c), a.add(&ThetaMatrix::e_theta(n, h + 1, h)), j.clone());
            if a.get(h, h + 1) >= 1 {
                let twist = i64::from(h == n);
                let c = RatFunc::v_pow(a.beta_prime(h, h + 1) - j.pair_sum(h + 1) - 1).checked_div(&one_minus_v2)?;
                let b = require_nonneg(a, &ThetaMatrix::zero(n), &ThetaMatrix::e_theta(n, h, h + 1))?;
                push(c.shift(-twist), b.clone(), j - &alpha);
                push(-c.shift(twist), b, j + &alpha_m);
            }
        }
    }
    Ok(out)
}

/// `g(0, r) A(j, r)` evaluated through the closed formula.
pub fn closed_formula_product(g: &Generator, a: &ThetaMatrix, j: &SignedWeight, r: usize) -> Result<SchurElt> {
    let mut out = SchurElt::zero(a.n(), r);
    for t in closed_formula_terms(g, a, j)? {
        out.add_scaled(&build_ajr(&t.matrix, &t.weight, r)?, &t.coeff);
    }
    Ok(out)
}

/// `g(0, r)` as an element of `S(n, r)`.
pub fn generator_element(g: &Generator, n: usize, r: usize) -> Result<SchurElt> {
    g.check(n)?;
    let j = match g {
        Generator::O(w) => w.clone(),
        _ => SignedWeight::zero(n),
    };
    build_ajr(&g.matrix(n), &j, r)
}

/// `[A][B]` computed by the double-coset oracle and normalized.
pub fn oracle_product(oracle: &SchurOracle, a: &ThetaMatrix, b: &ThetaMatrix) -> Result<SchurElt> {
    let mut out = SchurElt::zero(oracle.n(), oracle.r());
    let shift = -a.dr_exponent()? - b.dr_exponent()?;
    for (c, coeff) in oracle.mul_basis(a, b)? {
        let e = shift + c.dr_exponent()?;
        out.add_term(c, &RatFunc::from(coeff.shift(e)));
    }
    Ok(out)
}

/// Arbitrary product `x y` through the oracle, extended bilinearly.
pub fn oracle_mul(oracle: &SchurOracle, x: &SchurElt, y: &SchurElt) -> Result<SchurElt> {
    let mut out = SchurElt::zero(x.n(), x.r());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a.co() != b.ro() {
                continue;
            }
            out.add_scaled(&oracle_product(oracle, a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_sum_of_idempotents() {
        let id = build_ajr(&ThetaMatrix::zero(1), &SignedWeight::zero(1), 2).unwrap();
        assert_eq!(id, SchurElt::identity(1, 2));
        assert_eq!(id.num_terms(), 3);
    }

    #[test]
    fn middle_diagonal_weight() {
        // O(e_{n+1}, r) = sum v^{2 l_{n+1} + 1} [tilde l]
        let n = 1;
        let r = 2;
        let x = build_ajr(&ThetaMatrix::zero(n), &SignedWeight::unit(n, n + 1), r).unwrap();
        for l in Composition::all(n, r as i64) {
            let c = x.coeff(&ThetaMatrix::from_composition(&l));
            assert_eq!(c, RatFunc::v_pow(2 * l.part(n + 1) + 1));
        }
    }

    #[test]
    fn row_mismatch_gives_zero() {
        let a = ThetaMatrix::diag(&[1, 1, 1]).unwrap();
        let l = Composition::new(vec![0, 0]).unwrap();
        // ro(A) = (1,1,1) but e^theta_2 + tilde(l) = (0, 3, 0)
        assert!(simple_product(true, 1, &l, &a).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let x = build_ajr(&ThetaMatrix::e_theta(1, 1, 2), &SignedWeight::unit(1, 1), 2).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        let y: SchurElt = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
