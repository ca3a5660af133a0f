//! The i-quantum group on generators `e_i, f_i, d_a^{+-1}`, its map into the
//! stabilized algebra, the defining relations, and the integral form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffs::quantum::{bracket, double_bracket, factorial};
use crate::coeffs::{LaurentPoly, RatFunc};
use crate::error::{Error, Result};
use crate::schur::{Generator, SchurElt};
use crate::stabilized::{mf_mul, pi_r, MonomialWord, StabElt};
use crate::theta::{Composition, SignedWeight, ThetaMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Letter {
    E(usize),
    F(usize),
    D(usize),
    DInv(usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "e{i}"),
            Letter::F(i) => write!(f, "f{i}"),
            Letter::D(i) => write!(f, "d{i}"),
            Letter::DInv(i) => write!(f, "d{i}^-1"),
        }
    }
}

/// A linear combination of words in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UjPoly {
    pub n: usize,
    pub terms: Vec<(RatFunc, Vec<Letter>)>,
}

impl UjPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: Vec::new() }
    }

    pub fn word(n: usize, letters: &[Letter]) -> Self {
        Self { n, terms: vec![(RatFunc::one(), letters.to_vec())] }
    }

    pub fn plus(mut self, c: RatFunc, letters: &[Letter]) -> Self {
        self.terms.push((c, letters.to_vec()));
        self
    }

    pub fn minus(self, other: &Self) -> Self {
        let mut out = self;
        for (c, w) in &other.terms {
            out.terms.push((-c, w.clone()));
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(x, w)| (x * c, w.clone())).collect() }
    }

    fn check(&self) -> Result<()> {
        for (_, w) in &self.terms {
            for l in w {
                let (i, top) = match *l {
                    Letter::E(i) | Letter::F(i) => (i, self.n),
                    Letter::D(i) | Letter::DInv(i) => (i, self.n + 1),
                };
                if i == 0 || i > top {
                    return Err(Error::Domain(format!("{l} out of range for n = {}", self.n)));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for UjPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| {
                let word: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                let word = if word.is_empty() { "1".to_string() } else { word.join(" ") };
                format!("({c}) {word}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The image of a single letter: a scalar times a generator of the
/// stabilized algebra.
pub fn phi_letter(l: Letter, n: usize) -> (RatFunc, Generator) {
    match l {
        Letter::E(h) => (RatFunc::one(), Generator::E(h)),
        Letter::F(h) => (RatFunc::one(), Generator::F(h)),
        Letter::D(a) => {
            let c = if a == n + 1 { RatFunc::v_pow(-1) } else { RatFunc::one() };
            (c, Generator::O(SignedWeight::unit(n, a)))
        }
        Letter::DInv(a) => {
            let c = if a == n + 1 { RatFunc::v_pow(1) } else { RatFunc::one() };
            (c, Generator::O(-&SignedWeight::unit(n, a)))
        }
    }
}

/// `phi(w) x` for a word `w`.
pub fn phi_word_apply(word: &[Letter], n: usize, x: &StabElt) -> Result<StabElt> {
    let mut acc = x.clone();
    for &l in word.iter().rev() {
        let (c, g) = phi_letter(l, n);
        acc = mf_mul(&g, &acc)?;
        if !c.is_one() {
            acc = acc.scale(&c);
        }
    }
    Ok(acc)
}

pub fn phi(x: &UjPoly) -> Result<StabElt> {
    x.check()?;
    let one = StabElt::one(x.n);
    let mut out = StabElt::zero(x.n);
    for (c, w) in &x.terms {
        out.add_scaled(&phi_word_apply(w, x.n, &one)?, c);
    }
    Ok(out)
}

/// The involution `omega` on a letter, as a scalar times a letter.
pub fn omega_letter(l: Letter, n: usize) -> (RatFunc, Letter) {
    match l {
        Letter::E(h) => (RatFunc::one(), Letter::F(h)),
        Letter::F(h) => (RatFunc::one(), Letter::E(h)),
        Letter::D(a) if a == n + 1 => (RatFunc::v_pow(-1), Letter::DInv(a)),
        Letter::DInv(a) if a == n + 1 => (RatFunc::v_pow(1), Letter::D(a)),
        Letter::D(a) => (RatFunc::one(), Letter::DInv(a)),
        Letter::DInv(a) => (RatFunc::one(), Letter::D(a)),
    }
}

pub fn omega(x: &UjPoly) -> UjPoly {
    let terms = x
        .terms
        .iter()
        .map(|(c, w)| {
            let mut c = c.clone();
            let mut out = Vec::with_capacity(w.len());
            for &l in w {
                let (s, l2) = omega_letter(l, x.n);
                c = &c * &s;
                out.push(l2);
            }
            (c, out)
        })
        .collect();
    UjPoly { n: x.n, terms }
}

/// One checked instance of a defining relation.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub family: &'static str,
    pub instance: String,
    pub holds: bool,
}

/// `lhs - rhs` for every instance of the defining relations at rank `n`.
pub fn relation_instances(n: usize) -> Vec<(&'static str, String, UjPoly)> {
    use Letter::*;
    let one = RatFunc::one;
    let vp = RatFunc::v_pow;
    let mut out = Vec::new();
    let w = |ls: &[Letter]| UjPoly::word(n, ls);

    for a in 1..=n + 1 {
        out.push(("torus", format!("d{a} d{a}^-1 = 1"), w(&[D(a), DInv(a)]).plus(-one(), &[])));
        out.push(("torus", format!("d{a}^-1 d{a} = 1"), w(&[DInv(a), D(a)]).plus(-one(), &[])));
        for b in a + 1..=n + 1 {
            out.push(("torus", format!("d{a} d{b} = d{b} d{a}"), w(&[D(a), D(b)]).plus(-one(), &[D(b), D(a)])));
        }
    }

    let delta = |x: usize, y: usize| i64::from(x == y);
    for a in 1..=n + 1 {
        for j in 1..=n {
            let (ke, kf) = if a <= n {
                let k = delta(a, j) - delta(a, j + 1);
                (k, -k)
            } else {
                (-2 * delta(n, j), 2 * delta(n, j))
            };
            out.push((
                "weight-conjugation",
                format!("d{a} e{j} d{a}^-1"),
                w(&[D(a), E(j), DInv(a)]).plus(-vp(ke), &[E(j)]),
            ));
            out.push((
                "weight-conjugation",
                format!("d{a} f{j} d{a}^-1"),
                w(&[D(a), F(j), DInv(a)]).plus(-vp(kf), &[F(j)]),
            ));
        }
    }

    let vmv = (&RatFunc::v_pow(1) - &RatFunc::v_pow(-1)).inv().expect("v - v^-1 is nonzero");
    for i in 1..n {
        for j in 1..n {
            let mut p = w(&[E(i), F(j)]).plus(-one(), &[F(j), E(i)]);
            if i == j {
                p = p.plus(-vmv.clone(), &[D(i), DInv(i + 1)]).plus(vmv.clone(), &[DInv(i), D(i + 1)]);
            }
            out.push(("ef-commutator", format!("[e{i}, f{j}]"), p));
        }
    }

    for i in 1..=n {
        for j in i + 2..=n {
            out.push((
                "distant-commutation",
                format!("e{i} e{j} = e{j} e{i}"),
                w(&[E(i), E(j)]).plus(-one(), &[E(j), E(i)]),
            ));
            out.push((
                "distant-commutation",
                format!("f{i} f{j} = f{j} f{i}"),
                w(&[F(i), F(j)]).plus(-one(), &[F(j), F(i)]),
            ));
        }
    }

    let two = RatFunc::from(bracket(2));
    for i in 1..=n {
        for j in 1..=n {
            if i.abs_diff(j) != 1 {
                continue;
            }
            for (x, y, name) in [(E(i), E(j), "e"), (F(i), F(j), "f")] {
                let p = w(&[x, x, y]).plus(one(), &[y, x, x]).plus(-two.clone(), &[x, y, x]);
                out.push(("serre", format!("serre {name}{i} {name}{j}"), p));
            }
        }
    }

    // f_n^2 e_n + e_n f_n^2 = [2](f_n e_n f_n - (v d_n d_{n+1}^-1 + v^-1 d_n^-1 d_{n+1}) f_n)
    let (en, fnn, dn, dni, dm, dmi) = (E(n), F(n), D(n), DInv(n), D(n + 1), DInv(n + 1));
    let m2 = -two.clone();
    let p = w(&[fnn, fnn, en])
        .plus(one(), &[en, fnn, fnn])
        .plus(m2.clone(), &[fnn, en, fnn])
        .plus(&two * &vp(1), &[dn, dmi, fnn])
        .plus(&two * &vp(-1), &[dni, dm, fnn]);
    out.push(("rank-n-serre", "f-side".to_string(), p));
    let p = w(&[en, en, fnn])
        .plus(one(), &[fnn, en, en])
        .plus(m2, &[en, fnn, en])
        .plus(&two * &vp(1), &[en, dn, dmi])
        .plus(&two * &vp(-1), &[en, dni, dm]);
    out.push(("rank-n-serre", "e-side".to_string(), p));
    out
}

/// Checks every relation instance in the stabilized algebra.
pub fn verify_relations(n: usize) -> Result<Vec<RelationCheck>> {
    relation_instances(n)
        .into_iter()
        .map(|(family, instance, p)| Ok(RelationCheck { family, instance, holds: phi(&p)?.is_zero() }))
        .collect()
}

/// A named rational-function identity with both sides.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientIdentity {
    pub term: &'static str,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
}

impl CoefficientIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The coefficient comparisons that close the quartic relation.
pub fn closing_table() -> Vec<CoefficientIdentity> {
    let v = |k| RatFunc::v_pow(k);
    let r = |p: LaurentPoly| RatFunc::from(p);
    let two = r(bracket(2));
    let fact2 = r(factorial(2).expect("nonnegative"));
    let dbar = r(double_bracket(2).bar());
    let inv = (&RatFunc::one() - &v(-2)).inv().expect("1 - v^-2 is nonzero");
    let over = |x: RatFunc| &x * &inv;
    let one = RatFunc::one();
    vec![
        CoefficientIdentity {
            term: "(E_{n,n+1} + 2E_{n+1,n})(0)",
            lhs: &(&v(1) * &dbar) + &(&fact2 * &v(-2)),
            rhs: &dbar * &two,
        },
        CoefficientIdentity { term: "(E_{n+1,n} + E_{n,n+2})(0)", lhs: fact2.clone(), rhs: two.clone() },
        CoefficientIdentity {
            term: "E_{n+1,n}(-alpha_n)",
            lhs: &over(v(-1)) + &over(v(-3)),
            rhs: &two * &(&(&one + &over(v(-2))) - &one),
        },
        CoefficientIdentity {
            term: "E_{n+1,n}(alpha_n)",
            lhs: &fact2 * &over(v(-2)),
            rhs: &two * &(&over(one.clone()) - &one),
        },
        CoefficientIdentity {
            term: "E_{n+1,n}(alpha_n^-)",
            lhs: &(&-&over(v(1)) - &over(v(-1))) - &(&fact2 * &over(v(-2))),
            rhs: &two * &(&-&over(one.clone()) - &over(v(-2))),
        },
    ]
}

/// `k_i` in the stabilized algebra and its inverse.
fn k_elements(n: usize, i: usize) -> (StabElt, StabElt) {
    let (c, g) = phi_letter(Letter::D(i), n);
    let (ci, gi) = phi_letter(Letter::DInv(i), n);
    let to = |c: RatFunc, g: Generator| StabElt::generator(&g, n).scale(&c);
    (to(c, g), to(ci, gi))
}

/// `[k_i; 0 over t]`, with `v^2` in place of `v` for `i = n + 1`.
pub fn kbinom(n: usize, i: usize, t: usize) -> Result<StabElt> {
    if i == 0 || i > n + 1 {
        return Err(Error::Domain(format!("index {i} out of range for n = {n}")));
    }
    let (k, kinv) = k_elements(n, i);
    let q = if i == n + 1 { 2 } else { 1 };
    let mut acc = StabElt::one(n);
    for s in 1..=t as i64 {
        let mut factor = k.scale(&RatFunc::v_pow(-q * (s - 1)));
        factor.add_scaled(&kinv, &RatFunc::v_pow(q * (s - 1)).scale_int(-1));
        let den = (&RatFunc::v_pow(q * s) - &RatFunc::v_pow(-q * s)).inv()?;
        acc = stab_mul_diag(&factor.scale(&den), &acc)?;
    }
    Ok(acc)
}

/// `x y` for `x` a combination of `O(j)`.
fn stab_mul_diag(x: &StabElt, y: &StabElt) -> Result<StabElt> {
    let mut out = StabElt::zero(y.n());
    for (a, j, c) in x.terms() {
        if !a.is_diagonal() {
            return Err(Error::Internal("expected a diagonal element".into()));
        }
        out.add_scaled(&mf_mul(&Generator::O(j.clone()), y)?, c);
    }
    Ok(out)
}

/// `prod_{i<=n} [k_i; 0 over l_i] [k_{n+1}; 0 over l_{n+1}]_{v^2}`.
pub fn kbinom_product(l: &Composition) -> Result<StabElt> {
    let n = l.n();
    let mut acc = StabElt::one(n);
    for i in (1..=n + 1).rev() {
        acc = stab_mul_diag(&kbinom(n, i, l.part(i) as usize)?, &acc)?;
    }
    Ok(acc)
}

/// `pi_r` of the binomial product for `l`, compared with `[diag(tilde l)]`.
pub fn binomial_idempotent_check(l: &Composition) -> Result<bool> {
    let r = l.r() as usize;
    let lhs = pi_r(&kbinom_product(l)?, r)?;
    let rhs = SchurElt::basis(l.n(), r, ThetaMatrix::from_composition(l))?;
    Ok(lhs == rhs)
}

/// The integral monomial of `A`: a binomial prefix for `ro(A)` followed by
/// the monomial of `A` with its diagonal removed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegralWord {
    pub lambda: Composition,
    pub monomial: MonomialWord,
}

impl IntegralWord {
    pub fn for_matrix(a: &ThetaMatrix) -> Result<Self> {
        let lambda = Composition::from_tilde(&a.ro())
            .ok_or_else(|| Error::Domain(format!("{a} is not in a finite Schur algebra")))?;
        let off = a.off_diagonal();
        let monomial = MonomialWord::for_matrix(&off, &SignedWeight::zero(a.n()))?;
        Ok(Self { lambda, monomial })
    }

    pub fn evaluate(&self) -> Result<StabElt> {
        let m = self.monomial.evaluate()?;
        stab_mul_diag(&kbinom_product(&self.lambda)?, &m)
    }

    pub fn project(&self, r: usize) -> Result<SchurElt> {
        pi_r(&self.evaluate()?, r)
    }
}

/// `pi_r(m^(A))` with its unitriangularity verdict.
#[derive(Clone, Debug, Serialize)]
pub struct IntegralExpansion {
    pub matrix: ThetaMatrix,
    pub word: IntegralWord,
    pub value: SchurElt,
    pub leading_is_one: bool,
    pub lower_terms_strictly_below: bool,
    pub integral: bool,
}

pub fn integral_monomial(a: &ThetaMatrix) -> Result<IntegralExpansion> {
    let r = ((a.sum() - 1) / 2) as usize;
    let word = IntegralWord::for_matrix(a)?;
    let value = word.project(r)?;
    let leading_is_one = value.coeff(a).is_one();
    let lower_terms_strictly_below = value.terms().all(|(b, _)| b == a || b.prec(a));
    let integral = value.is_integral();
    Ok(IntegralExpansion { matrix: a.clone(), word, value, leading_is_one, lower_terms_strictly_below, integral })
}

/// `[A]` as a `Z[v, v^-1]`-combination of projected integral monomials,
/// peeling terms that are maximal for the preorder.
pub fn express_standard_basis(a: &ThetaMatrix, max_steps: usize) -> Result<Vec<(LaurentPoly, IntegralWord)>> {
    let r = ((a.sum() - 1) / 2) as usize;
    let mut rest = SchurElt::basis(a.n(), r, a.clone())?;
    let mut out = Vec::new();
    let mut steps = 0;
    while !rest.is_zero() {
        steps += 1;
        if steps > max_steps {
            return Err(Error::BudgetExceeded(format!("more than {max_steps} inversion steps")));
        }
        let keys: Vec<ThetaMatrix> = rest.terms().map(|(b, _)| b.clone()).collect();
        let top = keys
            .iter()
            .rev()
            .find(|b| !keys.iter().any(|c| b.prec(c)))
            .ok_or_else(|| Error::Triangularity("no maximal term".into()))?
            .clone();
        let c = rest.coeff(&top);
        let coeff = c
            .as_laurent()
            .cloned()
            .ok_or_else(|| Error::Triangularity(format!("non-integral coefficient at {top}")))?;
        let exp = integral_monomial(&top)?;
        if !(exp.leading_is_one && exp.lower_terms_strictly_below) {
            return Err(Error::Triangularity(format!("integral monomial of {top}")));
        }
        rest.add_scaled(&exp.value, &-&c);
        out.push((coeff, exp.word));
    }
    Ok(out)
}

/// Re-evaluates an integral combination in `S(n, r)`.
pub fn evaluate_integral_combination(n: usize, r: usize, combo: &[(LaurentPoly, IntegralWord)]) -> Result<SchurElt> {
    let mut out = SchurElt::zero(n, r);
    for (c, w) in combo {
        out.add_scaled(&w.project(r)?, &RatFunc::from(c.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_involutive_on_letters() {
        let n = 2;
        for l in [Letter::E(1), Letter::F(2), Letter::D(1), Letter::DInv(3), Letter::D(3)] {
            let x = UjPoly::word(n, &[l]);
            let back = omega(&omega(&x));
            assert_eq!(back.terms.len(), 1);
            assert!(back.terms[0].0.is_one());
            assert_eq!(back.terms[0].1, vec![l]);
        }
        let w = omega(&UjPoly::word(1, &[Letter::D(2)]));
        assert_eq!(w.terms[0], (RatFunc::v_pow(-1), vec![Letter::DInv(2)]));
    }

    #[test]
    fn closing_table_holds() {
        for id in closing_table() {
            assert!(id.holds(), "{}", id.term);
        }
    }

    #[test]
    fn out_of_range_letter() {
        assert!(phi(&UjPoly::word(1, &[Letter::E(2)])).is_err());
    }
}
