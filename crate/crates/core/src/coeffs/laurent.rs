//! Laurent polynomials in `v` with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Z[v, v^-1]`.
///
/// Stored as a sparse map from exponent to coefficient; zero coefficients are
/// never stored, so structural equality is equality of polynomials.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates over `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest power of `v`.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// If the polynomial is `c * v^e`, returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Substitutes `v -> v^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution v -> v^0 is not an automorphism");
        Self { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    /// Divides every coefficient by `d`, which must divide each of them.
    pub fn div_exact_scalar(&self, d: &BigInt) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert!((c % d).is_zero());
                    (*e, c / d)
                })
                .collect(),
        }
    }

    /// Exact division in `Z[v, v^-1]`; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = other.as_monomial() {
            let mut out = BTreeMap::new();
            for (k, x) in &self.terms {
                if !(x % c).is_zero() {
                    return None;
                }
                out.insert(k - e, x / c);
            }
            return Some(Self { terms: out });
        }
        let (num, num_shift) = self.to_dense();
        let (den, den_shift) = other.to_dense();
        let (q, r) = super::dense::div_rem_exact_lead(&num, &den)?;
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(&q, num_shift - den_shift))
    }

    /// Dense coefficient vector of `v^-min_exp * self` together with `min_exp`.
    pub(crate) fn to_dense(&self) -> (Vec<BigInt>, i64) {
        let Some(lo) = self.min_exp() else {
            return (Vec::new(), 0);
        };
        let hi = self.max_exp().unwrap_or(lo);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (v, lo)
    }

    pub(crate) fn from_dense(coeffs: &[BigInt], shift: i64) -> Self {
        Self {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c.clone()))
                .collect(),
        }
    }

    /// Evaluates at a nonzero rational value of `v`.
    pub fn eval(&self, v: &BigRational) -> BigRational {
        assert!(!v.is_zero() || self.min_exp().is_none_or(|e| e >= 0));
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(v.clone(), *e as usize)
            } else {
                num_traits::pow(v.recip(), (-*e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Evaluates at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `v^2 - 1 + 3v^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            match *e {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "v")?,
                1 => write!(f, "{abs}v")?,
                _ if unit => write!(f, "v^{e}")?,
                _ => write!(f, "{abs}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to decimal coefficient strings")
            }
            fn visit_map<M: MapAccess<'de>>(self, mut access: M) -> Result<LaurentPoly, M::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, c)) = access.next_entry::<String, String>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    let c: BigInt = c.parse().map_err(de::Error::custom)?;
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentPoly {
        LaurentPoly::v_pow(e)
    }

    #[test]
    fn difference_of_squares() {
        let a = &v(1) + &v(-1);
        let b = &v(1) - &v(-1);
        assert_eq!(&a * &b, &v(2) - &v(-2));
    }

    #[test]
    fn bar_negates_exponents() {
        let p = &LaurentPoly::one() + &v(2);
        assert_eq!(p.bar(), &LaurentPoly::one() + &v(-2));
        assert_eq!(v(3).bar(), v(-3));
        let q = &v(1) + &v(-1);
        assert_eq!(q.bar(), q);
    }

    #[test]
    fn no_zero_terms_after_cancellation() {
        let p = &v(2) - &v(2);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn exact_division() {
        let a = &v(2) - &LaurentPoly::one();
        let b = &v(1) - &LaurentPoly::one();
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, &v(1) + &LaurentPoly::one());
        assert!(b.div_exact(&a).is_none());
        assert_eq!(v(5).div_exact(&v(-2)).unwrap(), v(7));
    }

    #[test]
    fn display_and_json() {
        let p = LaurentPoly::from_terms([(2, 1), (0, -1), (-1, 3)]);
        assert_eq!(p.to_string(), "v^2 - 1 + 3v^-1");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":"3","0":"-1","2":"1"}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
