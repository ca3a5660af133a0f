//! The field `Q(v)`, stored as canonical quotients of Laurent polynomials.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dense;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// A rational function `num / den` in canonical form:
///
/// * `den` is an ordinary polynomial in `v` with nonzero constant term and
///   positive leading coefficient,
/// * `num` and `den` are coprime in `Z[v, v^-1]` and share no integer content,
/// * zero is `0 / 1`.
///
/// Any two equal rational functions therefore have identical fields.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

/// Input also accepts a bare Laurent polynomial map such as `{"0": "1"}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum RatFuncInput {
    Quotient(RatFuncRepr),
    Laurent(LaurentPoly),
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RatFuncInput::deserialize(d)? {
            RatFuncInput::Quotient(r) => RatFunc::new(r.num, r.den).map_err(serde::de::Error::custom),
            RatFuncInput::Laurent(p) => Ok(RatFunc::from(p)),
        }
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    pub fn v_pow(e: i64) -> Self {
        Self::from(LaurentPoly::v_pow(e))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from(LaurentPoly::constant(c))
    }

    /// `num / den`, canonicalized.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonicalize(num, den))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in `Z[v, v^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn into_laurent(self) -> Option<LaurentPoly> {
        self.is_laurent().then_some(self.num)
    }

    /// Re-establishes the canonical form. Idempotent on canonical inputs.
    pub fn canonical(&self) -> Self {
        Self::canonicalize(self.num.clone(), self.den.clone())
    }

    fn canonicalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = den.as_monomial() {
            let mut g = num.content().gcd(c);
            if c.is_negative() {
                g = -g;
            }
            let den = LaurentPoly::constant(c / &g);
            return Self { num: num.div_exact_scalar(&g).shift(-e), den };
        }
        let (n_dense, n_shift) = num.to_dense();
        let (d_dense, d_shift) = den.to_dense();
        let g = dense::primitive_gcd(&n_dense, &d_dense);
        let (mut n_red, mut d_red) = if g.len() > 1 {
            let (qn, _) = dense::div_rem_exact_lead(&n_dense, &g).expect("gcd divides numerator");
            let (qd, _) = dense::div_rem_exact_lead(&d_dense, &g).expect("gcd divides denominator");
            (qn, qd)
        } else {
            (n_dense, d_dense)
        };
        let c = dense::content(&n_red).gcd(&dense::content(&d_red));
        let sign_flip = d_red.last().is_some_and(|x| x.is_negative());
        let c = if sign_flip { -c } else { c };
        if !c.is_one() {
            for x in n_red.iter_mut() {
                *x = &*x / &c;
            }
            for x in d_red.iter_mut() {
                *x = &*x / &c;
            }
        }
        dense::trim(&mut n_red);
        dense::trim(&mut d_red);
        // d_red may have lost its constant term only if gcd carried it; strip
        // any leading zero coefficients of the denominator into the shift.
        let lead_zeros = d_red.iter().take_while(|x| x.is_zero()).count();
        let d_red = d_red[lead_zeros..].to_vec();
        let num = LaurentPoly::from_dense(&n_red, n_shift - d_shift - lead_zeros as i64);
        let den = LaurentPoly::from_dense(&d_red, 0);
        Self { num, den }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self::canonicalize(self.num.scale(&BigInt::from(c)), self.den.clone())
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self::canonicalize(self.num.bar(), self.den.bar())
    }

    /// Substitutes `v -> v^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::canonicalize(self.num.substitute_power(k), self.den.substitute_power(k))
    }

    /// Evaluates at a rational `v`; `None` if `v` is a pole.
    pub fn eval(&self, v: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(v) / d)
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }
}

impl From<&LaurentPoly> for RatFunc {
    fn from(p: &LaurentPoly) -> Self {
        Self::from(p.clone())
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc { num: &self.num + &rhs.num, den: LaurentPoly::one() };
            }
            return RatFunc::canonicalize(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::canonicalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num -= &rhs.num;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        RatFunc::canonicalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Mul<&LaurentPoly> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &LaurentPoly) -> RatFunc {
        self * &RatFunc::from(rhs)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
