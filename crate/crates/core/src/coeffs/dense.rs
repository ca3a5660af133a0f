//! Dense univariate polynomials over `Z`, index = degree. Only what the
//! rational-function canonical form needs: division, content, gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Division over `Z` that succeeds only when every quotient coefficient is
/// integral. Returns `(quotient, remainder)`.
pub(crate) fn div_rem_exact_lead(num: &[BigInt], den: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let dd = degree(den)?;
    let lead = &den[dd];
    let mut rem = num.to_vec();
    trim(&mut rem);
    if rem.len() <= dd {
        return Some((Vec::new(), rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while let Some(rd) = degree(&rem) {
        if rd < dd {
            break;
        }
        let (q, r) = rem[rd].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        let shift = rd - dd;
        for (i, c) in den.iter().enumerate().take(dd + 1) {
            rem[i + shift] -= &q * c;
        }
        quot[shift] = q;
        trim(&mut rem);
    }
    trim(&mut quot);
    Some((quot, rem))
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^k a mod b` with integer arithmetic.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b).expect("pseudo_rem by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    trim(&mut rem);
    while let Some(rd) = degree(&rem) {
        if rd < db {
            break;
        }
        let top = rem[rd].clone();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        let shift = rd - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            rem[i + shift] -= &top * c;
        }
        trim(&mut rem);
    }
    rem
}

/// Primitive gcd of two polynomials over `Z` (content ignored), normalized to
/// a positive leading coefficient. `gcd(0, 0)` is empty.
pub(crate) fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    trim(&mut x);
    trim(&mut y);
    if x.is_empty() {
        return normalize_sign(y);
    }
    if y.is_empty() {
        return normalize_sign(x);
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
        trim(&mut y);
    }
    normalize_sign(x)
}

fn normalize_sign(mut p: Vec<BigInt>) -> Vec<BigInt> {
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -c.clone();
        }
    }
    p
}
