//! Rank of matrices over an exact field by Gaussian elimination.

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeffs::RatFunc;

/// The field operations elimination needs.
pub trait Field: Clone {
    fn is_zero(&self) -> bool;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
}

impl Field for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Field for RatFunc {
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self.checked_div(other).expect("pivot is nonzero")
    }
}

/// Rank of a sparse matrix given as rows of `(column, value)` pairs.
/// Rows are reduced against the pivots found so far, one at a time.
pub fn sparse_rank<F: Field>(rows: Vec<Vec<(usize, F)>>) -> usize {
    // pivot column -> normalized row with leading entry 1 at that column
    let mut pivots: std::collections::BTreeMap<usize, Vec<(usize, F)>> = std::collections::BTreeMap::new();
    for row in rows {
        let mut cur: std::collections::BTreeMap<usize, F> = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        loop {
            let Some((&col, lead)) = cur.iter().find(|(c, _)| pivots.contains_key(c)).map(|(c, x)| (c, x.clone()))
            else {
                break;
            };
            for (c, x) in &pivots[&col] {
                let delta = x.mul(&lead);
                let entry = cur.remove(c);
                let next = match entry {
                    Some(y) => y.sub(&delta),
                    None => zero_like(&delta).sub(&delta),
                };
                if !next.is_zero() {
                    cur.insert(*c, next);
                }
            }
        }
        if let Some((&col, lead)) = cur.iter().next().map(|(c, x)| (c, x.clone())) {
            let normalized: Vec<(usize, F)> = cur.iter().map(|(c, x)| (*c, x.div(&lead))).collect();
            pivots.insert(col, normalized);
        }
    }
    pivots.len()
}

fn zero_like<F: Field>(x: &F) -> F {
    x.sub(x)
}

/// `v` specialized at a rational point, then rank.
pub fn rank_at(rows: &[Vec<(usize, RatFunc)>], v: &BigRational) -> Option<usize> {
    let mut spec = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(row.len());
        for (c, x) in row {
            out.push((*c, x.eval(v)?));
        }
        spec.push(out);
    }
    Some(sparse_rank(spec))
}
