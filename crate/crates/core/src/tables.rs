//! Full multiplication tables of `S(n, r)` by two independent routes: the
//! generator formulas (through integral monomials) and the double-coset
//! oracle.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::quantum::factorial;
use crate::coeffs::{LaurentPoly, RatFunc};
use crate::error::{Error, Result};
use crate::hecke::SchurOracle;
use crate::iquantum::{express_standard_basis, kbinom_product, IntegralWord};
use crate::schur::{apply_generator, oracle_product, Generator, SchurElt};
use crate::stabilized::{pi_r, WordFactor};
use crate::theta::{enumerate_xi, ThetaMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableBasis {
    /// `[A]`.
    Normalized,
    /// `e_A`, the unnormalized double-coset basis.
    Standard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableRoute {
    Formula,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub left: usize,
    pub right: usize,
    pub product: Vec<(usize, RatFunc)>,
}

/// Products of every ordered pair of basis elements; pairs with a
/// mismatched middle weight are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulTable {
    pub n: usize,
    pub r: usize,
    pub basis_kind: TableBasis,
    pub basis: Vec<ThetaMatrix>,
    pub entries: Vec<TableEntry>,
}

/// Applies a divided power or diagonal factor on the left in `S(n, r)`.
fn apply_factor(f: &WordFactor, x: &SchurElt) -> Result<SchurElt> {
    let (g, m) = match f {
        WordFactor::Diag(j) => return apply_generator(&Generator::O(j.clone()), x),
        WordFactor::Raise { h, m } => (Generator::E(*h), *m),
        WordFactor::Lower { h, m } => (Generator::F(*h), *m),
    };
    let mut acc = x.clone();
    for _ in 0..m {
        acc = apply_generator(&g, &acc)?;
    }
    Ok(acc.scale(&RatFunc::from(factorial(m as i64)?).inv()?))
}

/// `d x` for `d` a combination of idempotents `[diag(mu)]`.
fn diag_mul(d: &SchurElt, x: &SchurElt) -> Result<SchurElt> {
    let mut out = SchurElt::zero(x.n(), x.r());
    for (a, c) in x.terms() {
        let k = d.coeff(&ThetaMatrix::diag(&a.ro())?);
        if !k.is_zero() {
            out.add_term(a.clone(), &(c * &k));
        }
    }
    Ok(out)
}

/// `pi_r(m^(A)) x`, evaluated factor by factor in `S(n, r)`.
pub fn apply_integral_word(w: &IntegralWord, x: &SchurElt) -> Result<SchurElt> {
    let mut acc = x.clone();
    for f in w.monomial.factors.iter().rev() {
        acc = apply_factor(f, &acc)?;
    }
    let prefix = pi_r(&kbinom_product(&w.lambda)?, x.r())?;
    if prefix.terms().any(|(a, _)| !a.is_diagonal()) {
        return Err(Error::Internal("binomial prefix is not diagonal".into()));
    }
    diag_mul(&prefix, &acc)
}

fn peel_budget(n: usize, r: usize) -> usize {
    100 * enumerate_xi(n, r as i64).len()
}

/// `[A][B]` through the integral monomial expansion of `[A]`.
pub fn formula_product(a: &ThetaMatrix, b: &ThetaMatrix) -> Result<SchurElt> {
    let r = ((b.sum() - 1) / 2) as usize;
    let combo = express_standard_basis(a, peel_budget(a.n(), r))?;
    let y = SchurElt::basis(b.n(), r, b.clone())?;
    formula_product_with(&combo, &y)
}

fn formula_product_with(combo: &[(LaurentPoly, IntegralWord)], y: &SchurElt) -> Result<SchurElt> {
    let mut out = SchurElt::zero(y.n(), y.r());
    for (c, w) in combo {
        out.add_scaled(&apply_integral_word(w, y)?, &RatFunc::from(c.clone()));
    }
    Ok(out)
}

fn to_entry(
    basis_kind: TableBasis,
    index: &BTreeMap<ThetaMatrix, usize>,
    left: usize,
    right: usize,
    x: &SchurElt,
) -> Result<TableEntry> {
    let terms = match basis_kind {
        TableBasis::Normalized => x.terms().map(|(a, c)| (a.clone(), c.clone())).collect(),
        TableBasis::Standard => x.to_e_basis()?,
    };
    let mut product: Vec<(usize, RatFunc)> = terms.into_iter().map(|(a, c)| (index[&a], c)).collect();
    product.sort_by_key(|(i, _)| *i);
    Ok(TableEntry { left, right, product })
}

/// The full table for `(n, r)` by the chosen route.
pub fn mul_table(n: usize, r: usize, route: TableRoute, basis_kind: TableBasis) -> Result<MulTable> {
    let basis = enumerate_xi(n, r as i64);
    let index: BTreeMap<ThetaMatrix, usize> = basis.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| basis[i].co() == basis[j].ro())
        .collect();

    let products: Vec<SchurElt> = match route {
        TableRoute::Oracle => {
            let oracle = SchurOracle::new(n, r);
            pairs.par_iter().map(|&(i, j)| oracle_product(&oracle, &basis[i], &basis[j])).collect::<Result<_>>()?
        }
        TableRoute::Formula => {
            let combos: Vec<Vec<(LaurentPoly, IntegralWord)>> =
                basis.par_iter().map(|a| express_standard_basis(a, peel_budget(n, r))).collect::<Result<_>>()?;
            pairs
                .par_iter()
                .map(|&(i, j)| formula_product_with(&combos[i], &SchurElt::basis(n, r, basis[j].clone())?))
                .collect::<Result<_>>()?
        }
    };
    let entries =
        pairs.iter().zip(&products).map(|(&(i, j), x)| to_entry(basis_kind, &index, i, j, x)).collect::<Result<_>>()?;
    Ok(MulTable { n, r, basis_kind, basis, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_row() {
        let n = 1;
        let d = ThetaMatrix::from_composition(&crate::theta::Composition::new(vec![1, 0]).unwrap());
        for b in enumerate_xi(n, 1) {
            let p = formula_product(&d, &b).unwrap();
            if b.ro() == d.ro() {
                assert_eq!(p, SchurElt::basis(n, 1, b).unwrap());
            } else {
                assert!(p.is_zero());
            }
        }
    }
}
