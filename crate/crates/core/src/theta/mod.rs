//! Index combinatorics: compositions, centro-symmetric matrices, weights,
//! the corner-sum preorder and the triple order.

mod composition;
mod matrix;
mod weight;

pub use composition::{weak_compositions, Composition};
pub use matrix::{enumerate_xi, enumerate_zero_diag, triple_order, PreorderRelation, ThetaMatrix};
pub use weight::SignedWeight;
