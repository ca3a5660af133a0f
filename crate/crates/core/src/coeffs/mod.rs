//! Exact coefficients: Laurent polynomials over `Z`, the field `Q(v)`, and
//! quantum numbers.

mod dense;
pub mod laurent;
pub mod quantum;
pub mod ratfunc;

pub use laurent::LaurentPoly;
pub use quantum::QuantumValue;
pub use ratfunc::RatFunc;
