//! Exact computation in type-B q-Schur algebras, their stabilized limit, and
//! the i-quantum group realized inside it.

pub mod coeffs;
pub mod error;
pub mod hecke;
pub mod iquantum;
pub mod linalg;
pub mod schur;
pub mod stabilized;
pub mod tables;
pub mod tensor;
pub mod theta;

pub use coeffs::{LaurentPoly, QuantumValue, RatFunc};
pub use error::{Error, Result};
