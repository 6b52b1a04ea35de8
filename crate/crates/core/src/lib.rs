//! Exact computations around line-bundle cohomology in positive
//! characteristic: the binomial chain complexes `C(w)`, torus characters,
//! the incidence-correspondence cohomology of divided powers, and
//! determinantal filtrations modulo Frobenius powers.

pub mod character;
pub mod combinatorics;
pub mod complex;
pub mod determinantal;
pub mod error;
pub mod exec;
pub mod incidence;
pub mod linalg;

pub use character::LaurentPolynomial;
pub use error::{Error, Result};
pub use exec::Exec;
pub use linalg::{IntegerMatrix, Prime, PrimeFieldMatrix};
