//! Exact linear algebra over F_p and over the integers.

mod dense;
mod integer;
mod matrix;
mod prime;
mod sparse;

pub use integer::{IntegerMatrix, SMITH_LIMIT};
pub use matrix::{PrimeFieldMatrix, RankConfig, DEFAULT_SPARSE_THRESHOLD};
pub use prime::{is_prime, Prime, MAX_PRIME_EXCLUSIVE};
