//! Exact integer and univariate integer-polynomial arithmetic.

mod lattice;
mod poly;
mod primes;

pub use lattice::lattice_index;
pub use num_bigint::BigInt;
pub use poly::{bareiss_det, resultant, IntPoly};
pub use primes::{factorize, is_prime, PrimeFactorization};
