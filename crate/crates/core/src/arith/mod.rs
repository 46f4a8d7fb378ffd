//! Exact arithmetic: word-sized modular arithmetic, prime fields, rationals,
//! dense polynomials and rational functions.

mod poly;
pub mod prime;
mod ratfunc;
mod ring;

pub use poly::{IntPoly, Poly};
pub use prime::{is_prime, legendre, primes_in, primes_up_to};
pub use ratfunc::RationalFunction;
pub use ring::{Field, Fp, PrimeModulus, Rational, Ring};

/// Canonical reduced form of `num / den`.
pub fn rat_reduce<F: Field>(num: Poly<F>, den: Poly<F>) -> crate::Result<RationalFunction<F>> {
    RationalFunction::reduce(num, den)
}
