//! Coefficient domains: the minimal ring/field interface shared by
//! polynomials, rational functions and Weierstrass curves.
//!
//! Elements of prime fields carry their modulus, so constants are built
//! from an existing element (`zero_like`, `from_int_like`) rather than from
//! a global context.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::prime::{add_mod, inv_mod, mul_mod, reduce_i64, sub_mod, MAX_MODULUS};
use super::prime::is_prime;
use crate::error::{Error, Result};

/// Rational numbers with arbitrary-precision numerator and denominator.
/// Always reduced with a positive denominator.
pub type Rational = BigRational;

pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    fn is_one_elem(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u32(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;

    fn divided(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.times(&inv))
    }
}

/// A prime modulus, validated once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn elem(self, v: i64) -> Fp {
        Fp { v: reduce_i64(v, self.0), p: self.0 }
    }

    pub fn elem_u64(self, v: u64) -> Fp {
        Fp { v: v % self.0, p: self.0 }
    }
}

/// Element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Reduce an arbitrary-precision integer into F_p.
    pub fn from_bigint(n: &BigInt, m: PrimeModulus) -> Fp {
        let p = BigInt::from(m.get());
        let r = ((n % &p) + &p) % &p;
        m.elem_u64(u64::try_from(r).expect("residue fits in u64"))
    }

    /// Reduce a rational into F_p; `None` when p divides the denominator.
    pub fn from_rational(q: &Rational, m: PrimeModulus) -> Option<Fp> {
        let den = Fp::from_bigint(q.denom(), m);
        Fp::from_bigint(q.numer(), m).divided(&den)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fp { v: reduce_i64(n, self.p), p: self.p }
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: add_mod(self.v, rhs.v, self.p), p: self.p }
    }
    fn minus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: sub_mod(self.v, rhs.v, self.p), p: self.p }
    }
    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: mul_mod(self.v, rhs.v, self.p), p: self.p }
    }
    fn negated(&self) -> Self {
        Fp { v: sub_mod(0, self.v, self.p), p: self.p }
    }
}

impl Field for Fp {
    fn inverse(&self) -> Option<Self> {
        inv_mod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let m = PrimeModulus::new(7).unwrap();
        let a = m.elem(3);
        let b = m.elem(-2);
        assert_eq!(b.value(), 5);
        assert_eq!(a.plus(&b).value(), 1);
        assert_eq!(a.minus(&b).value(), 5);
        assert_eq!(a.times(&b).value(), 1);
        assert_eq!(a.inverse().unwrap().value(), 5);
        assert!(m.elem(0).inverse().is_none());
        assert_eq!(a.pow_u32(6).value(), 1);
    }

    #[test]
    fn modulus_validation() {
        assert!(PrimeModulus::new(9).is_err());
        assert!(PrimeModulus::new(0).is_err());
        assert!(PrimeModulus::new(2).is_ok());
    }

    #[test]
    fn rational_reduction_into_fp() {
        let m = PrimeModulus::new(5).unwrap();
        let q = Rational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(Fp::from_rational(&q, m).unwrap().value(), 4);
        let bad = Rational::new(BigInt::from(1), BigInt::from(10));
        assert!(Fp::from_rational(&bad, m).is_none());
        assert_eq!(Fp::from_bigint(&BigInt::from(-496), m).value(), 4);
    }
}
