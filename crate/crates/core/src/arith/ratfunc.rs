//! Rational functions `num(t) / den(t)` over a field, kept in canonical form.

use std::fmt;

use super::poly::Poly;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Reduced quotient of polynomials: `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RationalFunction<F> {
    /// Canonical form of `num / den`.
    pub fn reduce(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let one = den.leading().expect("nonzero").one_like();
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Poly::constant(one) });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lc_inv = den.leading().expect("nonzero").inverse().expect("field");
        Ok(RationalFunction { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn from_poly(p: Poly<F>, like: &F) -> Self {
        RationalFunction { num: p, den: Poly::constant(like.one_like()) }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        RationalFunction { num: Poly::constant(c), den: Poly::constant(one) }
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.den
    }

    /// True when both numerator and denominator have degree 0.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// `max(deg num, deg den)`, the degree of the induced map to P^1.
    pub fn degree(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    /// Value at `x`; `PoleAtPoint` when the denominator vanishes there.
    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        self.num.eval(x).divided(&d).ok_or(Error::PoleAtPoint)
    }

    fn unit(&self) -> F {
        self.den.leading().expect("denominator is nonzero").one_like()
    }
}

impl<F: Field> Ring for RationalFunction<F> {
    fn zero_like(&self) -> Self {
        Self::from_poly(Poly::zero(), &self.unit())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.unit())
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(self.unit().from_int_like(n))
    }
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let num = self.num.times(&rhs.den).plus(&rhs.num.times(&self.den));
        Self::reduce(num, self.den.times(&rhs.den)).expect("product of nonzero denominators")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        Self::reduce(self.num.times(&rhs.num), self.den.times(&rhs.den))
            .expect("product of nonzero denominators")
    }
    fn negated(&self) -> Self {
        RationalFunction { num: self.num.negated(), den: self.den.clone() }
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()).expect("nonzero"))
        }
    }
}

impl<F: Field + fmt::Display> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{IntPoly, PrimeModulus, Rational};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reduce_examples() {
        let m = PrimeModulus::new(5).unwrap();
        let f = RationalFunction::reduce(
            IntPoly::from_i64s(&[-1, 0, 1]).reduce_mod(m),
            IntPoly::from_i64s(&[-1, 1]).reduce_mod(m),
        )
        .unwrap();
        assert_eq!(f.numerator(), &IntPoly::from_i64s(&[1, 1]).reduce_mod(m));
        assert_eq!(f.denominator(), &IntPoly::from_i64s(&[1]).reduce_mod(m));

        let t = RationalFunction::reduce(
            IntPoly::from_i64s(&[0, 1]).to_rational(),
            IntPoly::from_i64s(&[1]).to_rational(),
        )
        .unwrap();
        assert_eq!(t.numerator(), &IntPoly::from_i64s(&[0, 1]).to_rational());

        // (2t + 2) / 4 = t/2 + 1/2 over Q
        let h = RationalFunction::reduce(
            IntPoly::from_i64s(&[2, 2]).to_rational(),
            IntPoly::from_i64s(&[4]).to_rational(),
        )
        .unwrap();
        assert_eq!(h.numerator().coeffs(), &[q(1, 2), q(1, 2)]);
        assert_eq!(h.denominator().coeffs(), &[q(1, 1)]);
    }

    #[test]
    fn zero_denominator_rejected() {
        let r = RationalFunction::<Rational>::reduce(
            IntPoly::from_i64s(&[1]).to_rational(),
            Poly::zero(),
        );
        assert_eq!(r.unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn pole_detection() {
        let f = RationalFunction::reduce(
            IntPoly::from_i64s(&[1]).to_rational(),
            IntPoly::from_i64s(&[-1, 1]).to_rational(),
        )
        .unwrap();
        assert_eq!(f.eval(&q(1, 1)), Err(Error::PoleAtPoint));
        assert_eq!(f.eval(&q(3, 1)).unwrap(), q(1, 2));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-9i64..9, 0..5).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_canonical(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let m = PrimeModulus::new(13).unwrap();
            let (num, den) = (a.reduce_mod(m), b.reduce_mod(m));
            if !den.is_zero() {
                let r = RationalFunction::reduce(num, den).unwrap();
                let again = RationalFunction::reduce(r.numerator().clone(), r.denominator().clone()).unwrap();
                prop_assert_eq!(&again, &r);
                prop_assert!(r.denominator().leading().unwrap().is_one_elem());
                prop_assert_eq!(r.numerator().gcd(r.denominator()).degree(), Some(0));
            }
            let r = RationalFunction::reduce(a.to_rational(), b.to_rational()).unwrap();
            let again = RationalFunction::reduce(r.numerator().clone(), r.denominator().clone()).unwrap();
            prop_assert_eq!(&again, &r);
            prop_assert!(r.denominator().leading().unwrap().is_one_elem());
        }
    }
}
