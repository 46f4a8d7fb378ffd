//! Dense univariate polynomials, lowest degree first.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::ring::{Field, Fp, PrimeModulus, Rational, Ring};
use crate::error::{Error, Result};

/// Dense polynomial `c[0] + c[1] t + ... + c[d] t^d`.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

/// Polynomials in Z[t], the input format of curve families.
pub type IntPoly = Poly<BigInt>;

impl<R: Ring> Poly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `t` with coefficients in the domain of `like`.
    pub fn variable(like: &R) -> Self {
        Poly { coeffs: vec![like.zero_like(), like.one_like()] }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0, as used by heights.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn negated(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Ring::negated).collect() }
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    pub fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let Some(first) = self.coeffs.first() else {
            return Self::zero();
        };
        let mut acc = Self::constant(first.one_like());
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division: `self = q * rhs + r` with `deg r < deg rhs`.
    pub fn div_rem(&self, rhs: &Self) -> Result<(Self, Self)> {
        let lead_inv = rhs
            .leading()
            .ok_or(Error::ZeroDenominator)?
            .inverse()
            .ok_or(Error::ZeroDenominator)?;
        let dr = rhs.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dr {
            return Ok((Self::zero(), self.clone()));
        }
        let zero = lead_inv.zero_like();
        let mut quot = vec![zero; rem.len() - dr];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dr].times(&lead_inv);
            if !c.is_zero_elem() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].minus(&c.times(b));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dr);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Scale to a monic polynomial; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl IntPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn reduce_mod(&self, m: PrimeModulus) -> Poly<Fp> {
        self.map(|c| Fp::from_bigint(c, m))
    }

    pub fn to_rational(&self) -> Poly<Rational> {
        self.map(|c| Rational::from_integer(c.clone()))
    }

    /// Exact division in Z[t]; fails unless `rhs` divides `self` exactly.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.to_rational().div_rem(&rhs.to_rational())?;
        if !r.is_zero() || q.coeffs.iter().any(|c| !c.is_integer()) {
            return Err(Error::InvalidInput("inexact division in Z[t]".into()));
        }
        Ok(q.map(|c| c.to_integer()))
    }

    /// Value at `m/n` as an exact rational.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.to_rational().eval(x)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    /// Coefficient list form, e.g. `[1,0,1]` for `1 + t^2`; zero is `[0]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parse `[c0,c1,...]` integer lists.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [c0,c1,...], got {s:?}")))?;
        if inner.trim().is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let coeffs = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_examples() {
        let m = PrimeModulus::new(5).unwrap();
        let f = IntPoly::from_i64s(&[1, 0, 1]).reduce_mod(m);
        assert_eq!(f.eval(&m.elem(2)).value(), 0);
        assert_eq!(Poly::<Fp>::zero().eval(&m.elem(3)).value(), 0);

        // -16(4t^3 + 27) at t = 1 is -16 * 31 = -496.
        let disc = IntPoly::from_i64s(&[-432, 0, 0, -64]);
        assert_eq!(disc.eval_rational(&q(1, 1)), q(-496, 1));
    }

    #[test]
    fn div_rem_and_gcd() {
        let m = PrimeModulus::new(5).unwrap();
        let a = IntPoly::from_i64s(&[-1, 0, 1]).reduce_mod(m);
        let b = IntPoly::from_i64s(&[-1, 1]).reduce_mod(m);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, IntPoly::from_i64s(&[1, 1]).reduce_mod(m));
        assert_eq!(a.gcd(&b), b);
        assert!(a.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn exact_division_over_z() {
        let a = IntPoly::from_i64s(&[-1, 0, 1]);
        let b = IntPoly::from_i64s(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), IntPoly::from_i64s(&[-1, 1]));
        assert!(a.exact_div(&IntPoly::from_i64s(&[0, 2])).is_err());
    }

    #[test]
    fn parse_and_display() {
        let p: IntPoly = "[1, 0, 1]".parse().unwrap();
        assert_eq!(p.to_string(), "[1,0,1]");
        let z: IntPoly = "[0,0]".parse().unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "[0]");
        assert!("1,2".parse::<IntPoly>().is_err());
        assert!("[]".parse::<IntPoly>().is_err());
        assert!("[1,x]".parse::<IntPoly>().is_err());
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn eval_is_multiplicative(f in small_poly(), g in small_poly(), x in -20i64..20, d in 1i64..9) {
            let x = q(x, d);
            prop_assert_eq!(
                f.times(&g).eval_rational(&x),
                f.eval_rational(&x) * g.eval_rational(&x)
            );
            let m = PrimeModulus::new(101).unwrap();
            let xf = Fp::from_rational(&x, m).unwrap();
            let lhs = f.times(&g).reduce_mod(m).eval(&xf);
            let rhs = f.reduce_mod(m).eval(&xf).times(&g.reduce_mod(m).eval(&xf));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn division_identity(f in small_poly(), g in small_poly()) {
            prop_assume!(!g.is_zero());
            let (fq, gq) = (f.to_rational(), g.to_rational());
            let (quot, rem) = fq.div_rem(&gq).unwrap();
            prop_assert!(rem.degree().is_none_or(|d| d < gq.degree().unwrap()));
            prop_assert_eq!(quot.times(&gq).plus(&rem), fq);
        }
    }
}
