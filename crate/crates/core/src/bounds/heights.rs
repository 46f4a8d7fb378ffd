//! Weil and modular heights.
//!
//! Over Q a height is `log max(|m|, n)` and is stored as its integer
//! argument so comparisons stay exact. Over function fields heights are in
//! degree units, normalized so that `h(t) = 1`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::arith::{Field, Rational, RationalFunction};
use crate::curves::{CurveBase, WeierstrassCurve};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HeightValue {
    /// Function-field height in degree units.
    Degree(u64),
    /// `log(arg)` over Q (natural logarithm), `arg >= 1`.
    LogOf(BigUint),
}

impl HeightValue {
    pub fn is_zero(&self) -> bool {
        match self {
            HeightValue::Degree(d) => *d == 0,
            HeightValue::LogOf(a) => a.is_one(),
        }
    }

    /// Floating approximation for display only.
    pub fn approx(&self) -> f64 {
        match self {
            HeightValue::Degree(d) => *d as f64,
            HeightValue::LogOf(a) => match a.to_f64() {
                Some(x) if x.is_finite() => x.ln(),
                _ => a.bits() as f64 * std::f64::consts::LN_2,
            },
        }
    }
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightValue::Degree(d) => write!(f, "{d}"),
            HeightValue::LogOf(a) => write!(f, "log({a})"),
        }
    }
}

/// `h(m/n) = log max(|m|, n)`.
pub fn weil_height_q(x: &Rational) -> HeightValue {
    let num = x.numer().magnitude().clone();
    let den = x.denom().magnitude().clone();
    HeightValue::LogOf(num.max(den).max(BigUint::one()))
}

/// `h(f) = max(deg num, deg den)`.
pub fn weil_height_ff<F: Field>(f: &RationalFunction<F>) -> HeightValue {
    HeightValue::Degree(f.degree() as u64)
}

/// Weil height of the j-invariant.
pub trait ModularHeight {
    fn modular_height(&self) -> HeightValue;
}

impl ModularHeight for WeierstrassCurve<Rational> {
    fn modular_height(&self) -> HeightValue {
        weil_height_q(&self.j_invariant())
    }
}

impl<F: Field> ModularHeight for WeierstrassCurve<RationalFunction<F>>
where
    RationalFunction<F>: CurveBase,
{
    fn modular_height(&self) -> HeightValue {
        weil_height_ff(&self.j_invariant())
    }
}

/// Convenience for integer inputs.
pub fn weil_height_int(n: i64) -> HeightValue {
    weil_height_q(&Rational::from_integer(BigInt::from(n)))
}
