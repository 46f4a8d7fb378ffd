//! Effective surjectivity constants.
//!
//! All values are exact. Radicals `g^{3/2}` are carried as `a * sqrt(r)` with
//! `r` squarefree and compared by squaring, never through floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::heights::HeightValue;
use crate::arith::primes_up_to;
use crate::error::{Error, Result};

/// Leading constant of the genus-uniform product threshold.
pub const PRODUCT_CONSTANT: u64 = 3_176_523;

/// Threshold on ℓ used by the family results: primes `ℓ >= 3176533`.
pub const FAMILY_THRESHOLD: u64 = 3_176_533;

/// Floor asserted for the single-curve threshold at genus 0.
pub const C0_ASSERTED: u64 = 17;

/// `+1` iff `q ≡ 1 (mod 4)`.
pub fn e2(q: u64) -> i64 {
    if q % 4 == 1 {
        1
    } else {
        -1
    }
}

/// `+1` iff `q ≡ 1 (mod 3)`.
pub fn e3(q: u64) -> i64 {
    if q % 3 == 1 {
        1
    } else {
        -1
    }
}

/// Both readings of the single-curve threshold `c(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CThreshold {
    /// `2 + max{q prime : (q - (6 + 3 e2(q) + 4 e3(q))) / 12 <= g}` evaluated
    /// literally.
    pub literal: u64,
    /// `max(literal, 17)`: the value consumed downstream.
    pub conservative: u64,
}

/// `c(g)`. The admissible set is finite since `6 + 3e2 + 4e3 <= 13` forces
/// `q <= 12g + 13`.
pub fn c_of_g(g: u64) -> CThreshold {
    let bound = 12 * g + 14;
    let q_max = primes_up_to(bound)
        .into_iter()
        .filter(|&q| q as i64 - (6 + 3 * e2(q) + 4 * e3(q)) <= 12 * g as i64)
        .max()
        .expect("q = 2 always qualifies");
    let literal = 2 + q_max;
    CThreshold { literal, conservative: literal.max(C0_ASSERTED) }
}

/// Exact nonnegative number `coefficient * sqrt(radicand)`, radicand squarefree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdValue {
    coefficient: BigUint,
    radicand: u64,
}

impl SurdValue {
    pub fn integer(n: impl Into<BigUint>) -> Self {
        SurdValue { coefficient: n.into(), radicand: 1 }
    }

    /// `coefficient * sqrt(radicand)` normalized so the radicand is squarefree.
    pub fn new(coefficient: impl Into<BigUint>, radicand: u64) -> Self {
        let mut c: BigUint = coefficient.into();
        if radicand == 0 || c.is_zero() {
            return SurdValue { coefficient: BigUint::zero(), radicand: 1 };
        }
        let (s, r) = square_split(radicand);
        c *= s;
        SurdValue { coefficient: c, radicand: r }
    }

    /// `x^{3/2} = x * sqrt(x)`.
    pub fn three_halves_power(x: u64) -> Self {
        Self::new(x, x)
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_integer(&self) -> bool {
        self.radicand == 1
    }

    pub fn as_integer(&self) -> Option<&BigUint> {
        self.is_integer().then_some(&self.coefficient)
    }

    /// `value^2 = coefficient^2 * radicand`, exact.
    pub fn squared(&self) -> BigUint {
        &self.coefficient * &self.coefficient * self.radicand
    }

    pub fn scale(&self, k: u64) -> Self {
        SurdValue { coefficient: &self.coefficient * k, radicand: self.radicand }
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::INFINITY) * (self.radicand as f64).sqrt()
    }

    /// `true` iff `value < n`, decided exactly.
    pub fn is_below(&self, n: u64) -> bool {
        self.squared() < BigUint::from(n) * n
    }
}

/// `n = s^2 r` with `r` squarefree.
fn square_split(mut n: u64) -> (u64, u64) {
    let mut s = 1;
    let mut r = 1;
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        s *= d.pow(k / 2);
        if k % 2 == 1 {
            r *= d;
        }
        d += 1;
    }
    (s, r * n)
}

impl Ord for SurdValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.squared().cmp(&other.squared())
    }
}

impl PartialOrd for SurdValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.coefficient)
        } else {
            write!(f, "{}*sqrt({})", self.coefficient, self.radicand)
        }
    }
}

impl FromStr for SurdValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad exact value {s:?}"));
        match s.split_once("*sqrt(") {
            None => Ok(SurdValue::integer(s.trim().parse::<BigUint>().map_err(|_| bad())?)),
            Some((c, r)) => {
                let c: BigUint = c.trim().parse().map_err(|_| bad())?;
                let r: u64 = r.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Ok(SurdValue::new(c, r))
            }
        }
    }
}

impl Serialize for SurdValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SurdValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `C(g) = 3176523 * max{1, g^{3/2}}`.
#[allow(non_snake_case)]
pub fn C_of_g(g: u64) -> SurdValue {
    if g <= 1 {
        SurdValue::integer(PRODUCT_CONSTANT)
    } else {
        SurdValue::three_halves_power(g).scale(PRODUCT_CONSTANT)
    }
}

/// `c(g)` (conservative) for a single curve, `C(g)` for products.
pub fn c_tilde(g: u64, n: usize) -> Result<SurdValue> {
    match n {
        0 => Err(Error::InvalidInput("number of factors must be at least 1".into())),
        1 => Ok(SurdValue::integer(c_of_g(g).conservative)),
        _ => Ok(C_of_g(g)),
    }
}

/// `C' = max{c(g), 27 * max_{i<j}(h_i h_j)^{3/2}}` from degree-normalized
/// modular heights.
pub fn c_prime(g: u64, hmods: &[HeightValue]) -> Result<SurdValue> {
    if hmods.len() < 2 {
        return Err(Error::TooFewFactors(hmods.len()));
    }
    let degrees = hmods
        .iter()
        .map(|h| match h {
            HeightValue::Degree(d) => Ok(*d),
            HeightValue::LogOf(_) => Err(Error::InvalidInput(
                "modular-height threshold needs function-field (degree) heights".into(),
            )),
        })
        .collect::<Result<Vec<u64>>>()?;
    let mut best = 0u64;
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            best = best.max(degrees[i] * degrees[j]);
        }
    }
    let second = SurdValue::three_halves_power(best).scale(27);
    Ok(second.max(SurdValue::integer(c_of_g(g).conservative)))
}

/// All named constants and bounds at genus `g` for `n` factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub g: u64,
    pub n: usize,
    pub c_literal: u64,
    pub c_conservative: u64,
    pub big_c: SurdValue,
    pub c_tilde: SurdValue,
    pub isogeny_ec_genus: u64,
    pub isogeny_surface_genus: u64,
}

impl BoundReport {
    pub fn new(g: u64, n: usize) -> Result<Self> {
        let c = c_of_g(g);
        Ok(BoundReport {
            g,
            n,
            c_literal: c.literal,
            c_conservative: c.conservative,
            big_c: C_of_g(g),
            c_tilde: c_tilde(g, n)?,
            isogeny_ec_genus: super::isogeny::isogeny_bound_ec_genus(g),
            isogeny_surface_genus: super::isogeny::isogeny_bound_surface_genus(g),
        })
    }
}

/// `true` when `ell` clears the single-curve threshold `ℓ >= c(g)`.
pub fn clears_single_threshold(ell: u64, g: u64) -> bool {
    ell >= c_of_g(g).conservative
}

/// `true` when `ell` clears the product threshold `ℓ > C̃(g)` (strict).
pub fn clears_product_threshold(ell: u64, g: u64, n: usize) -> Result<bool> {
    Ok(c_tilde(g, n)?.is_below(ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    #[test]
    fn e_signs() {
        assert_eq!(e2(5), 1);
        assert_eq!((e2(7), e3(7)), (-1, 1));
        assert_eq!(e3(2), -1);
        assert_eq!(e2(2), -1);
        assert_eq!(e3(3), -1);
    }

    /// Oracle: walk every prime q <= 14 and test the inequality as written,
    /// with exact rational comparison (q - k)/12 <= 0.
    #[test]
    fn c_at_genus_zero() {
        let mut best = 0;
        for q in 2..=14u64 {
            if !is_prime(q) {
                continue;
            }
            let k = 6 + 3 * e2(q) + 4 * e3(q);
            if (q as i64 - k) <= 0 {
                best = q;
            }
        }
        assert_eq!(best, 13);
        let c = c_of_g(0);
        assert_eq!(c.literal, 15);
        assert_eq!(c.conservative, 17);
    }

    #[test]
    fn c_is_nondecreasing() {
        let mut prev = 0;
        for g in 0..=60 {
            let c = c_of_g(g);
            assert!(c.literal >= prev);
            assert!(c.conservative >= c.literal);
            prev = c.literal;
        }
        assert_eq!(c_of_g(1).literal, 21);
    }

    #[test]
    fn big_c_values() {
        assert_eq!(C_of_g(0), SurdValue::integer(3_176_523u64));
        assert_eq!(C_of_g(1), SurdValue::integer(3_176_523u64));
        assert_eq!(C_of_g(4), SurdValue::integer(25_412_184u64));
        assert_eq!(C_of_g(9), SurdValue::integer(3_176_523u64 * 27));
        let c2 = C_of_g(2);
        assert_eq!(c2.to_string(), "6353046*sqrt(2)");
        assert!(c2 > SurdValue::integer(8_984_000u64));
        assert!(c2 < SurdValue::integer(8_985_000u64));
        assert_eq!(c2.to_string().parse::<SurdValue>().unwrap(), c2);
    }

    #[test]
    fn tilde_cases() {
        assert_eq!(c_tilde(0, 1).unwrap(), SurdValue::integer(c_of_g(0).conservative));
        assert_eq!(c_tilde(0, 2).unwrap(), SurdValue::integer(3_176_523u64));
        assert_eq!(c_tilde(9, 3).unwrap(), SurdValue::integer(3_176_523u64 * 27));
        assert!(c_tilde(0, 0).is_err());
        for g in 0..=50 {
            for n in 1..=4 {
                assert!(c_tilde(g, n).unwrap() >= SurdValue::integer(c_of_g(g).conservative));
            }
        }
    }

    #[test]
    fn prime_constant_cases() {
        let d = HeightValue::Degree;
        assert_eq!(
            c_prime(3, &[d(0), d(0), d(0)]).unwrap(),
            SurdValue::integer(c_of_g(3).conservative)
        );
        // 27 * 1^{3/2} = 27 exceeds c(0) = 17.
        assert_eq!(c_prime(0, &[d(1), d(1)]).unwrap(), SurdValue::integer(27u64));
        assert_eq!(c_prime(0, &[d(4), d(1), d(1)]).unwrap(), SurdValue::integer(216u64));
        assert_eq!(c_prime(0, &[d(1)]), Err(Error::TooFewFactors(1)));
        // h_i h_j = 2 gives 27 * 2 * sqrt(2) ≈ 76.4
        assert_eq!(c_prime(0, &[d(2), d(1)]).unwrap().to_string(), "54*sqrt(2)");
    }

    #[test]
    fn strict_product_threshold() {
        assert!(!clears_product_threshold(3_176_523, 0, 2).unwrap());
        assert!(clears_product_threshold(3_176_533, 0, 2).unwrap());
        assert!(clears_single_threshold(17, 0));
        assert!(!clears_single_threshold(13, 0));
    }
}
