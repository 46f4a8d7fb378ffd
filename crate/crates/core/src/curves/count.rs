//! Point counting over prime fields.
//!
//! Two independent routes: an exhaustive x-scan summing quadratic
//! characters, and baby-step giant-step on point orders inside the Hasse
//! interval. `count_points` uses the scan for `p <= 2^16` and BSGS above,
//! falling back to the scan whenever BSGS cannot pin down a unique order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::weierstrass::WeierstrassCurve;
use crate::arith::prime::{
    add_mod, inv_mod, legendre_unchecked, mul_mod, prime_factors, sqrt_mod, sub_mod, SquareTable,
};
use crate::arith::Fp;
use crate::error::{Error, Result};

/// Above this size `count_points` switches to baby-step giant-step.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Frobenius data of a curve over F_p: `n = p + 1 - a`, `|a| <= 2 sqrt(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusDatum {
    pub p: u64,
    pub a: i64,
    pub n: u64,
}

impl FrobeniusDatum {
    fn from_count(p: u64, n: u64) -> Self {
        FrobeniusDatum { p, a: p as i64 + 1 - n as i64, n }
    }
}

/// `floor(2 sqrt(p))`, the Hasse bound on `|a_p|`.
pub fn hasse_bound(p: u64) -> u64 {
    isqrt(4 * p)
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn check_curve(c: &WeierstrassCurve<Fp>) -> Result<(u64, u64, u64)> {
    let p = c.modulus();
    if p <= 3 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    Ok((c.a4().value(), c.a6().value(), p))
}

pub fn count_points(c: &WeierstrassCurve<Fp>) -> Result<FrobeniusDatum> {
    let (a, b, p) = check_curve(c)?;
    if p <= EXHAUSTIVE_LIMIT {
        return Ok(FrobeniusDatum::from_count(p, exhaustive_count(a, b, p, None)));
    }
    let n = bsgs_count(a, b, p).unwrap_or_else(|| exhaustive_count(a, b, p, None));
    Ok(FrobeniusDatum::from_count(p, n))
}

pub fn count_points_exhaustive(c: &WeierstrassCurve<Fp>) -> Result<FrobeniusDatum> {
    let (a, b, p) = check_curve(c)?;
    Ok(FrobeniusDatum::from_count(p, exhaustive_count(a, b, p, None)))
}

/// BSGS route; ambiguous cases still fall back to the scan.
pub fn count_points_bsgs(c: &WeierstrassCurve<Fp>) -> Result<FrobeniusDatum> {
    let (a, b, p) = check_curve(c)?;
    let n = bsgs_count(a, b, p).unwrap_or_else(|| exhaustive_count(a, b, p, None));
    Ok(FrobeniusDatum::from_count(p, n))
}

/// Number of projective points: `1 + sum_x (1 + chi(x^3 + a x + b))`.
///
/// `table` must be the square table for `p` when given.
pub fn exhaustive_count(a: u64, b: u64, p: u64, table: Option<&SquareTable>) -> u64 {
    let mut total: i64 = p as i64 + 1;
    match table {
        Some(t) => {
            debug_assert_eq!(t.modulus(), p);
            for x in 0..p {
                let x2 = mul_mod(x, x, p);
                let rhs = add_mod(mul_mod(add_mod(x2, a, p), x, p), b, p);
                total += t.chi(rhs) as i64;
            }
        }
        None if p <= EXHAUSTIVE_LIMIT => {
            return exhaustive_count(a, b, p, Some(&SquareTable::new(p)));
        }
        None => {
            for x in 0..p {
                let x2 = mul_mod(x, x, p);
                let rhs = add_mod(mul_mod(add_mod(x2, a, p), x, p), b, p);
                total += legendre_unchecked(rhs, p) as i64;
            }
        }
    }
    total as u64
}

/// Trace of Frobenius by the scan, using a precomputed table.
pub fn trace_with_table(a: u64, b: u64, table: &SquareTable) -> i64 {
    let p = table.modulus();
    p as i64 + 1 - exhaustive_count(a, b, p, Some(table)) as i64
}

type Point = Option<(u64, u64)>;

struct Arith {
    a: u64,
    p: u64,
}

impl Arith {
    fn neg(&self, pt: Point) -> Point {
        pt.map(|(x, y)| (x, sub_mod(0, y, self.p)))
    }

    fn add(&self, lhs: Point, rhs: Point) -> Point {
        let p = self.p;
        let ((x1, y1), (x2, y2)) = match (lhs, rhs) {
            (None, q) | (q, None) => return q,
            (Some(l), Some(r)) => (l, r),
        };
        let lambda = if x1 == x2 {
            if add_mod(y1, y2, p) == 0 {
                return None;
            }
            let num = add_mod(mul_mod(3, mul_mod(x1, x1, p), p), self.a, p);
            mul_mod(num, inv_mod(add_mod(y1, y1, p), p)?, p)
        } else {
            mul_mod(sub_mod(y2, y1, p), inv_mod(sub_mod(x2, x1, p), p)?, p)
        };
        let x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p), x1, p), x2, p);
        let y3 = sub_mod(mul_mod(lambda, sub_mod(x1, x3, p), p), y1, p);
        Some((x3, y3))
    }

    fn mul(&self, mut k: u64, pt: Point) -> Point {
        let mut acc = None;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Some `N` in `[lo, hi]` with `N * pt = O`.
fn bsgs_multiple(ar: &Arith, pt: Point, lo: u64, hi: u64) -> Option<u64> {
    let width = hi - lo;
    let s = isqrt(width) + 1;
    let mut baby: HashMap<(u64, u64), u64> = HashMap::with_capacity(s as usize);
    let mut cur = None;
    for j in 0..s {
        match cur {
            None if j > 0 => return Some(j),
            None => {}
            Some(q) => {
                baby.entry(q).or_insert(j);
            }
        }
        cur = ar.add(cur, pt);
    }
    let giant = ar.mul(s, pt);
    let mut r = ar.mul(lo, pt);
    let mut i = 0;
    while i * s <= width {
        let target = ar.neg(r);
        let hit = match target {
            None => Some(0),
            Some(q) => baby.get(&q).copied(),
        };
        if let Some(j) = hit {
            let k = i * s + j;
            if k <= width {
                return Some(lo + k);
            }
        }
        r = ar.add(r, giant);
        i += 1;
    }
    None
}

/// Exact order of `pt` from any multiple of it.
fn order_from_multiple(ar: &Arith, pt: Point, multiple: u64) -> u64 {
    let mut ord = multiple;
    for q in prime_factors(multiple) {
        while ord.is_multiple_of(q) && ar.mul(ord / q, pt).is_none() {
            ord /= q;
        }
    }
    ord
}

/// Group order by BSGS, or `None` when the candidate set stays ambiguous.
pub fn bsgs_count(a: u64, b: u64, p: u64) -> Option<u64> {
    let ar = Arith { a, p };
    let h = hasse_bound(p);
    let (lo, hi) = (p + 1 - h, p + 1 + h);
    let mut exponent = 1u64;
    let mut x = 0u64;
    let mut points_tried = 0;
    while points_tried < 24 && x < p {
        let rhs = add_mod(mul_mod(add_mod(mul_mod(x, x, p), a, p), x, p), b, p);
        let Some(y) = sqrt_mod(rhs, p) else {
            x += 1;
            continue;
        };
        let pt = Some((x, y));
        x += 1;
        points_tried += 1;
        let multiple = bsgs_multiple(&ar, pt, lo, hi)?;
        let ord = order_from_multiple(&ar, pt, multiple);
        exponent = exponent / gcd(exponent, ord) * ord;
        let first = lo.div_ceil(exponent) * exponent;
        if first <= hi && first + exponent > hi {
            return Some(first);
        }
    }
    None
}
