//! Word-sized modular arithmetic: primality, powers, Legendre symbols and
//! square roots modulo primes below 2^63.

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate. Keeps `a + b` from
/// overflowing a `u64` for reduced residues.
pub const MAX_MODULUS: u64 = 1 << 63;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`, or `None` when `p | a`.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub fn reduce_i64(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
///
/// The first twelve primes as witnesses are known to be sufficient below
/// 3.3 * 10^24, which covers `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// All primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect()
}

/// Checked variant used at API boundaries: `ell` must be an odd prime.
pub fn check_odd_prime(ell: u64) -> Result<()> {
    if ell >= MAX_MODULUS || ell == 2 || !is_prime(ell) {
        return Err(Error::InvalidModulus(ell));
    }
    Ok(())
}

/// Legendre symbol of `a` modulo the odd prime `ell`, returned in `{-1, 0, 1}`.
pub fn legendre(a: i64, ell: u64) -> Result<i8> {
    check_odd_prime(ell)?;
    Ok(legendre_unchecked(reduce_i64(a, ell), ell))
}

/// Euler's criterion on an already reduced residue. `p` must be an odd prime.
#[inline]
pub fn legendre_unchecked(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// A square root of `a` modulo the odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre_unchecked(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre_unchecked(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Table of quadratic characters modulo a small odd prime: `chi[x]` for
/// every residue `x`. Built in O(p) by squaring.
#[derive(Debug, Clone)]
pub struct SquareTable {
    p: u64,
    chi: Vec<i8>,
}

impl SquareTable {
    pub fn new(p: u64) -> Self {
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for x in 1..=(p - 1) / 2 {
            chi[mul_mod(x, x, p) as usize] = 1;
        }
        SquareTable { p, chi }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn chi(&self, a: u64) -> i8 {
        self.chi[(a % self.p) as usize]
    }
}

/// Prime factors of `n` by trial division, ascending, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(4, 5).unwrap(), 1);
        assert_eq!(legendre(0, 7).unwrap(), 0);
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert_eq!(legendre(-1, 5).unwrap(), 1);
        assert_eq!(legendre(-1, 7).unwrap(), -1);
    }

    #[test]
    fn legendre_rejects_bad_modulus() {
        assert_eq!(legendre(3, 2), Err(Error::InvalidModulus(2)));
        assert_eq!(legendre(3, 9), Err(Error::InvalidModulus(9)));
        assert_eq!(legendre(3, 1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for ell in primes_in(3, 97) {
            let squares: std::collections::BTreeSet<u64> =
                (1..ell).map(|x| x * x % ell).collect();
            for a in 0..ell {
                let expected = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a as i64, ell).unwrap(), expected, "a={a} ell={ell}");
                assert_eq!(SquareTable::new(ell).chi(a), expected);
            }
        }
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(10_000);
        let tested: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, tested);
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn tonelli_shanks_roots() {
        for p in [5u64, 13, 17, 41, 97, 65537, 1_000_000_009] {
            for a in 1..200u64 {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(mul_mod(r, r, p), a % p);
                } else {
                    assert_eq!(legendre_unchecked(a, p), -1);
                }
            }
        }
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(prime_factors(97), vec![97]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }
}
