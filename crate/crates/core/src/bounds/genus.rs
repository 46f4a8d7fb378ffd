//! Genus of the modular curve X_0(N).

use crate::arith::prime::prime_factors;

fn euler_phi(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Kronecker-type symbols needed for the elliptic point counts:
/// `(-1/p)` and `(-3/p)` for a prime `p`.
fn minus_one_symbol(p: u64) -> i64 {
    match p % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn minus_three_symbol(p: u64) -> i64 {
    match p % 3 {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

/// Invariants of Γ_0(N) feeding the Riemann-Hurwitz count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaZeroData {
    /// Index `N ∏_{p|N} (1 + 1/p)` in SL_2(Z).
    pub index: u64,
    /// Elliptic points of order 2.
    pub nu2: u64,
    /// Elliptic points of order 3.
    pub nu3: u64,
    /// Cusps.
    pub cusps: u64,
}

pub fn gamma_zero_data(n: u64) -> GammaZeroData {
    assert!(n >= 1, "level must be positive");
    let primes = prime_factors(n);
    let index = primes.iter().fold(n, |acc, &p| acc / p * (p + 1));
    let nu2 = if n.is_multiple_of(4) {
        0
    } else {
        primes.iter().map(|&p| 1 + minus_one_symbol(p)).product::<i64>() as u64
    };
    let nu3 = if n.is_multiple_of(9) {
        0
    } else {
        primes.iter().map(|&p| 1 + minus_three_symbol(p)).product::<i64>() as u64
    };
    let cusps = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| euler_phi(gcd(d, n / d)))
        .sum();
    GammaZeroData { index, nu2, nu3, cusps }
}

/// `g = 1 + μ/12 - ν2/4 - ν3/3 - ν∞/2`, evaluated as `12g` in integers.
pub fn genus_x0(n: u64) -> u64 {
    let d = gamma_zero_data(n);
    let twelve_g = 12 + d.index as i64 - 3 * d.nu2 as i64 - 4 * d.nu3 as i64 - 6 * d.cusps as i64;
    debug_assert!(twelve_g >= 0 && twelve_g % 12 == 0, "N={n}: 12g={twelve_g}");
    (twelve_g / 12) as u64
}
