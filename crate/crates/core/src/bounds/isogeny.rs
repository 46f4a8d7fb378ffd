//! Isogeny-degree bounds and degree bookkeeping for isogenies of abelian
//! varieties of dimension `n`.

use num_bigint::BigUint;
use num_integer::Integer;

/// Minimal-isogeny degree bound between elliptic curves, uniform in genus:
/// `49 * max{1, g}`.
pub fn isogeny_bound_ec_genus(g: u64) -> u64 {
    49 * g.max(1)
}

/// Biseparable isogeny bound for products of two elliptic curves:
/// `9 * 49^2 * max{1, g^2}`.
pub fn isogeny_bound_surface_genus(g: u64) -> u64 {
    9 * 49 * 49 * (g * g).max(1)
}

/// `[L:K] * min{h1, h2}` with degree-normalized modular heights.
pub fn isogeny_bound_ec_hmod(ldeg: u64, h1: u64, h2: u64) -> u128 {
    ldeg as u128 * h1.min(h2) as u128
}

/// `9 * [L:K]^2 * h1 * h2`.
pub fn isogeny_bound_surface_hmod(ldeg: u64, h1: u64, h2: u64) -> u128 {
    9 * (ldeg as u128).pow(2) * h1 as u128 * h2 as u128
}

/// Degree of the companion isogeny `φ̃` (with `φ̃ ∘ φ = [d]`) of a degree-`d`
/// isogeny between `n`-dimensional varieties: `d^{2n-1}`.
pub fn tilde_degree(d: u64, n: u32) -> BigUint {
    assert!(d >= 1 && n >= 1, "degree and dimension must be positive");
    BigUint::from(d).pow(2 * n - 1)
}

/// `deg [m] = m^{2 dim}`.
pub fn mult_degree(m: u64, dim: u32) -> BigUint {
    assert!(m >= 1 && dim >= 1, "multiplier and dimension must be positive");
    BigUint::from(m).pow(2 * dim)
}

/// Biseparability from the degree alone: always in characteristic 0,
/// otherwise iff `gcd(d, p) = 1`.
pub fn is_biseparable_degree(d: u64, p: u64) -> bool {
    p == 0 || d.gcd(&p) == 1
}
