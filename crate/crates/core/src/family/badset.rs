//! The excluded set S and the height-bounded parameter set 𝒻(T).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::spec::FamilySpec;
use crate::arith::Rational;
use crate::curves::{trace_table, SquareTables, WeierstrassCurve};

/// The thirteen j-invariants of elliptic curves over Q with complex
/// multiplication, one per imaginary quadratic order of class number one,
/// listed with the order discriminant.
pub const CM_J_INVARIANTS: [(i64, i64); 13] = [
    (-3, 0),
    (-4, 1728),
    (-7, -3375),
    (-8, 8000),
    (-11, -32768),
    (-12, 54000),
    (-16, 287496),
    (-19, -884736),
    (-27, -12288000),
    (-28, 16581375),
    (-43, -884736000),
    (-67, -147197952000),
    (-163, -262537412640768000),
];

pub const DEFAULT_ISOGENY_PRIME_BOUND: u64 = 100;

pub fn is_cm_j(j: &Rational) -> bool {
    j.is_integer() && CM_J_INVARIANTS.iter().any(|&(_, cm)| *j.numer() == BigInt::from(cm))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BadReason {
    BadReduction,
    CmFactor { factor: usize },
    /// `a_p² ` agreement up to the bound; necessary, not sufficient.
    IsogenousPair { i: usize, j: usize, heuristic: bool },
}

impl fmt::Display for BadReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BadReason::BadReduction => write!(f, "bad reduction"),
            BadReason::CmFactor { factor } => write!(f, "CM factor {factor}"),
            BadReason::IsogenousPair { i, j, .. } => write!(f, "isogenous pair ({i},{j}) [heuristic]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadSetReason {
    pub t0_num: i64,
    pub t0_den: i64,
    pub reasons: Vec<BadReason>,
}

/// `None` when `t0 ∉ S`.
pub fn s_membership(family: &FamilySpec, t0: &Rational, isogeny_prime_bound: u64) -> Option<BadSetReason> {
    s_membership_with(family, t0, &SquareTables::up_to(isogeny_prime_bound))
}

/// As [`s_membership`], with the primes for the isogeny test taken from
/// `tables`.
pub fn s_membership_with(family: &FamilySpec, t0: &Rational, tables: &SquareTables) -> Option<BadSetReason> {
    let (t0_num, t0_den) = rational_parts(t0);
    let fibres: Option<Vec<WeierstrassCurve<Rational>>> =
        family.curves().iter().map(|c| c.specialize_q(t0).ok()).collect();
    let Some(fibres) = fibres else {
        return Some(BadSetReason { t0_num, t0_den, reasons: vec![BadReason::BadReduction] });
    };
    let mut reasons = Vec::new();
    for (i, e) in fibres.iter().enumerate() {
        if is_cm_j(&e.j_invariant()) {
            reasons.push(BadReason::CmFactor { factor: i });
        }
    }
    let traces: Vec<Vec<(u64, Option<i64>)>> =
        fibres.iter().map(|e| trace_table(&e.integral_model(), tables)).collect();
    for i in 0..fibres.len() {
        for j in i + 1..fibres.len() {
            let agree = traces[i].iter().zip(&traces[j]).all(|(x, y)| match (x.1, y.1) {
                (Some(a), Some(b)) => a * a == b * b,
                _ => true,
            });
            if agree {
                reasons.push(BadReason::IsogenousPair { i, j, heuristic: true });
            }
        }
    }
    (!reasons.is_empty()).then_some(BadSetReason { t0_num, t0_den, reasons })
}

pub(crate) fn rational_parts(x: &Rational) -> (i64, i64) {
    use num_traits::ToPrimitive;
    (
        x.numer().to_i64().expect("parameter numerator fits i64"),
        x.denom().to_i64().expect("parameter denominator fits i64"),
    )
}

/// All reduced `m/n` with `max(|m|, n) ≤ T`, ascending.
pub fn enumerate_height(t: u64) -> Vec<Rational> {
    let t = t as i64;
    let mut out = Vec::new();
    for n in 1..=t {
        for m in -t..=t {
            if m.gcd(&n) == 1 {
                out.push(Rational::new(BigInt::from(m), BigInt::from(n)));
            }
        }
    }
    out.sort();
    debug_assert!(out.iter().all(|x| !x.denom().is_negative()));
    out
}

/// 𝒻(T) = parameters of height at most `T` outside S.
pub fn enumerate_f(t: u64, family: &FamilySpec, isogeny_prime_bound: u64) -> Vec<Rational> {
    let tables = SquareTables::up_to(isogeny_prime_bound);
    enumerate_height(t).into_iter().filter(|x| s_membership_with(family, x, &tables).is_none()).collect()
}
