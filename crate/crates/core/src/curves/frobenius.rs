//! Frobenius trace sampling: per-prime traces of curves over Q and
//! per-place traces of curves over F_p(t) at degree-1 places.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::count::trace_with_table;
use super::weierstrass::{IntegralModel, WeierstrassCurve};
use crate::arith::prime::SquareTable;
use crate::arith::{primes_up_to, Fp, PrimeModulus, Rational, RationalFunction};

/// Where a Frobenius element was sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Place {
    /// A rational prime (curves over Q).
    Prime { p: u64 },
    /// The degree-1 place `t = t0` of F_p(t).
    Specialization { p: u64, t0: u64 },
}

impl Place {
    /// Characteristic of the residue field.
    pub fn residue_char(&self) -> u64 {
        match *self {
            Place::Prime { p } | Place::Specialization { p, .. } => p,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime { p } => write!(f, "p={p}"),
            Place::Specialization { p, t0 } => write!(f, "t0={t0} (mod {p})"),
        }
    }
}

/// One Frobenius datum of a product: traces mod ℓ per factor and the common
/// determinant mod ℓ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TraceSample {
    pub place: Place,
    pub traces: Vec<u64>,
    pub det: u64,
}

impl TraceSample {
    pub fn n(&self) -> usize {
        self.traces.len()
    }
}

/// Quadratic-character tables for every prime `5 <= p <= bound`.
#[derive(Debug, Clone, Default)]
pub struct SquareTables {
    tables: BTreeMap<u64, SquareTable>,
}

impl SquareTables {
    pub fn up_to(bound: u64) -> Self {
        let tables = primes_up_to(bound)
            .into_iter()
            .filter(|&p| p >= 5)
            .map(|p| (p, SquareTable::new(p)))
            .collect();
        SquareTables { tables }
    }

    pub fn get(&self, p: u64) -> Option<&SquareTable> {
        self.tables.get(&p)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.tables.keys().copied()
    }
}

/// Trace of Frobenius of an integral model at `p`, `None` at bad primes.
pub fn integral_trace(model: &IntegralModel, table: &SquareTable) -> Option<i64> {
    let p = table.modulus();
    if !model.has_good_reduction(p) {
        return None;
    }
    let (a, b) = model.residues(p);
    Some(trace_with_table(a, b, table))
}

/// Per-prime traces `a_p` of one curve for every prime in `tables`
/// (ascending), `None` where the model has bad reduction.
pub fn trace_table(model: &IntegralModel, tables: &SquareTables) -> Vec<(u64, Option<i64>)> {
    tables
        .tables
        .values()
        .map(|t| (t.modulus(), integral_trace(model, t)))
        .collect()
}

/// Residue of `a` in `[0, ell)`.
pub fn residue(a: i64, ell: u64) -> u64 {
    a.rem_euclid(ell as i64) as u64
}

/// Assemble trace samples for a product from per-factor trace tables (all
/// indexed by the same ascending primes). Primes with `p = ell`, `p <= 3`,
/// or bad reduction in any factor are skipped.
pub fn samples_from_traces(per_factor: &[Vec<(u64, Option<i64>)>], ell: u64) -> Vec<TraceSample> {
    let Some(first) = per_factor.first() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(first.len());
    'primes: for (k, &(p, _)) in first.iter().enumerate() {
        if p == ell || p <= 3 {
            continue;
        }
        let mut traces = Vec::with_capacity(per_factor.len());
        for table in per_factor {
            debug_assert_eq!(table[k].0, p);
            match table[k].1 {
                Some(a) => traces.push(residue(a, ell)),
                None => {
                    log::debug!("skipping p = {p}: bad reduction");
                    continue 'primes;
                }
            }
        }
        out.push(TraceSample { place: Place::Prime { p }, traces, det: p % ell });
    }
    out
}

/// Frobenius samples for a product of curves over Q at every prime
/// `p <= p_max` with `p ∤ ℓ Δ_1 ... Δ_n` (Δ of the integral models).
/// Ordered by `p`.
pub fn trace_samples(curves: &[WeierstrassCurve<Rational>], p_max: u64, ell: u64) -> Vec<TraceSample> {
    let tables = SquareTables::up_to(p_max);
    let models: Vec<IntegralModel> = curves.iter().map(|c| c.integral_model()).collect();
    let per_factor: Vec<Vec<(u64, Option<i64>)>> =
        models.par_iter().map(|m| trace_table(m, &tables)).collect();
    samples_from_traces(&per_factor, ell)
}

/// Frobenius samples of a product of curves over F_p(t) at all degree-1
/// places `t0 ∈ F_p` where every factor has good reduction. The determinant
/// at every such place is `p mod ℓ`.
pub fn function_field_samples(
    curves: &[WeierstrassCurve<RationalFunction<Fp>>],
    p: PrimeModulus,
    ell: u64,
) -> Vec<TraceSample> {
    let table = SquareTable::new(p.get());
    (0..p.get())
        .into_par_iter()
        .filter_map(|t0| {
            let mut traces = Vec::with_capacity(curves.len());
            for c in curves {
                let fibre = c.specialize(&p.elem_u64(t0)).ok()?;
                let a = trace_with_table(fibre.a4().value(), fibre.a6().value(), &table);
                traces.push(residue(a, ell));
            }
            Some(TraceSample { place: Place::Specialization { p: p.get(), t0 }, traces, det: p.get() % ell })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::PolyCurve;

    #[test]
    fn sample_examples() {
        let c = WeierstrassCurve::from_integers(1, 1).unwrap();
        assert!(trace_samples(std::slice::from_ref(&c), 4, 7).is_empty());
        let s = trace_samples(std::slice::from_ref(&c), 5, 7);
        assert_eq!(s, vec![TraceSample { place: Place::Prime { p: 5 }, traces: vec![4], det: 5 }]);

        // Δ = -496 = -16 * 31: p = 31 is skipped.
        let s = trace_samples(&[c], 40, 7);
        assert!(s.iter().all(|x| x.place != Place::Prime { p: 31 }));
        assert!(s.iter().any(|x| x.place == Place::Prime { p: 37 }));
        assert!(s.iter().all(|x| x.place != Place::Prime { p: 7 }));
        assert!(s.windows(2).all(|w| w[0].place < w[1].place));
    }

    #[test]
    fn function_field_places() {
        let m = PrimeModulus::new(11).unwrap();
        let c: PolyCurve = "[0,1];[1]".parse().unwrap();
        let s = function_field_samples(&[c.over_fp_t(m).unwrap()], m, 5);
        // 4t^3 + 27 = 0 mod 11 has exactly the roots of t^3 = -27/4.
        let bad = (0..11u64).filter(|t| (4 * t * t * t + 27) % 11 == 0).count();
        assert_eq!(s.len(), 11 - bad);
        assert!(s.iter().all(|x| x.det == 1));
    }
}
