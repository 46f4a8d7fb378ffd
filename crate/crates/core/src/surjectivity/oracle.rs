//! Statistical oracle for small ℓ: the multiset of Frobenius (trace, det)
//! pairs of a curve over F_p(t) at every good degree-1 place.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::witness::{witness_classes, WitnessClass};
use crate::arith::PrimeModulus;
use crate::curves::{function_field_samples, PolyCurve};
use crate::error::{Error, Result};
use crate::groups::count_by_trace_det;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageStatistics {
    pub ell: u64,
    pub p: u64,
    /// `(tr, det) -> multiplicity`.
    pub counts: BTreeMap<(u64, u64), u64>,
    pub total: u64,
}

impl ImageStatistics {
    pub fn classes_present(&self) -> Vec<WitnessClass> {
        let mut seen = [false; 3];
        for &(tr, det) in self.counts.keys() {
            seen.iter_mut().zip(witness_classes(tr, det, self.ell)).for_each(|(s, w)| *s |= w);
        }
        WitnessClass::ALL.into_iter().filter(|c| seen[*c as usize]).collect()
    }

    /// Total variation distance between the observed trace distribution and
    /// the trace distribution of the coset `{det = p}` of SL_2.
    pub fn fiber_distance(&self) -> Result<f64> {
        if self.total == 0 {
            return Ok(0.0);
        }
        let l = self.ell;
        let fiber = (l * (l * l - 1)) as f64;
        let det = self.p % l;
        let mut tv = 0.0;
        for tr in 0..l {
            let expected = count_by_trace_det(l as u32, tr as i64, det as i64)? as f64 / fiber;
            let observed = *self.counts.get(&(tr, det)).unwrap_or(&0) as f64 / self.total as f64;
            tv += (expected - observed).abs();
        }
        Ok(tv / 2.0)
    }
}

/// Tallies (tr mod ℓ, p mod ℓ) over all `t0 ∈ F_p` of good reduction.
pub fn brute_force_image(curve: &PolyCurve, p: u64, ell: u64) -> Result<ImageStatistics> {
    if !matches!(ell, 5 | 7) {
        return Err(Error::UnsupportedParameters(format!("oracle supports ℓ ∈ {{5, 7}}, got {ell}")));
    }
    if p > 50 || p == ell {
        return Err(Error::UnsupportedParameters(format!("oracle needs p ≤ 50 and p ≠ ℓ, got p = {p}")));
    }
    let m = PrimeModulus::new(p)?;
    if m.get() <= 3 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    let e = curve.over_fp_t(m)?;
    if e.is_isotrivial() {
        return Err(Error::Isotrivial(format!("{curve} has constant j-invariant over F_{p}(t)")));
    }
    let mut counts = BTreeMap::new();
    let samples = function_field_samples(&[e], m, ell);
    for s in &samples {
        *counts.entry((s.traces[0], s.det)).or_insert(0) += 1;
    }
    Ok(ImageStatistics { ell, p, counts, total: samples.len() as u64 })
}
