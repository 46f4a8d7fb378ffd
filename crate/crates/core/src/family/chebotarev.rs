//! Exact trace counts 𝒯_p(τ⃗) = #{t0 ∈ F_p : good reduction, a_p(E_{i,t0}) ≡ τ_i mod ℓ}.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::spec::FamilySpec;
use crate::arith::prime::is_prime;
use crate::arith::PrimeModulus;
use crate::curves::function_field_samples;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCountTable {
    pub p: u64,
    pub ell: u64,
    pub n: usize,
    /// Every `τ⃗ ∈ (Z/ℓ)^n`, zero counts included.
    pub counts: BTreeMap<Vec<u64>, u64>,
    pub good_count: u64,
}

impl TraceCountTable {
    pub fn get(&self, taus: &[u64]) -> Option<u64> {
        let key: Vec<u64> = taus.iter().map(|t| t % self.ell).collect();
        self.counts.get(&key).copied()
    }

    /// `p / ℓ^n`.
    pub fn prediction(&self) -> f64 {
        self.p as f64 / (self.ell as f64).powi(self.n as i32)
    }

    pub fn max_deviation(&self) -> f64 {
        let pred = self.prediction();
        self.counts.values().map(|&c| (c as f64 - pred).abs()).fold(0.0, f64::max)
    }

    pub fn partition_holds(&self) -> bool {
        self.counts.values().sum::<u64>() == self.good_count
    }

    /// `tau1,...,taun,count`, rows in lexicographic τ⃗ order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.n).map(|i| format!("tau{i}")).collect();
        writeln!(out, "{},count", header.join(",")).unwrap();
        for (taus, c) in &self.counts {
            let cols: Vec<String> = taus.iter().map(u64::to_string).collect();
            writeln!(out, "{},{c}", cols.join(",")).unwrap();
        }
        out
    }
}

/// All `ℓ^n` trace counts in one pass over `t0 ∈ F_p`.
pub fn chebotarev_table(family: &FamilySpec, p: u64, ell: u64) -> Result<TraceCountTable> {
    if !is_prime(ell) {
        return Err(Error::InvalidModulus(ell));
    }
    let m = PrimeModulus::new(p)?;
    if p <= 3 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    if ell == p {
        return Err(Error::InvalidLevel { ell, reason: "ℓ must differ from the characteristic".into() });
    }
    let curves = family
        .curves()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let e = c.over_fp_t(m)?;
            if e.is_isotrivial() {
                return Err(Error::Isotrivial(format!("factor {} is isotrivial mod {p}", i + 1)));
            }
            Ok(e)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = curves.len();
    let mut counts = BTreeMap::new();
    let mut key = vec![0u64; n];
    loop {
        counts.insert(key.clone(), 0u64);
        let Some(pos) = key.iter().rposition(|&t| t + 1 < ell) else { break };
        key[pos] += 1;
        key[pos + 1..].iter_mut().for_each(|t| *t = 0);
    }
    let samples = function_field_samples(&curves, m, ell);
    for s in &samples {
        *counts.get_mut(&s.traces).expect("trace residues lie in range") += 1;
    }
    Ok(TraceCountTable { p, ell, n, counts, good_count: samples.len() as u64 })
}

/// Single entry 𝒯_p(τ⃗).
pub fn chebotarev_count(family: &FamilySpec, p: u64, ell: u64, taus: &[u64]) -> Result<u64> {
    if taus.len() != family.n() {
        return Err(Error::InvalidInput(format!("{} traces for {} factors", taus.len(), family.n())));
    }
    let table = chebotarev_table(family, p, ell)?;
    Ok(table.get(taus).expect("full table"))
}
