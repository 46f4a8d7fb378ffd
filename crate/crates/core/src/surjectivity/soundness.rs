//! Exhaustive check, at a fixed ℓ, that no maximal proper subgroup type of
//! GL_2(F_ℓ) contains representatives of all three witness classes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::witness::{witness_classes, WitnessClass};
use crate::arith::prime::check_odd_prime;
use crate::error::{Error, Result};
use crate::groups::{
    borel, exceptional_subgroup, nonsplit_cartan_normalizer, split_cartan_normalizer,
    ExceptionalKind, Mat2Mod,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupCheck {
    pub name: String,
    pub order: usize,
    /// Witness classes realized by some element.
    pub present: Vec<WitnessClass>,
}

impl SubgroupCheck {
    fn of(name: &str, elems: &[Mat2Mod]) -> Self {
        let mut seen = [false; 3];
        for m in elems {
            let w = witness_classes(m.trace() as u64, m.det() as u64, m.ell as u64);
            seen.iter_mut().zip(w).for_each(|(s, x)| *s |= x);
        }
        let present = WitnessClass::ALL.into_iter().filter(|c| seen[*c as usize]).collect();
        SubgroupCheck { name: name.to_string(), order: elems.len(), present }
    }

    pub fn misses_a_class(&self) -> bool {
        self.present.len() < 3
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub ell: u64,
    pub checks: Vec<SubgroupCheck>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.checks.iter().all(SubgroupCheck::misses_a_class)
    }
}

/// Builds the Borel, both Cartan normalizers and every exceptional
/// preimage that exists at ℓ, and records the classes each realizes.
pub fn validate_witness_soundness(ell: u64) -> Result<SoundnessReport> {
    check_odd_prime(ell)?;
    if ell < 5 {
        return Err(Error::InvalidLevel { ell, reason: "witness classes need ℓ ≥ 5".into() });
    }
    let l = ell as u32;
    let mut checks = vec![
        SubgroupCheck::of("borel", &borel(l)),
        SubgroupCheck::of("split_cartan_normalizer", &split_cartan_normalizer(l)),
        SubgroupCheck::of("nonsplit_cartan_normalizer", &nonsplit_cartan_normalizer(l)),
    ];
    for kind in ExceptionalKind::ALL {
        if let Some(h) = exceptional_subgroup(l, kind) {
            checks.push(SubgroupCheck::of(&format!("exceptional_{kind:?}").to_lowercase(), &h));
        }
    }
    Ok(SoundnessReport { ell, checks })
}

/// Cached per ℓ.
pub fn soundness_at(ell: u64) -> Result<Arc<SoundnessReport>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<SoundnessReport>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("soundness cache").get(&ell) {
        return Ok(r.clone());
    }
    let report = Arc::new(validate_witness_soundness(ell)?);
    cache.lock().expect("soundness cache").insert(ell, report.clone());
    Ok(report)
}
