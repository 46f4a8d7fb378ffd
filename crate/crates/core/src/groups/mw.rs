//! Brute-force harness for the pair lemma: a subgroup `H ≤ D ⊂ B × B'` with
//! surjective projections is either all of `D` or the graph of a
//! conjugation twisted by a quadratic character.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::closure::{DetLocusElement, SubgroupClosure};
use super::mat::Mat2Mod;
use crate::arith::prime::pow_mod;
use crate::error::{Error, Result};

/// Which determinants `B` and `B'` allow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetVariant {
    /// `B = GL_2`.
    Full,
    /// Determinants are `e`-th powers, `e | ℓ − 1`.
    Powers(u32),
}

impl DetVariant {
    /// The subgroup `⟨p⟩ ⊂ F_ℓ^*` as a power subgroup.
    pub fn generated_by(p: u64, ell: u32) -> Result<Self> {
        let l = ell as u64;
        if p.is_multiple_of(l) {
            return Err(Error::InvalidInput(format!("{p} is not a unit mod {ell}")));
        }
        let order = (1..l).find(|&k| pow_mod(p % l, k, l) == 1).expect("unit has finite order");
        Ok(match (l - 1) / order {
            1 => DetVariant::Full,
            e => DetVariant::Powers(e as u32),
        })
    }

    fn exponent(self) -> u32 {
        match self {
            DetVariant::Full => 1,
            DetVariant::Powers(e) => e,
        }
    }

    /// Allowed determinants, ascending.
    pub fn determinants(self, ell: u32) -> Result<Vec<u32>> {
        let e = self.exponent();
        if e == 0 || !(ell - 1).is_multiple_of(e) {
            return Err(Error::InvalidInput(format!("e = {e} does not divide ℓ − 1 = {}", ell - 1)));
        }
        let set: BTreeSet<u32> =
            (1..ell).map(|x| pow_mod(x as u64, e as u64, ell as u64) as u32).collect();
        Ok(set.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwWitness {
    pub f: Mat2Mod,
    /// `χ(h)` keyed by element code.
    pub chi: BTreeMap<u128, i8>,
}

impl MwWitness {
    pub fn is_trivial(&self) -> bool {
        self.chi.values().all(|&s| s == 1)
    }

    /// Re-checks `b' = χ(h) f b f^{-1}` on every element, `χ² = 1`, and
    /// multiplicativity on all pairs.
    pub fn verify(&self, h: &SubgroupClosure) -> bool {
        let finv = match self.f.inverse() {
            Some(x) => x,
            None => return false,
        };
        let elems: Vec<_> = h.elements().collect();
        let relation = elems.iter().all(|x| {
            let (b, b2) = (x.mats()[0], x.mats()[1]);
            let conj = self.f.mul(&b).mul(&finv);
            match self.chi.get(&x.code()) {
                Some(1) => b2 == conj,
                Some(-1) => b2 == conj.neg(),
                _ => false,
            }
        });
        let squares = self.chi.values().all(|&s| s * s == 1);
        let mult = elems.iter().all(|x| {
            elems.iter().all(|y| {
                self.chi[&x.mul(y).code()] == self.chi[&x.code()] * self.chi[&y.code()]
            })
        });
        relation && squares && mult && self.chi.len() == elems.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MwOutcome {
    Full,
    Witness(MwWitness),
}

/// Sign `s` with `b' = s·c`, if any.
fn sign_of(b2: &Mat2Mod, conj: &Mat2Mod) -> Option<i8> {
    if b2 == conj {
        Some(1)
    } else if *b2 == conj.neg() {
        Some(-1)
    } else {
        None
    }
}

fn try_f(f: &Mat2Mod, elems: &[DetLocusElement]) -> Option<BTreeMap<u128, i8>> {
    let finv = f.inverse()?;
    elems
        .iter()
        .map(|x| sign_of(&x.mats()[1], &f.mul(&x.mats()[0]).mul(&finv)).map(|s| (x.code(), s)))
        .collect()
}

/// Decides `H = D`, otherwise finds `(f, χ)` by scanning every `f` in
/// PGL_2 (scalars act trivially by conjugation).
pub fn verify_mw_instance(h: &SubgroupClosure, variant: DetVariant) -> Result<MwOutcome> {
    let ell = h.ell;
    if h.n != 2 {
        return Err(Error::PreconditionFailed(format!("pair lemma needs n = 2, got {}", h.n)));
    }
    if ell < 5 {
        return Err(Error::PreconditionFailed(format!("pair lemma needs ℓ ≥ 5, got {ell}")));
    }
    if !h.complete {
        return Err(Error::PreconditionFailed("closure incomplete".into()));
    }
    let dets = variant.determinants(ell)?;
    let l = ell as u128;
    let sl2 = l * (l * l - 1);
    let b_order = sl2 * dets.len() as u128;
    let d_order = sl2 * sl2 * dets.len() as u128;

    let elems: Vec<DetLocusElement> = h.elements().collect();
    if elems.iter().any(|x| dets.binary_search(&x.det()).is_err()) {
        return Err(Error::PreconditionFailed("H leaves the determinant subgroup".into()));
    }
    for side in 0..2 {
        let proj: BTreeSet<u64> = elems.iter().map(|x| x.mats()[side].code()).collect();
        if proj.len() as u128 != b_order {
            return Err(Error::PreconditionFailed(format!(
                "projection {} has {} elements, expected {b_order}",
                side + 1,
                proj.len()
            )));
        }
    }
    if elems.len() as u128 == d_order {
        return Ok(MwOutcome::Full);
    }

    for f in Mat2Mod::gl2(ell).filter(|m| m.projective_rep() == *m) {
        // Cheap rejection on generators before the full pass.
        if try_f(&f, &h.generators).is_none() {
            continue;
        }
        if let Some(chi) = try_f(&f, &elems) {
            return Ok(MwOutcome::Witness(MwWitness { f, chi }));
        }
    }
    Err(Error::NoWitnessFound)
}
