//! Certificates for surjectivity of mod-ℓ images of products of elliptic
//! curves from Frobenius (trace, det) samples.
//!
//! Certified is a proof; Inconclusive makes no claim either way.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::soundness::soundness_at;
use super::witness::{witness_classes, WitnessClass};
use crate::arith::prime::check_odd_prime;
use crate::curves::{Place, TraceSample};
use crate::error::{Error, Result};

/// Smallest ℓ at which single-factor certification rests on the subgroup
/// classification alone.
pub const CLASSIFICATION_MIN_ELL: u64 = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    Certified,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertMode {
    /// ℓ ≥ 17.
    Classification,
    /// ℓ < 17, backed by an exhaustive check of the maximal subgroup types
    /// at this ℓ.
    SmallEll,
}

impl CertMode {
    pub fn for_level(ell: u64) -> Self {
        if ell >= CLASSIFICATION_MIN_ELL {
            CertMode::Classification
        } else {
            CertMode::SmallEll
        }
    }
}

/// Set for samples at places of a function field: only the geometric
/// image `Ψ_ℓ = Image ∩ SL_2^n` is certified there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GeometricFlag(pub bool);

impl GeometricFlag {
    pub fn from_samples(samples: &[TraceSample]) -> Result<Self> {
        let ff = samples.iter().filter(|s| matches!(s.place, Place::Specialization { .. })).count();
        if ff != 0 && ff != samples.len() {
            return Err(Error::InvalidInput("samples mix number-field and function-field places".into()));
        }
        Ok(GeometricFlag(ff != 0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleCertificate {
    pub factor: usize,
    pub ell: u64,
    pub mode: CertMode,
    pub status: CertStatus,
    /// Smallest sample (in place order) realizing each class.
    pub witnesses: BTreeMap<WitnessClass, Place>,
    pub missing: Vec<WitnessClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCertificate {
    pub i: usize,
    pub j: usize,
    pub status: CertStatus,
    /// First place with `tr_i² ≠ tr_j²`.
    pub witness: Option<Place>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityCertificate {
    pub ell: u64,
    pub n: usize,
    pub status: CertStatus,
    pub mode: CertMode,
    pub geometric: GeometricFlag,
    pub samples_used: usize,
    pub single_witnesses: Vec<SingleCertificate>,
    pub pair_witnesses: Vec<PairCertificate>,
    pub notes: Vec<String>,
}

impl SurjectivityCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::Certified
    }

    /// Pairs left without a witness.
    pub fn uncertified_pairs(&self) -> Vec<(usize, usize)> {
        self.pair_witnesses
            .iter()
            .filter(|p| p.status != CertStatus::Certified)
            .map(|p| (p.i, p.j))
            .collect()
    }
}

fn sorted(samples: &[TraceSample]) -> Vec<&TraceSample> {
    let mut v: Vec<_> = samples.iter().collect();
    v.sort();
    v
}

fn check_samples(samples: &[TraceSample], ell: u64, n: usize) -> Result<()> {
    for s in samples {
        if s.det % ell == 0 {
            return Err(Error::InvalidInput(format!("zero determinant at {}", s.place)));
        }
        if s.traces.len() != n {
            return Err(Error::InvalidInput(format!(
                "sample at {} has {} traces, expected {n}",
                s.place,
                s.traces.len()
            )));
        }
        if s.place.residue_char() == ell {
            return Err(Error::InvalidInput(format!("place {} has residue characteristic ℓ", s.place)));
        }
    }
    Ok(())
}

fn level_mode(ell: u64, mode: CertMode) -> Result<()> {
    check_odd_prime(ell)?;
    match mode {
        CertMode::Classification if ell < CLASSIFICATION_MIN_ELL => Err(Error::InvalidLevel {
            ell,
            reason: format!("classification mode needs ℓ ≥ {CLASSIFICATION_MIN_ELL}; use small-ℓ mode"),
        }),
        CertMode::SmallEll if ell < 5 => {
            Err(Error::InvalidLevel { ell, reason: "witness classes need ℓ ≥ 5".into() })
        }
        CertMode::SmallEll => {
            let report = soundness_at(ell)?;
            if report.sound() {
                Ok(())
            } else {
                Err(Error::UnsupportedParameters(format!("witness classes unsound at ℓ = {ell}")))
            }
        }
        CertMode::Classification => Ok(()),
    }
}

/// W1, W2, W3 for factor `factor` of the samples.
pub fn certify_single(
    samples: &[TraceSample],
    factor: usize,
    ell: u64,
    mode: CertMode,
) -> Result<SingleCertificate> {
    level_mode(ell, mode)?;
    if samples.iter().any(|s| factor >= s.traces.len()) {
        return Err(Error::InvalidInput(format!("factor {factor} out of range")));
    }
    for s in samples {
        if s.det % ell == 0 {
            return Err(Error::InvalidInput(format!("zero determinant at {}", s.place)));
        }
    }
    let mut witnesses = BTreeMap::new();
    for s in sorted(samples) {
        let w = witness_classes(s.traces[factor], s.det, ell);
        for class in WitnessClass::ALL {
            if w[class as usize] {
                witnesses.entry(class).or_insert(s.place);
            }
        }
        if witnesses.len() == 3 {
            break;
        }
    }
    let missing: Vec<_> = WitnessClass::ALL.into_iter().filter(|c| !witnesses.contains_key(c)).collect();
    let status = if missing.is_empty() { CertStatus::Certified } else { CertStatus::Inconclusive };
    Ok(SingleCertificate { factor, ell, mode, status, witnesses, missing })
}

/// A place with `tr_i² ≠ tr_j²` rules out every relation
/// `b' = χ(h) f b f^{-1}`, so the pair image is the full fiber product.
pub fn certify_pair(
    samples: &[TraceSample],
    single_i: &SingleCertificate,
    single_j: &SingleCertificate,
) -> Result<PairCertificate> {
    let (i, j) = (single_i.factor, single_j.factor);
    let ell = single_i.ell;
    if single_j.ell != ell {
        return Err(Error::PreconditionFailed("single certificates at different ℓ".into()));
    }
    if i == j {
        return Err(Error::PreconditionFailed("pair needs two distinct factors".into()));
    }
    for c in [single_i, single_j] {
        if c.status != CertStatus::Certified {
            return Err(Error::PreconditionFailed(format!(
                "factor {} is not single-certified at ℓ = {ell}",
                c.factor
            )));
        }
    }
    let witness = sorted(samples)
        .into_iter()
        .find(|s| {
            let (a, b) = (s.traces[i] % ell, s.traces[j] % ell);
            a * a % ell != b * b % ell
        })
        .map(|s| s.place);
    let status = if witness.is_some() { CertStatus::Certified } else { CertStatus::Inconclusive };
    Ok(PairCertificate { i: i.min(j), j: i.max(j), status, witness })
}

/// Every factor single-certified and every pair pair-certified; the pairs
/// then lift to the whole product.
pub fn certify_product(samples: &[TraceSample], n: usize, ell: u64) -> Result<SurjectivityCertificate> {
    if ell <= 5 {
        return Err(Error::InvalidLevel { ell, reason: "product certification needs ℓ > 5".into() });
    }
    if n == 0 {
        return Err(Error::InvalidInput("product needs at least one factor".into()));
    }
    check_odd_prime(ell)?;
    check_samples(samples, ell, n)?;
    let geometric = GeometricFlag::from_samples(samples)?;
    let mode = CertMode::for_level(ell);

    let singles: Vec<SingleCertificate> =
        (0..n).map(|k| certify_single(samples, k, ell, mode)).collect::<Result<_>>()?;
    let mut notes = Vec::new();
    for s in &singles {
        if !s.missing.is_empty() {
            let names: Vec<String> = s.missing.iter().map(|c| c.to_string()).collect();
            notes.push(format!("factor {}: no sample in class {}", s.factor, names.join(", ")));
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if singles[i].status == CertStatus::Certified && singles[j].status == CertStatus::Certified {
                let p = certify_pair(samples, &singles[i], &singles[j])?;
                if p.status != CertStatus::Certified {
                    notes.push(format!("pair ({i},{j}): squared traces agree at every sample"));
                }
                pairs.push(p);
            } else {
                pairs.push(PairCertificate { i, j, status: CertStatus::Inconclusive, witness: None });
            }
        }
    }
    let all = singles.iter().all(|s| s.status == CertStatus::Certified)
        && pairs.iter().all(|p| p.status == CertStatus::Certified);
    let status = if all { CertStatus::Certified } else { CertStatus::Inconclusive };
    if mode == CertMode::SmallEll {
        notes.push(format!("small-ℓ mode: witness classes validated against maximal subgroups at ℓ = {ell}"));
    }
    if geometric.0 {
        notes.push("geometric image only: degree-1 places have determinant p mod ℓ".into());
    }
    if status == CertStatus::Inconclusive {
        notes.push("inconclusive is not a claim of nonsurjectivity".into());
    }
    Ok(SurjectivityCertificate {
        ell,
        n,
        status,
        mode,
        geometric,
        samples_used: samples.len(),
        single_witnesses: singles,
        pair_witnesses: pairs,
        notes,
    })
}
