//! Elements of the determinant locus Δ_ℓ ⊂ GL_2(Z/ℓZ)^n and subgroup closure.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::mat::Mat2Mod;
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 10_000_000;

/// Tuple `(M_1, ..., M_n)` with a common nonzero determinant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DetLocusElement {
    mats: Vec<Mat2Mod>,
}

impl DetLocusElement {
    pub fn new(mats: Vec<Mat2Mod>) -> Result<Self> {
        let first = mats.first().ok_or_else(|| Error::InvalidInput("empty tuple".into()))?;
        let (ell, det) = (first.ell, first.det());
        if det == 0 {
            return Err(Error::InvalidInput("singular matrix".into()));
        }
        if mats.iter().any(|m| m.ell != ell || m.det() != det) {
            return Err(Error::InvalidInput("matrices must share ℓ and determinant".into()));
        }
        Ok(DetLocusElement { mats })
    }

    pub fn identity(ell: u32, n: usize) -> Self {
        DetLocusElement { mats: vec![Mat2Mod::identity(ell); n] }
    }

    /// `(b, b)`.
    pub fn diagonal(m: Mat2Mod, n: usize) -> Result<Self> {
        Self::new(vec![m; n])
    }

    pub fn mats(&self) -> &[Mat2Mod] {
        &self.mats
    }

    pub fn n(&self) -> usize {
        self.mats.len()
    }

    pub fn ell(&self) -> u32 {
        self.mats[0].ell
    }

    pub fn det(&self) -> u32 {
        self.mats[0].det()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        DetLocusElement { mats: self.mats.iter().zip(&rhs.mats).map(|(x, y)| x.mul(y)).collect() }
    }

    pub fn inverse(&self) -> Self {
        DetLocusElement {
            mats: self.mats.iter().map(|m| m.inverse().expect("invertible")).collect(),
        }
    }

    /// Mixed-radix code `Σ code(M_i) ℓ^{4i}`.
    pub fn code(&self) -> u128 {
        let base = Mat2Mod::code_space(self.ell()) as u128;
        self.mats.iter().rev().fold(0u128, |acc, m| acc * base + m.code() as u128)
    }

    pub fn from_code(mut code: u128, ell: u32, n: usize) -> Self {
        let base = Mat2Mod::code_space(ell) as u128;
        let mats = (0..n)
            .map(|_| {
                let m = Mat2Mod::from_code((code % base) as u64, ell);
                code /= base;
                m
            })
            .collect();
        DetLocusElement { mats }
    }
}

impl fmt::Debug for DetLocusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.mats.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ") mod {}", self.ell())
    }
}

/// Subgroup generated by a finite set, as a sorted list of codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClosure {
    pub ell: u32,
    pub n: usize,
    pub generators: Vec<DetLocusElement>,
    elements: Vec<u128>,
    pub complete: bool,
}

impl SubgroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &DetLocusElement) -> bool {
        self.elements.binary_search(&x.code()).is_ok()
    }

    pub fn codes(&self) -> &[u128] {
        &self.elements
    }

    /// Elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = DetLocusElement> + '_ {
        self.elements.iter().map(|&c| DetLocusElement::from_code(c, self.ell, self.n))
    }

    /// Checks `a b^{-1} ∈ H` for every pair. Quadratic in `|H|`.
    pub fn is_closed(&self) -> bool {
        let elems: Vec<_> = self.elements().collect();
        elems.iter().all(|a| elems.iter().all(|b| self.contains(&a.mul(&b.inverse()))))
    }
}

/// Breadth-first closure under right multiplication by the generators,
/// starting from the identity. Stops once `cap` elements are known and
/// reports `complete = false`.
pub fn closure(generators: &[DetLocusElement], cap: usize) -> Result<SubgroupClosure> {
    let first = generators.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let (ell, n) = (first.ell(), first.n());
    if generators.iter().any(|g| g.ell() != ell || g.n() != n) {
        return Err(Error::InvalidInput("generators must share ℓ and n".into()));
    }
    let id = DetLocusElement::identity(ell, n);
    let mut seen: HashSet<u128> = HashSet::from([id.code()]);
    let mut queue = VecDeque::from([id]);
    let mut complete = true;
    'bfs: while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.mul(g);
            if seen.insert(y.code()) {
                if seen.len() > cap {
                    complete = false;
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
    }
    // In a finite group the monoid generated is already a group.
    let mut elements: Vec<u128> = seen.into_iter().collect();
    elements.sort_unstable();
    if !complete {
        log::warn!("closure stopped at cap {cap}");
    }
    Ok(SubgroupClosure { ell, n, generators: generators.to_vec(), elements, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::subgroups::sl2_generators;

    #[test]
    fn trivial_group() {
        let h = closure(&[DetLocusElement::identity(5, 2)], 100).unwrap();
        assert_eq!(h.order(), 1);
        assert!(h.complete);
    }

    #[test]
    fn diagonal_sl2_is_graph() {
        let gens: Vec<_> =
            sl2_generators(5).into_iter().map(|m| DetLocusElement::diagonal(m, 2).unwrap()).collect();
        let h = closure(&gens, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(h.order(), 120);
        assert!(h.complete && h.is_closed());
    }

    #[test]
    fn cap_marks_incomplete() {
        let gens: Vec<_> =
            sl2_generators(7).into_iter().map(|m| DetLocusElement::diagonal(m, 2).unwrap()).collect();
        let h = closure(&gens, 50).unwrap();
        assert!(!h.complete);
        assert!(h.order() < 336);
    }

    #[test]
    fn rejects_mismatched_input() {
        let a = Mat2Mod::diag(2, 1, 5);
        assert!(DetLocusElement::new(vec![a, Mat2Mod::identity(5)]).is_err());
        assert!(closure(&[], 10).is_err());
        let g1 = DetLocusElement::identity(5, 2);
        let g2 = DetLocusElement::identity(7, 2);
        assert!(closure(&[g1, g2], 10).is_err());
    }

    #[test]
    fn code_round_trip() {
        let x = DetLocusElement::new(vec![Mat2Mod::new(1, 2, 3, 1, 7), Mat2Mod::new(2, 1, 2, 2, 7)])
            .unwrap();
        assert_eq!(DetLocusElement::from_code(x.code(), 7, 2), x);
    }
}
