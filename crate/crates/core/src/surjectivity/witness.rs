//! Conjugacy-invariant witness classes of (trace, det) pairs.
//!
//! With `δ = tr² − 4 det` and `u = tr²/det`:
//! * W1: `δ` a nonzero square and `tr ≠ 0`; no such element lies in the
//!   normalizer of a nonsplit Cartan.
//! * W2: `δ` a nonsquare and `tr ≠ 0`; none lies in a Borel or in the
//!   normalizer of a split Cartan.
//! * W3: `u ∉ {0, 1, 2, 4}` and `u² − 3u + 1 ≠ 0`, i.e. projective order
//!   above 5; none lies in an exceptional preimage.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::prime::{inv_mod, legendre_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WitnessClass {
    W1,
    W2,
    W3,
}

impl WitnessClass {
    pub const ALL: [WitnessClass; 3] = [WitnessClass::W1, WitnessClass::W2, WitnessClass::W3];
}

impl fmt::Display for WitnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which of W1, W2, W3 the pair `(tr, det)` satisfies. `det` must be a unit.
pub fn witness_classes(tr: u64, det: u64, ell: u64) -> [bool; 3] {
    let (tr, det) = (tr % ell, det % ell);
    debug_assert!(det != 0);
    let tr2 = tr * tr % ell;
    let delta = (tr2 + 4 * (ell - det)) % ell;
    let chi = legendre_unchecked(delta, ell);
    let u = tr2 * inv_mod(det, ell).expect("unit determinant") % ell;
    let golden = (u * u + 3 * (ell - u) + 1) % ell;
    let w3 = ![0, 1, 2, 4].iter().any(|&x| x % ell == u) && golden != 0;
    [chi == 1 && tr != 0, chi == -1 && tr != 0, w3]
}

pub fn satisfies(class: WitnessClass, tr: u64, det: u64, ell: u64) -> bool {
    witness_classes(tr, det, ell)[class as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Mat2Mod;

    #[test]
    fn full_gl2_has_every_class() {
        for ell in [17u32, 19, 23] {
            let mut seen = [false; 3];
            for tr in 0..ell as u64 {
                for det in 1..ell as u64 {
                    for (s, w) in seen.iter_mut().zip(witness_classes(tr, det, ell as u64)) {
                        *s |= w;
                    }
                }
            }
            assert_eq!(seen, [true; 3]);
        }
    }

    #[test]
    fn w3_is_semisimple_projective_order_above_five() {
        for ell in [7u32, 11, 13, 17] {
            for m in Mat2Mod::gl2(ell) {
                let w3 = satisfies(WitnessClass::W3, m.trace() as u64, m.det() as u64, ell as u64);
                let order = m.projective_order();
                // Projective order ℓ comes from unipotent classes, where u = 4.
                assert_eq!(w3, order > 5 && order != ell as u64, "{m:?}");
            }
        }
    }

    #[test]
    fn trace_zero_fails_w1_w2() {
        for det in 1..17 {
            let [w1, w2, _] = witness_classes(0, det, 17);
            assert!(!w1 && !w2);
        }
    }
}
