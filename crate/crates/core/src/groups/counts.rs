//! Class sizes in GL_2(Z/ℓZ) by (trace, det), from exhaustive enumeration.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rayon::prelude::*;

use super::mat::Mat2Mod;
use crate::arith::prime::{is_prime, legendre_unchecked};
use crate::error::{Error, Result};

/// `counts[τ * ℓ + d]` = #{M : tr M = τ, det M = d}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceDetTable {
    ell: u32,
    counts: Vec<u64>,
}

impl TraceDetTable {
    /// Scans all `ℓ^4` matrices. Rows of the first entry are counted in
    /// parallel and summed, which is order-independent.
    pub fn compute(ell: u32) -> Result<Self> {
        if !is_prime(ell as u64) {
            return Err(Error::InvalidModulus(ell as u64));
        }
        let l = ell as usize;
        let counts = (0..ell)
            .into_par_iter()
            .map(|a| {
                let mut local = vec![0u64; l * l];
                for b in 0..ell {
                    for c in 0..ell {
                        for d in 0..ell {
                            let m = Mat2Mod { a, b, c, d, ell };
                            local[m.trace() as usize * l + m.det() as usize] += 1;
                        }
                    }
                }
                local
            })
            .reduce(
                || vec![0u64; l * l],
                |mut x, y| {
                    x.iter_mut().zip(y).for_each(|(s, v)| *s += v);
                    x
                },
            );
        Ok(TraceDetTable { ell, counts })
    }

    /// Shared per-ℓ table.
    pub fn cached(ell: u32) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<TraceDetTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("table cache").get(&ell) {
            return Ok(t.clone());
        }
        let table = Arc::new(Self::compute(ell)?);
        cache.lock().expect("table cache").insert(ell, table.clone());
        Ok(table)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn get(&self, tau: u32, det: u32) -> u64 {
        let l = self.ell as usize;
        self.counts[(tau % self.ell) as usize * l + (det % self.ell) as usize]
    }
}

fn residue(x: i64, ell: u32) -> u32 {
    x.rem_euclid(ell as i64) as u32
}

/// #{M ∈ GL_2(Z/ℓZ) : tr M = τ, det M = d}.
pub fn count_by_trace_det(ell: u32, tau: i64, d: i64) -> Result<u64> {
    let table = TraceDetTable::cached(ell)?;
    let d = residue(d, ell);
    if d == 0 {
        return Err(Error::InvalidInput("determinant must be nonzero mod ℓ".into()));
    }
    Ok(table.get(residue(tau, ell), d))
}

/// Closed form matching the enumeration for odd ℓ: `ℓ(ℓ + (δ/ℓ))` with
/// `δ = τ² − 4d`. The class is a split torus coset, a unipotent class plus
/// the scalar, or a nonsplit torus coset as `(δ/ℓ)` is 1, 0, −1.
pub fn trace_det_closed_form(ell: u32, tau: i64, d: i64) -> Result<u64> {
    crate::arith::prime::check_odd_prime(ell as u64)?;
    if residue(d, ell) == 0 {
        return Err(Error::InvalidInput("determinant must be nonzero mod ℓ".into()));
    }
    let l = ell as i64;
    let delta = (tau * tau - 4 * d).rem_euclid(l);
    let chi = legendre_unchecked(delta as u64, ell as u64) as i64;
    Ok((l * (l + chi)) as u64)
}

/// `|SL_2(Z/ℓZ)|^n = ℓ^n (ℓ² − 1)^n`.
pub fn det_fiber_size(ell: u32, n: u32) -> BigUint {
    let l = BigUint::from(ell);
    let sl2 = &l * (&l * &l - 1u32);
    sl2.pow(n)
}

/// `∏_i count_by_trace_det(ℓ, τ_i, d)`.
pub fn class_count_product(ell: u32, d: i64, taus: &[i64]) -> Result<BigUint> {
    if taus.is_empty() {
        return Err(Error::InvalidInput("trace vector is empty".into()));
    }
    taus.iter().try_fold(BigUint::from(1u32), |acc, &t| Ok(acc * count_by_trace_det(ell, t, d)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(ell: u32, tau: u32, d: u32) -> u64 {
        let mut n = 0;
        for a in 0..ell {
            for b in 0..ell {
                for c in 0..ell {
                    for e in 0..ell {
                        if (a + e) % ell == tau && (a * e + ell * ell - b * c % ell) % ell == d {
                            n += 1;
                        }
                    }
                }
            }
        }
        n
    }

    #[test]
    fn fiber_sums() {
        let s: u64 = (0..5).map(|t| count_by_trace_det(5, t, 1).unwrap()).sum();
        assert_eq!(s, 120);
        assert_eq!(count_by_trace_det(3, 0, 1).unwrap(), brute(3, 0, 1));
        assert_eq!(count_by_trace_det(3, 0, 1).unwrap(), 6);
        assert!(matches!(count_by_trace_det(5, 1, 0), Err(Error::InvalidInput(_))));
        assert!(matches!(count_by_trace_det(6, 1, 1), Err(Error::InvalidModulus(6))));
    }

    #[test]
    fn table_matches_brute_force() {
        for ell in [2u32, 3, 5, 7] {
            for t in 0..ell {
                for d in 1..ell {
                    assert_eq!(count_by_trace_det(ell, t as i64, d as i64).unwrap(), brute(ell, t, d));
                }
            }
        }
    }

    #[test]
    fn depends_on_square_class_only() {
        for ell in [5u32, 7] {
            let mut by_class: HashMap<i8, u64> = HashMap::new();
            for t in 0..ell as i64 {
                for d in 1..ell as i64 {
                    let delta = (t * t - 4 * d).rem_euclid(ell as i64);
                    let class = legendre_unchecked(delta as u64, ell as u64);
                    let c = count_by_trace_det(ell, t, d).unwrap();
                    assert_eq!(*by_class.entry(class).or_insert(c), c, "ℓ={ell} τ={t} d={d}");
                }
            }
            assert_eq!(by_class.len(), 3);
        }
    }

    #[test]
    fn closed_form_agrees_with_enumeration() {
        for ell in [3u32, 5, 7, 11, 13] {
            for t in 0..ell as i64 {
                for d in 1..ell as i64 {
                    assert_eq!(
                        trace_det_closed_form(ell, t, d).unwrap(),
                        count_by_trace_det(ell, t, d).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn trace_sign_symmetry() {
        for ell in [2u32, 3, 5, 7, 11] {
            for t in 0..ell as i64 {
                for d in 1..ell as i64 {
                    assert_eq!(
                        count_by_trace_det(ell, t, d).unwrap(),
                        count_by_trace_det(ell, -t, d).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn fiber_sizes() {
        assert_eq!(det_fiber_size(5, 1), BigUint::from(120u32));
        assert_eq!(det_fiber_size(5, 2), BigUint::from(14400u32));
        assert_eq!(det_fiber_size(7, 1), BigUint::from(336u32));
        let gl7: Vec<_> = Mat2Mod::gl2(7).collect();
        assert_eq!(gl7.iter().filter(|m| m.det() == 3).count(), 336);
        for ell in [5u32, 7] {
            let gl: Vec<_> = Mat2Mod::gl2(ell).collect();
            let pairs: usize = gl
                .par_iter()
                .map(|x| gl.iter().filter(|y| x.det() == 2 && y.det() == 2).count())
                .sum();
            assert_eq!(BigUint::from(pairs), det_fiber_size(ell, 2));
        }
    }

    #[test]
    fn product_counts() {
        let single = count_by_trace_det(5, 0, 1).unwrap();
        assert_eq!(class_count_product(5, 1, &[0]).unwrap(), BigUint::from(single));
        assert_eq!(class_count_product(5, 1, &[0, 0]).unwrap(), BigUint::from(single * single));
        let mut total = BigUint::from(0u32);
        for a in 0..5 {
            for b in 0..5 {
                total += class_count_product(5, 3, &[a, b]).unwrap();
            }
        }
        assert_eq!(total, det_fiber_size(5, 2));
    }
}
