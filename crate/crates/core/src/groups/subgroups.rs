//! Standard subgroups of GL_2(F_ℓ): generators for SL_2 and GL_2, the Borel,
//! normalizers of split and nonsplit Cartans, and preimages of the
//! exceptional projective groups A4, S4, A5.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::closure::{closure, DetLocusElement, DEFAULT_CLOSURE_CAP};
use super::mat::Mat2Mod;
use crate::arith::prime::{legendre_unchecked, pow_mod, prime_factors};

/// Smallest generator of F_ℓ^*.
pub fn primitive_root(ell: u32) -> u32 {
    let l = ell as u64;
    let factors = prime_factors(l - 1);
    (1..l)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (l - 1) / q, l) != 1))
        .expect("prime modulus has a primitive root") as u32
}

fn nonsquare(ell: u32) -> u32 {
    (2..ell).find(|&e| legendre_unchecked(e as u64, ell as u64) == -1).expect("odd prime")
}

/// `[[1,1],[0,1]]` and `[[1,0],[1,1]]`.
pub fn sl2_generators(ell: u32) -> Vec<Mat2Mod> {
    vec![Mat2Mod::new(1, 1, 0, 1, ell), Mat2Mod::new(1, 0, 1, 1, ell)]
}

pub fn gl2_generators(ell: u32) -> Vec<Mat2Mod> {
    let mut g = sl2_generators(ell);
    g.push(Mat2Mod::diag(primitive_root(ell), 1, ell));
    g
}

/// All elements of the subgroup generated by `gens`, ascending.
pub fn generate(gens: &[Mat2Mod]) -> Vec<Mat2Mod> {
    let lifted: Vec<_> =
        gens.iter().map(|m| DetLocusElement::new(vec![*m]).expect("invertible generator")).collect();
    let h = closure(&lifted, DEFAULT_CLOSURE_CAP).expect("nonempty generators");
    h.elements().map(|e| e.mats()[0]).collect()
}

/// Upper triangular matrices.
pub fn borel(ell: u32) -> Vec<Mat2Mod> {
    let g = primitive_root(ell);
    generate(&[Mat2Mod::diag(g, 1, ell), Mat2Mod::diag(1, g, ell), Mat2Mod::new(1, 1, 0, 1, ell)])
}

/// Diagonal and antidiagonal matrices.
pub fn split_cartan_normalizer(ell: u32) -> Vec<Mat2Mod> {
    let g = primitive_root(ell);
    generate(&[Mat2Mod::diag(g, 1, ell), Mat2Mod::diag(1, g, ell), Mat2Mod::new(0, 1, 1, 0, ell)])
}

/// `F_{ℓ²}^*` embedded as `a + b√ε ↦ [[a, εb], [b, a]]`, with the Galois
/// conjugation `diag(1, −1)`.
pub fn nonsplit_cartan_normalizer(ell: u32) -> Vec<Mat2Mod> {
    let eps = nonsquare(ell) as i64;
    let target = (ell as u64).pow(2) - 1;
    let gen = (0..ell as i64)
        .flat_map(|a| (1..ell as i64).map(move |b| (a, b)))
        .map(|(a, b)| Mat2Mod::new(a, eps * b, b, a, ell))
        .find(|m| m.order() == target)
        .expect("F_{ℓ²}^* is cyclic");
    generate(&[gen, Mat2Mod::new(1, 0, 0, -1, ell)])
}

/// Generators of `{(b, χ(b) f0 b f0^{-1}) : b ∈ GL_2}`, with `χ` the
/// Legendre symbol of the determinant when `quadratic`, else trivial.
pub fn twisted_graph_generators(ell: u32, f0: Mat2Mod, quadratic: bool) -> Vec<DetLocusElement> {
    let f0inv = f0.inverse().expect("invertible conjugator");
    gl2_generators(ell)
        .into_iter()
        .map(|b| {
            let mut c = f0.mul(&b).mul(&f0inv);
            if quadratic && legendre_unchecked(b.det() as u64, ell as u64) == -1 {
                c = c.neg();
            }
            DetLocusElement::new(vec![b, c]).expect("conjugation preserves det")
        })
        .collect()
}

/// Three elements generating all of `D = {(b, b') : det b = det b'}` at
/// ℓ = 5 and ℓ = 7.
pub fn fiber_product_generators(ell: u32) -> Vec<DetLocusElement> {
    let [t, u] = [Mat2Mod::new(1, 1, 0, 1, ell), Mat2Mod::new(1, 0, 1, 1, ell)];
    let w = Mat2Mod::new(0, 1, -1, 0, ell);
    let g = primitive_root(ell);
    [(t, w), (u, t), (Mat2Mod::diag(g, 1, ell), Mat2Mod::diag(1, g, ell))]
        .into_iter()
        .map(|(a, b)| DetLocusElement::new(vec![a, b]).expect("equal determinants"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalKind {
    A4,
    S4,
    A5,
}

impl ExceptionalKind {
    pub const ALL: [ExceptionalKind; 3] = [ExceptionalKind::A4, ExceptionalKind::S4, ExceptionalKind::A5];

    pub fn order(self) -> usize {
        match self {
            ExceptionalKind::A4 => 12,
            ExceptionalKind::S4 => 24,
            ExceptionalKind::A5 => 60,
        }
    }

    /// Projective orders of a generating pair.
    fn generator_orders(self) -> (u64, u64) {
        match self {
            ExceptionalKind::A4 => (2, 3),
            ExceptionalKind::S4 => (4, 3),
            ExceptionalKind::A5 => (2, 3),
        }
    }
}

/// Closure in PGL_2 on projective representatives, abandoned past `cap`.
fn projective_closure(gens: &[Mat2Mod], cap: usize) -> Option<BTreeSet<Mat2Mod>> {
    let id = Mat2Mod::identity(gens[0].ell);
    let mut seen = BTreeSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g).projective_rep();
            if seen.insert(y) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

/// Full preimage in GL_2 of a subgroup of PGL_2 isomorphic to `kind`, or
/// `None` if PGL_2(F_ℓ) has none. Found by searching generating pairs.
pub fn exceptional_subgroup(ell: u32, kind: ExceptionalKind) -> Option<Vec<Mat2Mod>> {
    let reps: Vec<Mat2Mod> = Mat2Mod::gl2(ell).filter(|m| m.projective_rep() == *m).collect();
    let (r1, r2) = kind.generator_orders();
    let xs: Vec<_> = reps.iter().filter(|m| m.projective_order() == r1).collect();
    let ys: Vec<_> = reps.iter().filter(|m| m.projective_order() == r2).collect();
    for x in &xs {
        for y in &ys {
            if let Some(h) = projective_closure(&[**x, **y], kind.order()) {
                if h.len() == kind.order() {
                    let mut full: Vec<Mat2Mod> =
                        h.iter().flat_map(|m| (1..ell).map(move |s| m.scale(s))).collect();
                    full.sort_unstable();
                    return Some(full);
                }
            }
        }
    }
    None
}
