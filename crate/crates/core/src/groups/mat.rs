use std::fmt;

use serde::{Deserialize, Serialize};

/// 2x2 matrix `[[a, b], [c, d]]` over Z/ℓZ.
///
/// Canonically encoded as the integer `((a ℓ + b) ℓ + c) ℓ + d < ℓ^4`, so
/// iterating codes in ascending order walks matrices row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2Mod {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub ell: u32,
}

impl Mat2Mod {
    pub fn new(a: i64, b: i64, c: i64, d: i64, ell: u32) -> Self {
        let r = |x: i64| x.rem_euclid(ell as i64) as u32;
        Mat2Mod { a: r(a), b: r(b), c: r(c), d: r(d), ell }
    }

    pub fn identity(ell: u32) -> Self {
        Self::new(1, 0, 0, 1, ell)
    }

    pub fn scalar(lambda: u32, ell: u32) -> Self {
        Self::new(lambda as i64, 0, 0, lambda as i64, ell)
    }

    pub fn diag(x: u32, y: u32, ell: u32) -> Self {
        Self::new(x as i64, 0, 0, y as i64, ell)
    }

    pub fn code(&self) -> u64 {
        let l = self.ell as u64;
        ((self.a as u64 * l + self.b as u64) * l + self.c as u64) * l + self.d as u64
    }

    pub fn from_code(code: u64, ell: u32) -> Self {
        let l = ell as u64;
        let d = (code % l) as u32;
        let c = (code / l % l) as u32;
        let b = (code / (l * l) % l) as u32;
        let a = (code / (l * l * l)) as u32;
        Mat2Mod { a, b, c, d, ell }
    }

    /// Number of distinct codes, `ℓ^4`.
    pub fn code_space(ell: u32) -> u64 {
        (ell as u64).pow(4)
    }

    fn m(&self) -> u64 {
        self.ell as u64
    }

    pub fn det(&self) -> u32 {
        let l = self.m();
        ((self.a as u64 * self.d as u64 + l * l - self.b as u64 * self.c as u64 % l) % l) as u32
    }

    pub fn trace(&self) -> u32 {
        (self.a + self.d) % self.ell 
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.ell, rhs.ell);
        let l = self.m();
        let (a, b, c, d) = (self.a as u64, self.b as u64, self.c as u64, self.d as u64);
        let (e, f, g, h) = (rhs.a as u64, rhs.b as u64, rhs.c as u64, rhs.d as u64);
        Mat2Mod {
            a: ((a * e + b * g) % l) as u32,
            b: ((a * f + b * h) % l) as u32,
            c: ((c * e + d * g) % l) as u32,
            d: ((c * f + d * h) % l) as u32,
            ell: self.ell,
        }
    }

    pub fn scale(&self, lambda: u32) -> Self {
        let l = self.m();
        let s = |x: u32| ((x as u64 * lambda as u64) % l) as u32;
        Mat2Mod { a: s(self.a), b: s(self.b), c: s(self.c), d: s(self.d), ell: self.ell }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ell - 1)
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == 0 {
            return None;
        }
        let inv = inv_u32(det, self.ell);
        let l = self.ell as i64;
        Some(
            Mat2Mod::new(self.d as i64, l - self.b as i64, l - self.c as i64, self.a as i64, self.ell)
                .scale(inv),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.ell);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_scalar(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    /// Representative of the class in PGL_2: scaled so the first nonzero
    /// entry (row-major) is 1.
    pub fn projective_rep(&self) -> Self {
        let lead = [self.a, self.b, self.c, self.d].into_iter().find(|&x| x != 0).unwrap_or(1);
        self.scale(inv_u32(lead, self.ell))
    }

    /// Order of the image in PGL_2.
    pub fn projective_order(&self) -> u64 {
        let mut k = 1;
        let mut x = *self;
        while !x.is_scalar() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Order in GL_2.
    pub fn order(&self) -> u64 {
        let id = Self::identity(self.ell);
        let mut k = 1;
        let mut x = *self;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// All invertible matrices, ascending by code.
    pub fn gl2(ell: u32) -> impl Iterator<Item = Mat2Mod> {
        (0..Self::code_space(ell)).map(move |c| Self::from_code(c, ell)).filter(Mat2Mod::is_invertible)
    }
}

pub(crate) fn inv_u32(x: u32, ell: u32) -> u32 {
    crate::arith::prime::inv_mod(x as u64, ell as u64).expect("invertible residue") as u32
}

impl fmt::Debug for Mat2Mod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]] mod {}", self.a, self.b, self.c, self.d, self.ell)
    }
}

impl fmt::Display for Mat2Mod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}
