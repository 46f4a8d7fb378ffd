use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Field, Fp, IntPoly, Poly, PrimeModulus, Rational, RationalFunction, Ring};
use crate::error::{Error, Result};

/// Coefficient domain of a curve model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainTag {
    /// The rationals.
    Q,
    /// The prime field F_p.
    Fp(u64),
    /// Rational functions Q(t).
    QT,
    /// Rational functions F_p(t).
    FpT(u64),
}

/// Coefficient rings a short Weierstrass curve may live over.
pub trait CurveBase: Field {
    fn domain_tag(&self) -> DomainTag;
}

impl CurveBase for Rational {
    fn domain_tag(&self) -> DomainTag {
        DomainTag::Q
    }
}

impl CurveBase for Fp {
    fn domain_tag(&self) -> DomainTag {
        DomainTag::Fp(self.modulus())
    }
}

impl CurveBase for RationalFunction<Rational> {
    fn domain_tag(&self) -> DomainTag {
        DomainTag::QT
    }
}

impl CurveBase for RationalFunction<Fp> {
    fn domain_tag(&self) -> DomainTag {
        let p = self.denominator().leading().expect("nonzero denominator").modulus();
        DomainTag::FpT(p)
    }
}

/// `-16 (4 a4^3 + 27 a6^2)`, returned even when it vanishes.
pub fn discriminant_of<R: Ring>(a4: &R, a6: &R) -> R {
    let four_a4_cubed = a4.from_int_like(4).times(&a4.pow_u32(3));
    let twenty_seven_a6_sq = a4.from_int_like(27).times(&a6.pow_u32(2));
    a4.from_int_like(-16).times(&four_a4_cubed.plus(&twenty_seven_a6_sq))
}

/// `1728 * 4 a4^3 / (4 a4^3 + 27 a6^2)`.
pub fn j_invariant_of<F: Field>(a4: &F, a6: &F) -> Result<F> {
    let four_a4_cubed = a4.from_int_like(4).times(&a4.pow_u32(3));
    let denom = four_a4_cubed.plus(&a4.from_int_like(27).times(&a6.pow_u32(2)));
    a4.from_int_like(1728)
        .times(&four_a4_cubed)
        .divided(&denom)
        .ok_or(Error::SingularCurve)
}

/// Short Weierstrass curve `y^2 = x^3 + a4 x + a6` with nonzero discriminant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve<R> {
    a4: R,
    a6: R,
}

impl<R: CurveBase> WeierstrassCurve<R> {
    pub fn new(a4: R, a6: R) -> Result<Self> {
        if discriminant_of(&a4, &a6).is_zero_elem() {
            return Err(Error::SingularCurve);
        }
        Ok(WeierstrassCurve { a4, a6 })
    }

    pub fn a4(&self) -> &R {
        &self.a4
    }

    pub fn a6(&self) -> &R {
        &self.a6
    }

    pub fn domain(&self) -> DomainTag {
        self.a4.domain_tag()
    }

    pub fn discriminant(&self) -> R {
        discriminant_of(&self.a4, &self.a6)
    }

    pub fn j_invariant(&self) -> R {
        j_invariant_of(&self.a4, &self.a6).expect("valid curve has nonzero discriminant")
    }
}

impl<F: Field> WeierstrassCurve<RationalFunction<F>>
where
    RationalFunction<F>: CurveBase,
    F: CurveBase,
{
    /// Curve from polynomial coefficients.
    pub fn from_polys(a4: Poly<F>, a6: Poly<F>, like: &F) -> Result<Self> {
        Self::new(RationalFunction::from_poly(a4, like), RationalFunction::from_poly(a6, like))
    }

    /// `j` lies in the constant field.
    pub fn is_isotrivial(&self) -> bool {
        self.j_invariant().is_constant()
    }

    /// Fibre at `t0`. Poles are reported before bad reduction.
    pub fn specialize(&self, t0: &F) -> Result<WeierstrassCurve<F>> {
        let a4 = self.a4.eval(t0)?;
        let a6 = self.a6.eval(t0)?;
        WeierstrassCurve::new(a4, a6).map_err(|_| Error::BadReduction)
    }
}

impl WeierstrassCurve<Fp> {
    pub fn modulus(&self) -> u64 {
        self.a4.modulus()
    }

    /// Twist by `d`: `(a4, a6) -> (d^2 a4, d^3 a6)`.
    pub fn quadratic_twist(&self, d: Fp) -> Result<Self> {
        if self.modulus() <= 3 {
            return Err(Error::UnsupportedCharacteristic(self.modulus()));
        }
        Self::new(self.a4.times(&d.pow_u32(2)), self.a6.times(&d.pow_u32(3)))
    }
}

impl WeierstrassCurve<Rational> {
    pub fn from_integers(a4: i64, a6: i64) -> Result<Self> {
        Self::new(
            Rational::from_integer(BigInt::from(a4)),
            Rational::from_integer(BigInt::from(a6)),
        )
    }

    /// Integral model `(u^4 a4, u^6 a6)` with `u` the lcm of the coefficient
    /// denominators. Isomorphic over Q, so Frobenius traces agree at every
    /// prime not dividing `u`.
    pub fn integral_model(&self) -> IntegralModel {
        let u = self.a4.denom().lcm(self.a6.denom());
        let a4 = (&self.a4 * Rational::from_integer(u.pow(4))).to_integer();
        let a6 = (&self.a6 * Rational::from_integer(u.pow(6))).to_integer();
        IntegralModel::new(a4, a6)
    }
}

/// Short Weierstrass model with integer coefficients, for reduction mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralModel {
    pub a4: BigInt,
    pub a6: BigInt,
    pub discriminant: BigInt,
}

impl IntegralModel {
    pub fn new(a4: BigInt, a6: BigInt) -> Self {
        let discriminant = discriminant_of(&a4, &a6);
        IntegralModel { a4, a6, discriminant }
    }

    /// Good reduction at `p` in the sense `p ∤ Δ` for this model; may
    /// over-report bad primes for non-minimal models.
    pub fn has_good_reduction(&self, p: u64) -> bool {
        !(&self.discriminant % BigInt::from(p)).is_zero()
    }

    /// Reduction mod `p`, `None` at bad primes.
    pub fn reduce(&self, p: PrimeModulus) -> Option<WeierstrassCurve<Fp>> {
        if !self.has_good_reduction(p.get()) {
            return None;
        }
        WeierstrassCurve::new(Fp::from_bigint(&self.a4, p), Fp::from_bigint(&self.a6, p)).ok()
    }

    /// Residues of `(a4, a6)` mod `p` as plain words.
    pub fn residues(&self, p: u64) -> (u64, u64) {
        let m = BigInt::from(p);
        let r = |x: &BigInt| u64::try_from(x.mod_floor(&m)).expect("residue fits");
        (r(&self.a4), r(&self.a6))
    }

    pub fn j_invariant(&self) -> Rational {
        j_invariant_of(
            &Rational::from_integer(self.a4.clone()),
            &Rational::from_integer(self.a6.clone()),
        )
        .expect("nonsingular model")
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant.is_zero()
    }

    pub fn abs_discriminant(&self) -> BigInt {
        self.discriminant.abs()
    }
}

/// Curve over Q(t) with integer polynomial coefficients, as read from the
/// `[A-coeffs];[B-coeffs]` input format.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyCurve {
    pub a: IntPoly,
    pub b: IntPoly,
}

impl PolyCurve {
    pub fn new(a: IntPoly, b: IntPoly) -> Self {
        PolyCurve { a, b }
    }

    pub fn discriminant(&self) -> IntPoly {
        discriminant_poly(&self.a, &self.b)
    }

    pub fn over_q_t(&self) -> Result<WeierstrassCurve<RationalFunction<Rational>>> {
        let one = Rational::one();
        WeierstrassCurve::from_polys(self.a.to_rational(), self.b.to_rational(), &one)
    }

    /// Reduction to F_p(t); `SingularCurve` if the discriminant dies mod p.
    pub fn over_fp_t(&self, p: PrimeModulus) -> Result<WeierstrassCurve<RationalFunction<Fp>>> {
        WeierstrassCurve::from_polys(self.a.reduce_mod(p), self.b.reduce_mod(p), &p.elem(1))
    }

    /// Both coefficients have degree <= 0.
    pub fn is_constant_curve(&self) -> bool {
        self.a.is_constant() && self.b.is_constant()
    }

    /// A constant curve read as a curve over Q.
    pub fn over_q(&self) -> Result<WeierstrassCurve<Rational>> {
        if !self.is_constant_curve() {
            return Err(Error::InvalidInput(format!("{self} depends on t")));
        }
        WeierstrassCurve::new(self.a.eval_rational(&Rational::zero()), self.b.eval_rational(&Rational::zero()))
    }

    /// Fibre at a rational `t0` as a curve over Q.
    pub fn specialize_q(&self, t0: &Rational) -> Result<WeierstrassCurve<Rational>> {
        WeierstrassCurve::new(self.a.eval_rational(t0), self.b.eval_rational(t0))
            .map_err(|_| Error::BadReduction)
    }
}

fn discriminant_poly(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let c = |n: i64| IntPoly::from_i64s(&[n]);
    c(-16).times(&c(4).times(&a.pow(3)).plus(&c(27).times(&b.pow(2))))
}

impl fmt::Display for PolyCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.a, self.b)
    }
}

impl fmt::Debug for PolyCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyCurve({self})")
    }
}

impl std::str::FromStr for PolyCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(';').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!(
                "expected `[A-coeffs];[B-coeffs]` (short Weierstrass only), got {s:?}"
            )));
        }
        Ok(PolyCurve::new(parts[0].parse()?, parts[1].parse()?))
    }
}

impl<R: CurveBase + fmt::Debug> fmt::Debug for WeierstrassCurve<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({:?}) x + ({:?})", self.a4, self.a6)
    }
}
