//! Coefficient fields: exact rationals and prime fields.

use alloc::string::{String, ToString};
use core::fmt;
use core::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which field a coefficient type lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => f.write_str("QQ"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Field element used as polynomial coefficient.
///
/// Implementations are plain values; every operation returns a fresh element.
pub trait Coeff:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// `num / den`, or `None` when `den` vanishes in the field.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// `self - a * b`, the hot operation of every reduction loop.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.sub(&a.mul(b))
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// Signed numerator/denominator used for printing. Prime-field elements
    /// print through their symmetric representative.
    fn to_fraction(&self) -> (BigInt, BigInt);

    fn from_u64(v: u64) -> Self {
        Self::from_fraction(&BigInt::from(v), &BigInt::one()).expect("unit denominator")
    }
}

/// Exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Exact integer value, if the denominator is one and it fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Coeff for Rational {
    const KIND: FieldKind = FieldKind::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn to_fraction(&self) -> (BigInt, BigInt) {
        (self.0.numer().clone(), self.0.denom().clone())
    }
}

/// Element of the prime field `GF(P)`, stored as its residue in `[0, P)`.
///
/// `P` must be prime and below `2^32` so products fit in a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

/// The default fast-mode field, `p = 2^31 - 1`.
pub type Fp31 = Fp<2_147_483_647>;

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn residue(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }

    fn reduce_big(v: &BigInt) -> u64 {
        let m = BigInt::from(P);
        let r = v.mod_floor(&m);
        r.to_u64().expect("residue fits")
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Coeff for Fp<P> {
    const KIND: FieldKind = FieldKind::Prime(P);

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Fp::<P>(Self::reduce_big(den));
        let n = Fp::<P>(Self::reduce_big(num));
        d.inv().map(|di| n.mul(&di))
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    #[inline]
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        let prod = a.0 * b.0 % P;
        Fp(if self.0 >= prod { self.0 - prod } else { self.0 + P - prod })
    }
    fn to_fraction(&self) -> (BigInt, BigInt) {
        let v = if self.0 > P / 2 {
            -BigInt::from(P - self.0)
        } else {
            BigInt::from(self.0)
        };
        (v, BigInt::one())
    }
}

/// Render a coefficient as an exact string: `"n"` or `"n/d"`.
pub fn exact_string<C: Coeff>(c: &C) -> String {
    let (n, d) = c.to_fraction();
    if d.is_one() {
        n.to_string()
    } else {
        alloc::format!("{n}/{d}")
    }
}

/// True when the printed form of `c` starts with a minus sign.
pub fn is_negative<C: Coeff>(c: &C) -> bool {
    c.to_fraction().0.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn inverse_roundtrip() {
        for v in [1i64, 2, -7, 997, 123_456_789] {
            let q = Rational::from_i64(v);
            assert!(q.mul(&q.inv().unwrap()).is_one());
            let f = Fp31::from_i64(v);
            assert!(f.mul(&f.inv().unwrap()).is_one());
        }
        assert!(Rational::zero().inv().is_none());
        assert!(Fp31::zero().inv().is_none());
    }

    #[test]
    fn prime_field_residues() {
        let a = Fp31::from_i64(-1);
        assert_eq!(a.residue(), Fp31::MODULUS - 1);
        assert_eq!(a.to_string(), "-1");
        let half = Fp31::from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert!(half.add(&half).is_one());
        let p = BigInt::from(Fp31::MODULUS);
        assert!(Fp31::from_fraction(&BigInt::from(1), &p).is_none());
    }

    #[test]
    fn sub_mul_matches_composition() {
        let a = Fp31::from_i64(12345);
        let b = Fp31::from_i64(-999);
        let c = Fp31::from_i64(77);
        assert_eq!(c.sub_mul(&a, &b), c.sub(&a.mul(&b)));
        let qa = Rational::new(3, 7);
        let qb = Rational::new(-2, 5);
        let qc = Rational::new(1, 3);
        assert_eq!(qc.sub_mul(&qa, &qb), qc.sub(&qa.mul(&qb)));
    }
}
