//! Exact coefficients: ℚ and the rational function field ℚ(q).
//!
//! A [`Scalar`] is either a rational number or a non-constant rational
//! function `num/den` with `num, den ∈ ℤ[q]`. Rational functions are kept in
//! a unique canonical form:
//!
//! * `gcd(num, den) = 1` over ℚ[q];
//! * `den` has a positive leading coefficient;
//! * the integer contents of `num` and `den` are jointly coprime.
//!
//! Any result whose numerator and denominator are both constant is demoted
//! to [`Scalar::Rational`], so structural equality is field equality.

mod poly;

pub use poly::IntPoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Which ground field a presentation lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rational,
    RationalFunction,
}

impl FieldKind {
    /// Keyword used in presentation files.
    pub fn keyword(self) -> &'static str {
        match self {
            FieldKind::Rational => "rational",
            FieldKind::RationalFunction => "rational_q",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    RationalFunction(RationalFunction),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    /// The transcendental `q`.
    pub fn q() -> Self {
        Scalar::RationalFunction(RationalFunction {
            num: IntPoly::monomial(BigInt::one(), 1),
            den: IntPoly::one(),
        })
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k == 0 {
            return Scalar::one();
        }
        let mono = IntPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        let (num, den) = if k > 0 {
            (mono, IntPoly::one())
        } else {
            (IntPoly::one(), mono)
        };
        Scalar::RationalFunction(RationalFunction { num, den })
    }

    /// Builds `num/den` and normalizes it.
    pub fn from_polys(num: IntPoly, den: IntPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        } else {
            (num, den)
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_exact_scalar(&c);
            den = den.div_exact_scalar(&c);
        }
        if num.is_constant() && den.is_constant() {
            return Scalar::Rational(BigRational::new(num.constant_term(), den.constant_term()));
        }
        Scalar::RationalFunction(RationalFunction { num, den })
    }

    /// View as `num/den` over ℤ[q] (rationals become constant polynomials).
    pub fn to_polys(&self) -> (IntPoly, IntPoly) {
        match self {
            Scalar::Rational(r) => (
                IntPoly::constant(r.numer().clone()),
                IntPoly::constant(r.denom().clone()),
            ),
            Scalar::RationalFunction(f) => (f.num.clone(), f.den.clone()),
        }
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::RationalFunction(_) => FieldKind::RationalFunction,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::RationalFunction(_) => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::RationalFunction(f) => Ok(Self::normalize(f.den.clone(), f.num.clone())),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Scalar, FieldError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// True when the canonical text needs parentheses to be used as a factor.
    pub fn is_compound(&self) -> bool {
        let s = self.to_string();
        s.contains(' ') || s.contains('/')
    }

    /// Negative rational constant.
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => {
                let (an, ad) = self.to_polys();
                let (bn, bd) = rhs.to_polys();
                if ad == bd {
                    return Scalar::normalize(an.add(&bn), ad);
                }
                Scalar::normalize(an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => {
                if self.is_zero() || rhs.is_zero() {
                    return Scalar::zero();
                }
                if self.is_one() {
                    return rhs.clone();
                }
                if rhs.is_one() {
                    return self.clone();
                }
                let (an, ad) = self.to_polys();
                let (bn, bd) = rhs.to_polys();
                Scalar::normalize(an.mul(&bn), ad.mul(&bd))
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::RationalFunction(f) => Scalar::RationalFunction(RationalFunction {
                num: f.num.neg(),
                den: f.den.clone(),
            }),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::RationalFunction(rf) => {
                let multi = |p: &IntPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
                if rf.den.is_one() {
                    return write!(f, "{}", rf.num);
                }
                if multi(&rf.num) {
                    write!(f, "({})", rf.num)?;
                } else {
                    write!(f, "{}", rf.num)?;
                }
                let den_is_atom = !multi(&rf.den) && {
                    // a bare `q^k` or integer needs no parentheses
                    let lc = rf.den.leading();
                    lc.is_one() || rf.den.is_constant()
                };
                if den_is_atom {
                    write!(f, "/{}", rf.den)
                } else {
                    write!(f, "/({})", rf.den)
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> Scalar {
        Scalar::from_polys(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn cancellation() {
        // (q²−1)/(q−1) = q+1
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]).to_string(), "1 + q");
    }

    #[test]
    fn additive_inverses() {
        let a = rf(&[1], &[-1, 1]);
        let b = rf(&[1], &[1, -1]);
        assert!((&a + &b).is_zero());
        assert_eq!(&a + &b, Scalar::zero());
    }

    #[test]
    fn inverse_swaps() {
        let a = rf(&[0, 1], &[1, 1]);
        assert_eq!(a.inv().unwrap(), rf(&[1, 1], &[0, 1]));
        assert_eq!(Scalar::zero().inv(), Err(FieldError::DivisionByZero));
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
    }

    #[test]
    fn canonical_denominator() {
        // 1/(2q) keeps integer numerator with jointly coprime contents
        let a = rf(&[1], &[0, 2]);
        let (n, d) = a.to_polys();
        assert_eq!(n, poly(&[1]));
        assert_eq!(d, poly(&[0, 2]));
        // −2/(−4q) = 1/(2q)
        assert_eq!(rf(&[-2], &[0, -4]), a);
        assert_eq!(a.to_string(), "1/(2*q)");
    }

    #[test]
    fn constants_demote() {
        assert_eq!(rf(&[0, 3], &[0, 6]), Scalar::from_ratio(1, 2).unwrap());
        assert_eq!(Scalar::q_pow(2).pow(-1).unwrap(), Scalar::q_pow(-2));
        assert_eq!((&Scalar::q_pow(3) * &Scalar::q_pow(-3)), Scalar::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::q_pow(-2).to_string(), "1/q^2");
        assert_eq!(rf(&[0, 1], &[-1, 0, 1]).to_string(), "q/(-1 + q^2)");
        assert_eq!(Scalar::from_ratio(-3, 6).unwrap().to_string(), "-1/2");
    }
}
