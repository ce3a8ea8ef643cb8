//! Scalars over the three supported fields.
//!
//! A [`FieldSpec`] picks the field: the rationals (exact, arbitrary precision),
//! a prime field `F_p` (exact), or the reals approximated by `f64` with a
//! single comparison tolerance. [`Scalar`] carries its spec so that mixing
//! fields is caught at run time.
//!
//! Arithmetic operators (`+`, `-`, `*`, unary `-`) panic when the operands
//! live over different fields; the `checked_*` methods report
//! [`Error::MixedFieldSpecs`] instead.

mod poly;
mod prime;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use poly::{LowDegreePoly, RealRootScan};

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    Rationals,
    PrimeField { p: u64 },
    ApproxReals { tol: f64 },
}

/// A validated field descriptor. Construct with [`FieldSpec::rationals`],
/// [`FieldSpec::prime`] or [`FieldSpec::reals`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec(FieldKind);

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec(FieldKind::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !prime::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec(FieldKind::PrimeField { p }))
    }

    pub fn reals(tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::BadTolerance(tol));
        }
        Ok(FieldSpec(FieldKind::ApproxReals { tol }))
    }

    pub fn kind(&self) -> FieldKind {
        self.0
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.0, FieldKind::ApproxReals { .. })
    }

    /// The modulus, for prime fields.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            FieldKind::PrimeField { p } => Some(p),
            _ => None,
        }
    }

    /// The comparison tolerance, for approximate reals.
    pub fn tolerance(&self) -> Option<f64> {
        match self.0 {
            FieldKind::ApproxReals { tol } => Some(tol),
            _ => None,
        }
    }

    /// Every element of a prime field in residue order `0..p`.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar> + '_> {
        let p = self.modulus()?;
        Some((0..p).map(move |r| Scalar::residue(*self, r)))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField { p } => write!(f, "F_{p}"),
            FieldKind::ApproxReals { tol } => write!(f, "R (tol {tol:e})"),
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
    Real(f64),
}

/// An element of the field described by its [`FieldSpec`].
#[derive(Debug, Clone)]
pub struct Scalar {
    spec: FieldSpec,
    repr: Repr,
}

impl Scalar {
    pub fn zero(spec: FieldSpec) -> Self {
        Scalar::from_i64(spec, 0)
    }

    pub fn one(spec: FieldSpec) -> Self {
        Scalar::from_i64(spec, 1)
    }

    pub fn from_i64(spec: FieldSpec, n: i64) -> Self {
        let repr = match spec.0 {
            FieldKind::Rationals => Repr::Rational(BigRational::from_integer(n.into())),
            FieldKind::PrimeField { p } => Repr::Residue((n as i128).rem_euclid(p as i128) as u64),
            FieldKind::ApproxReals { .. } => Repr::Real(n as f64),
        };
        Scalar { spec, repr }
    }

    fn residue(spec: FieldSpec, r: u64) -> Self {
        Scalar {
            spec,
            repr: Repr::Residue(r),
        }
    }

    fn real(spec: FieldSpec, v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        // normalise -0.0 so rendering is canonical
        let v = if v == 0.0 { 0.0 } else { v };
        Ok(Scalar {
            spec,
            repr: Repr::Real(v),
        })
    }

    /// A real scalar from a float. Fails on non-finite input or a non-real spec.
    pub fn from_f64(spec: FieldSpec, v: f64) -> Result<Self> {
        match spec.0 {
            FieldKind::ApproxReals { .. } => Scalar::real(spec, v),
            _ => Err(Error::MixedFieldSpecs),
        }
    }

    /// Maps a rational number into the field. Over `F_p` this fails when the
    /// denominator vanishes mod `p`.
    pub fn from_rational(spec: FieldSpec, q: &BigRational) -> Result<Self> {
        match spec.0 {
            FieldKind::Rationals => Ok(Scalar {
                spec,
                repr: Repr::Rational(q.clone()),
            }),
            FieldKind::PrimeField { p } => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::ZeroDenominator(q.to_string()));
                }
                Ok(Scalar::residue(
                    spec,
                    prime::mul_mod(num, prime::inv_mod(den, p), p),
                ))
            }
            FieldKind::ApproxReals { .. } => {
                let v = q.to_f64().ok_or(Error::NonFinite)?;
                Scalar::real(spec, v)
            }
        }
    }

    /// Parses the scalar text syntax: an optionally signed integer, a fraction
    /// `a/b`, or (reals only) a decimal with optional exponent.
    pub fn parse(text: &str, spec: FieldSpec) -> Result<Self> {
        let t = text.trim();
        let malformed = || Error::MalformedScalar(text.to_string());
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (-1, &t[1..]),
            Some(b'+') => (1, &t[1..]),
            _ => (1, t),
        };
        if body.is_empty() {
            return Err(malformed());
        }
        let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());

        let rational = if let Some((num, den)) = body.split_once('/') {
            if !all_digits(num) || !all_digits(den) {
                return Err(malformed());
            }
            let num: BigInt = num.parse().map_err(|_| malformed())?;
            let den: BigInt = den.parse().map_err(|_| malformed())?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator(text.to_string()));
            }
            Some(BigRational::new(num * sign, den))
        } else if all_digits(body) {
            let num: BigInt = body.parse().map_err(|_| malformed())?;
            Some(BigRational::from_integer(num * sign))
        } else {
            None
        };

        match (rational, spec.0) {
            (Some(q), _) => Scalar::from_rational(spec, &q).map_err(|e| match e {
                Error::ZeroDenominator(_) => Error::ZeroDenominator(text.to_string()),
                other => other,
            }),
            (None, kind) => {
                if !is_decimal_syntax(body) {
                    return Err(malformed());
                }
                match kind {
                    FieldKind::ApproxReals { .. } => {
                        let v: f64 = t.parse().map_err(|_| malformed())?;
                        Scalar::real(spec, v).map_err(|_| malformed())
                    }
                    _ => Err(Error::DecimalInExactField(text.to_string())),
                }
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(r) => *r == 0,
            Repr::Real(v) => v.abs() <= self.spec.tolerance().unwrap_or(0.0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.spec)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match &self.repr {
            Repr::Real(v) => Some(*v),
            _ => None,
        }
    }

    /// Nearest float: the rational value, the residue `0..p`, or the real itself.
    pub fn to_f64(&self) -> f64 {
        match &self.repr {
            Repr::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            Repr::Residue(r) => *r as f64,
            Repr::Real(v) => *v,
        }
    }

    /// Absolute value as a float. Prime-field elements have magnitude 0 or 1.
    pub fn magnitude(&self) -> f64 {
        match &self.repr {
            Repr::Rational(q) => q.abs().to_f64().unwrap_or(f64::INFINITY),
            Repr::Residue(r) => (*r != 0) as u8 as f64,
            Repr::Real(v) => v.abs(),
        }
    }

    fn same_spec(&self, other: &Scalar) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::MixedFieldSpecs)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_spec(other)?;
        let spec = self.spec;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar {
                spec,
                repr: Repr::Rational(a + b),
            },
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = spec.modulus().expect("prime spec");
                Scalar::residue(spec, ((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Repr::Real(a), Repr::Real(b)) => Scalar::real(spec, a + b)?,
            _ => return Err(Error::MixedFieldSpecs),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_spec(other)?;
        let spec = self.spec;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar {
                spec,
                repr: Repr::Rational(a * b),
            },
            (Repr::Residue(a), Repr::Residue(b)) => Scalar::residue(
                spec,
                prime::mul_mod(*a, *b, spec.modulus().expect("prime spec")),
            ),
            (Repr::Real(a), Repr::Real(b)) => Scalar::real(spec, a * b)?,
            _ => return Err(Error::MixedFieldSpecs),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.checked_neg())
    }

    pub fn checked_neg(&self) -> Scalar {
        let spec = self.spec;
        match &self.repr {
            Repr::Rational(a) => Scalar {
                spec,
                repr: Repr::Rational(-a),
            },
            Repr::Residue(a) => {
                let p = spec.modulus().expect("prime spec");
                Scalar::residue(spec, if *a == 0 { 0 } else { p - a })
            }
            Repr::Real(a) => Scalar {
                spec,
                repr: Repr::Real(if *a == 0.0 { 0.0 } else { -a }),
            },
        }
    }

    /// Multiplicative inverse. Zero (within tolerance over the reals) has none.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::InversionOfZero);
        }
        let spec = self.spec;
        match &self.repr {
            Repr::Rational(a) => Ok(Scalar {
                spec,
                repr: Repr::Rational(a.recip()),
            }),
            Repr::Residue(a) => {
                let p = spec.modulus().expect("prime spec");
                Ok(Scalar::residue(spec, prime::inv_mod(*a, p)))
            }
            Repr::Real(a) => Scalar::real(spec, 1.0 / a),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_spec(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        (0..exp).fold(Scalar::one(self.spec), |acc, _| &acc * self)
    }

    /// Total order used for canonical output: numeric order for Q and R,
    /// residue order for `F_p`.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue(a), Repr::Residue(b)) => a.cmp(b),
            (Repr::Real(a), Repr::Real(b)) => {
                if self == other {
                    Ordering::Equal
                } else {
                    a.total_cmp(b)
                }
            }
            (a, b) => discriminant_rank(a).cmp(&discriminant_rank(b)),
        }
    }
}

fn discriminant_rank(r: &Repr) -> u8 {
    match r {
        Repr::Rational(_) => 0,
        Repr::Residue(_) => 1,
        Repr::Real(_) => 2,
    }
}

fn is_decimal_syntax(body: &str) -> bool {
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let mantissa_ok = {
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        digits(int) && digits(frac) && !(int.is_empty() && frac.is_empty())
    };
    let exponent_ok = match exponent {
        None => true,
        Some(e) => {
            let e = e.strip_prefix(['+', '-']).unwrap_or(e);
            !e.is_empty() && e.bytes().all(|b| b.is_ascii_digit())
        }
    };
    mantissa_ok && exponent_ok
}

impl PartialEq for Scalar {
    /// Exact equality over Q and `F_p`; `|a - b| <= tol` over the reals.
    fn eq(&self, other: &Scalar) -> bool {
        if self.spec != other.spec {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (Repr::Residue(a), Repr::Residue(b)) => a == b,
            (Repr::Real(a), Repr::Real(b)) => (a - b).abs() <= self.spec.tolerance().unwrap_or(0.0),
            _ => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Residue(r) => write!(f, "{r}"),
            Repr::Real(v) => write!(f, "{v:e}"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.checked_neg()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.checked_neg()
    }
}

/// Parses a comma-separated list of scalars, e.g. `"1, -1/2, 0"`.
pub fn parse_vector(text: &str, spec: FieldSpec) -> Result<Vec<Scalar>> {
    text.split(',').map(|s| Scalar::parse(s, spec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn parse_reduces_fractions() {
        let x = Scalar::parse("-2/4", q()).unwrap();
        assert_eq!(x.to_string(), "-1/2");
        assert_eq!(Scalar::parse("7", f(5)).unwrap().as_residue(), Some(2));
        assert_eq!(Scalar::parse("-1", f(5)).unwrap().as_residue(), Some(4));
        assert_eq!(Scalar::parse("1/2", f(5)).unwrap().as_residue(), Some(3));
        assert_eq!(Scalar::parse("+3/1", q()).unwrap().to_string(), "3");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Scalar::parse("1/0", q()),
            Err(Error::ZeroDenominator(_))
        ));
        assert!(matches!(
            Scalar::parse("1/5", f(5)),
            Err(Error::ZeroDenominator(_))
        ));
        assert!(matches!(
            Scalar::parse("1.5", q()),
            Err(Error::DecimalInExactField(_))
        ));
        assert!(matches!(
            Scalar::parse("1e3", f(7)),
            Err(Error::DecimalInExactField(_))
        ));
        for bad in [
            "", "-", "abc", "1/", "/2", "1/-2", "1..2", "nan", "inf", "1e",
        ] {
            assert!(
                matches!(Scalar::parse(bad, q()), Err(Error::MalformedScalar(_))),
                "{bad:?}"
            );
            assert!(
                Scalar::parse(bad, FieldSpec::reals(1e-9).unwrap()).is_err(),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn parse_reals() {
        let r = FieldSpec::reals(1e-9).unwrap();
        assert_eq!(Scalar::parse("1.5", r).unwrap().as_f64(), Some(1.5));
        assert_eq!(Scalar::parse("-2.5e-1", r).unwrap().as_f64(), Some(-0.25));
        assert_eq!(Scalar::parse("1/4", r).unwrap().as_f64(), Some(0.25));
        assert_eq!(Scalar::parse(".5", r).unwrap().as_f64(), Some(0.5));
        assert!(Scalar::parse("1e400", r).is_err());
    }

    #[test]
    fn spec_validation() {
        assert_eq!(FieldSpec::prime(4), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(1_000_000_007).is_ok());
        assert!(FieldSpec::reals(0.0).is_err());
        assert!(FieldSpec::reals(f64::NAN).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let two = Scalar::from_i64(f(5), 2);
        assert_eq!(two.inv().unwrap().as_residue(), Some(3));
        let half = Scalar::parse("1/2", q()).unwrap();
        let third = Scalar::parse("1/3", q()).unwrap();
        assert_eq!((&half + &third).to_string(), "5/6");
        assert_eq!(Scalar::zero(q()).inv(), Err(Error::InversionOfZero));
        assert_eq!(half.checked_add(&two), Err(Error::MixedFieldSpecs));
        let r = FieldSpec::reals(1e-9).unwrap();
        assert_eq!(
            Scalar::from_f64(r, 1e-12).unwrap().inv(),
            Err(Error::InversionOfZero)
        );
    }

    #[test]
    fn real_overflow_is_reported() {
        let r = FieldSpec::reals(1e-9).unwrap();
        let big = Scalar::from_f64(r, 1e300).unwrap();
        assert_eq!(big.checked_mul(&big), Err(Error::NonFinite));
    }

    #[test]
    fn real_rendering_roundtrips() {
        let r = FieldSpec::reals(1e-9).unwrap();
        let x = Scalar::from_f64(r, 1.0 / 3.0).unwrap();
        assert_eq!(x.to_string(), "3.333333333333333e-1");
        assert_eq!(
            Scalar::parse(&x.to_string(), r).unwrap().as_f64(),
            Some(1.0 / 3.0)
        );
        assert_eq!(Scalar::from_f64(r, -0.0).unwrap().to_string(), "0e0");
        assert_eq!(Scalar::from_f64(r, 2.0).unwrap().to_string(), "2e0");
    }

    proptest! {
        #[test]
        fn rational_inverse_is_exact(n in -1000i64..1000, d in 1i64..1000) {
            prop_assume!(n != 0);
            let x = Scalar::from_rational(q(), &BigRational::new(n.into(), d.into())).unwrap();
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn prime_inverse_is_exact(a in 1u64..10_000, pi in 0usize..5) {
            let p = [2u64, 3, 5, 7919, 1_000_000_007][pi];
            prop_assume!(a % p != 0);
            let x = Scalar::from_i64(f(p), a as i64);
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn rational_render_roundtrips(n in any::<i64>(), d in 1i64..i64::MAX) {
            let x = Scalar::from_rational(q(), &BigRational::new(n.into(), d.into())).unwrap();
            prop_assert_eq!(Scalar::parse(&x.to_string(), q()).unwrap(), x);
        }

        #[test]
        fn real_render_roundtrips(v in -1e12f64..1e12) {
            let r = FieldSpec::reals(1e-300).unwrap();
            let x = Scalar::from_f64(r, v).unwrap();
            let back = Scalar::parse(&x.to_string(), r).unwrap();
            prop_assert_eq!(back.as_f64(), x.as_f64());
        }
    }
}
