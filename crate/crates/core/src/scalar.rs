//! Coefficient arithmetic shared by every form in the crate.
//!
//! Forms are generic over [`Scalar`]. Exact work uses GMP integers and
//! rationals (plus [`GaussRational`] when an imaginary part is needed);
//! floating work uses [`BigComplex`], a pair of MPFR floats whose precision is
//! fixed by a [`PrecisionContext`]. Plain `Complex64` is kept for pixel work.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Extra bits carried beyond the requested decimal digits.
pub const GUARD_BITS: u32 = 32;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision expressed in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_DIGITS: u32 = 60;
    pub const RENDER_DIGITS: u32 = 16;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < 16 {
            return Err(Error::InvalidArgument(format!(
                "precision must be at least 16 digits, got {digits}"
            )));
        }
        Ok(PrecisionContext { digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Binary precision handed to MPFR, including guard bits.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// Unit-roundoff scale used by tolerance checks: `10^(2 - digits)`.
    pub fn eps(&self) -> f64 {
        10f64.powi(2 - self.digits as i32)
    }

    /// `10^(offset - digits)`, the form most tolerances in the crate take.
    pub fn tol(&self, offset: i32) -> f64 {
        10f64.powi(offset - self.digits as i32)
    }

    pub fn with_extra_digits(&self, extra: u32) -> Self {
        PrecisionContext {
            digits: self.digits + extra,
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            digits: Self::DEFAULT_DIGITS,
        }
    }
}

/// Ring operations needed by binary-form algebra.
///
/// Values carry whatever context they need (MPFR precision), so new
/// constants are always produced "like" an existing value.
pub trait Scalar: Clone + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn from_i64_like(&self, v: i64) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_exact_zero(&self) -> bool;

    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }

    fn mul_i64(&self, k: i64) -> Self {
        self.mul_ref(&self.from_i64_like(k))
    }
}

/// Scalars that also divide.
pub trait FieldScalar: Scalar {
    fn div_ref(&self, rhs: &Self) -> Self;
}

/// Conversion into the arbitrary-precision floating kind.
pub trait ToBig {
    fn to_big(&self, prec: u32) -> BigComplex;
}

impl Scalar for Integer {
    fn zero_like(&self) -> Self {
        Integer::new()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Integer::from(v)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Integer::from(self + rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Integer::from(self - rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Integer::from(self * rhs)
    }
    fn neg_ref(&self) -> Self {
        Integer::from(-self)
    }
    fn is_exact_zero(&self) -> bool {
        self.cmp0() == Ordering::Equal
    }
    fn mul_i64(&self, k: i64) -> Self {
        Integer::from(self * k)
    }
}

impl ToBig for Integer {
    fn to_big(&self, prec: u32) -> BigComplex {
        BigComplex::new(Float::with_val(prec, self), Float::new(prec))
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Rational::from(v)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn neg_ref(&self) -> Self {
        Rational::from(-self)
    }
    fn is_exact_zero(&self) -> bool {
        self.cmp0() == Ordering::Equal
    }
}

impl FieldScalar for Rational {
    fn div_ref(&self, rhs: &Self) -> Self {
        Rational::from(self / rhs)
    }
}

impl ToBig for Rational {
    fn to_big(&self, prec: u32) -> BigComplex {
        BigComplex::new(Float::with_val(prec, self), Float::new(prec))
    }
}

/// An exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        GaussRational {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        GaussRational {
            re: re.into(),
            im: Rational::new(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: Rational::from(-&self.im),
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }
}

impl Scalar for GaussRational {
    fn zero_like(&self) -> Self {
        GaussRational::default()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        GaussRational::real(v)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        GaussRational {
            re: Rational::from(&self.re + &rhs.re),
            im: Rational::from(&self.im + &rhs.im),
        }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussRational {
            re: Rational::from(&self.re - &rhs.re),
            im: Rational::from(&self.im - &rhs.im),
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussRational { re, im }
    }
    fn neg_ref(&self) -> Self {
        GaussRational {
            re: Rational::from(-&self.re),
            im: Rational::from(-&self.im),
        }
    }
    fn is_exact_zero(&self) -> bool {
        self.re.cmp0() == Ordering::Equal && self.im.cmp0() == Ordering::Equal
    }
}

impl FieldScalar for GaussRational {
    fn div_ref(&self, rhs: &Self) -> Self {
        let n = rhs.norm_sqr();
        let num = self.mul_ref(&rhs.conj());
        GaussRational {
            re: num.re / &n,
            im: num.im / &n,
        }
    }
}

impl ToBig for GaussRational {
    fn to_big(&self, prec: u32) -> BigComplex {
        BigComplex::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }
}

/// Arbitrary-precision complex number; each part is an MPFR float.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.20e}, {:.20e})", self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let im = self.im.to_string_radix(10, Some(digits));
        let sign = if im.starts_with('-') { "" } else { "+" };
        write!(f, "{}{}{}i", self.re.to_string_radix(10, Some(digits)), sign, im)
    }
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        BigComplex::from_i64(1, prec)
    }

    pub fn i(prec: u32) -> Self {
        BigComplex::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        BigComplex::new(Float::with_val(prec, v), Float::new(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        BigComplex::from_f64(z.re, z.im, prec)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Re-rounds both parts to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    /// `e^{2πik/n}`.
    pub fn root_of_unity(n: u32, k: i64, prec: u32) -> Self {
        let m = k.rem_euclid(n as i64);
        let mut theta = Float::with_val(prec + 16, Constant::Pi) * 2u32;
        theta *= m;
        theta /= n;
        let (s, c) = theta.sin_cos(Float::new(prec + 16));
        BigComplex::new(Float::with_val(prec, c), Float::with_val(prec, s))
    }

    pub fn polar(r: &Float, theta: &Float) -> Self {
        let prec = r.prec().max(theta.prec());
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        BigComplex::new(Float::with_val(prec, r * &c), Float::with_val(prec, r * &s))
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), &self.re * &self.re + &self.im * &self.im)
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex::new(
            Float::with_val(self.prec(), &self.re / &n),
            Float::with_val(self.prec(), -Float::with_val(self.prec(), &self.im / &n)),
        )
    }

    pub fn mul_real(&self, r: &Float) -> Self {
        BigComplex::new(
            Float::with_val(self.prec(), &self.re * r),
            Float::with_val(self.prec(), &self.im * r),
        )
    }

    pub fn div_real(&self, r: &Float) -> Self {
        BigComplex::new(
            Float::with_val(self.prec(), &self.re / r),
            Float::with_val(self.prec(), &self.im / r),
        )
    }

    pub fn pow_u32(&self, n: u32) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    pub fn pow_i32(&self, n: i32) -> Self {
        if n >= 0 {
            self.pow_u32(n as u32)
        } else {
            self.pow_u32(n.unsigned_abs()).inv()
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        let r = self.abs();
        if r.is_zero() {
            return self.zero_like();
        }
        // sqrt((r + re)/2) + i sign(im) sqrt((r - re)/2)
        let a = Float::with_val(prec, Float::with_val(prec, &r + &self.re) / 2u32).sqrt();
        let b = Float::with_val(prec, Float::with_val(prec, &r - &self.re) / 2u32).sqrt();
        if self.im.is_sign_negative() {
            BigComplex::new(a, -b)
        } else {
            BigComplex::new(a, b)
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// `|self - other|` as an `f64`.
    pub fn dist_f64(&self, other: &BigComplex) -> f64 {
        self.sub_ref(other).abs_f64()
    }
}

impl Scalar for BigComplex {
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.prec())
    }
    fn from_i64_like(&self, v: i64) -> Self {
        BigComplex::from_i64(v, self.prec())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        BigComplex::new(
            Float::with_val(p, &self.re + &rhs.re),
            Float::with_val(p, &self.im + &rhs.im),
        )
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        BigComplex::new(
            Float::with_val(p, &self.re - &rhs.re),
            Float::with_val(p, &self.im - &rhs.im),
        )
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        BigComplex::new(
            Float::with_val(p, &self.re * &rhs.re - &self.im * &rhs.im),
            Float::with_val(p, &self.re * &rhs.im + &self.im * &rhs.re),
        )
    }
    fn neg_ref(&self) -> Self {
        BigComplex::new(
            Float::with_val(self.re.prec(), -&self.re),
            Float::with_val(self.im.prec(), -&self.im),
        )
    }
    fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn mul_i64(&self, k: i64) -> Self {
        BigComplex::new(
            Float::with_val(self.re.prec(), &self.re * k),
            Float::with_val(self.im.prec(), &self.im * k),
        )
    }
}

impl FieldScalar for BigComplex {
    fn div_ref(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let n = rhs.norm_sqr();
        let re = Float::with_val(p, &self.re * &rhs.re + &self.im * &rhs.im);
        let im = Float::with_val(p, &self.im * &rhs.re - &self.re * &rhs.im);
        BigComplex::new(Float::with_val(p, re / &n), Float::with_val(p, im / &n))
    }
}

impl ToBig for BigComplex {
    fn to_big(&self, prec: u32) -> BigComplex {
        self.with_prec(prec)
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl FieldScalar for Complex64 {
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl ToBig for Complex64 {
    fn to_big(&self, prec: u32) -> BigComplex {
        BigComplex::from_c64(*self, prec)
    }
}

/// `√n` as a float.
pub fn sqrt_u32(n: u32, prec: u32) -> Float {
    Float::with_val(prec, n).sqrt()
}

/// `10^e` as a float, for tolerances below the `f64` range.
pub fn pow10(e: i32, prec: u32) -> Float {
    Float::with_val(prec, 10).pow(e)
}

/// Integer power of a rational.
pub fn rational_pow(base: &Rational, e: i32) -> Rational {
    if e >= 0 {
        Rational::from(base.pow(e as u32))
    } else {
        Rational::from(base.pow(e.unsigned_abs())).recip()
    }
}
