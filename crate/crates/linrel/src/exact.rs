//! Scalar arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Every scalar is stored exactly: real and imaginary parts are
//! arbitrary-precision rationals kept in canonical form (reduced, positive
//! denominator), so structural equality coincides with field equality.
//! Division by zero is reported through [`GaussianRational::checked_div`];
//! nothing in this module produces approximate values.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number; construction via `Rational::new` reduces the
/// fraction and keeps the denominator positive, which is the canonical form
/// relied on throughout the crate.
pub type Rational = num::BigRational;

/// Arithmetic error for the scalar field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
}

/// What went wrong while parsing a scalar literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarParseErrorKind {
    ExpectedDigit,
    ZeroDenominator,
    ExpectedSignOrEnd,
    ExpectedImaginaryUnit,
    UnexpectedTrailingInput,
}

impl fmt::Display for ScalarParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            ScalarParseErrorKind::ExpectedDigit => "expected a decimal digit",
            ScalarParseErrorKind::ZeroDenominator => "denominator is zero",
            ScalarParseErrorKind::ExpectedSignOrEnd => "expected '+', '-', or end of input",
            ScalarParseErrorKind::ExpectedImaginaryUnit => "expected 'i'",
            ScalarParseErrorKind::UnexpectedTrailingInput => "unexpected trailing input",
        };
        f.write_str(msg)
    }
}

/// Parse error carrying the byte offset of the offending position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {position}")]
pub struct ScalarParseError {
    pub kind: ScalarParseErrorKind,
    pub position: usize,
}

/// An element `re + im*i` of `Q(i)`.
///
/// Both components are canonical [`Rational`]s, so two values are equal as
/// field elements exactly when their stored representations are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `a/b + (c/d)i` from machine integers; panics if `b` or `d` is zero.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational {
            re: Rational::new(BigInt::from(a), BigInt::from(b)),
            im: Rational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2 = re^2 + im^2`, an exact nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; failing exactly on zero.
    pub fn inv(&self) -> Result<Self, ExactError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Exact division; `Err` on a zero divisor, never a panic.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact nonnegative integer power.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// A square root in `Q(i)` if one exists there.
    ///
    /// Every Gaussian rational has complex square roots; this returns one of
    /// them precisely when the roots again lie in `Q(i)`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            return if self.re.is_negative() {
                rational_sqrt(&-self.re.clone()).map(|v| GaussianRational::new(Rational::zero(), v))
            } else {
                rational_sqrt(&self.re).map(GaussianRational::from_rational)
            };
        }
        // u + vi with u^2 - v^2 = re and 2uv = im forces
        // u^2 = (re + |z|)/2, both square roots taken in Q.
        let t = rational_sqrt(&self.norm_sqr())?;
        let two = Rational::from_integer(BigInt::from(2));
        let u = rational_sqrt(&((&self.re + t) / &two))?;
        if u.is_zero() {
            return None;
        }
        let v = &self.im / (&two * &u);
        let root = GaussianRational::new(u, v);
        debug_assert_eq!(&root * &root, *self);
        Some(root)
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer();
    let den = q.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Convenience operator; panics on a zero divisor. The checked contract
/// surface is [`GaussianRational::checked_div`].
impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $f(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $f(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $f(self, rhs: GaussianRational) -> GaussianRational {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: Rational::one(), im: Rational::zero() }
    }
}

/// Structural ordering (real part, then imaginary part). `Q(i)` has no field
/// order; this exists solely to make reports and sorted sets deterministic.
impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `a[/b]` for real values, `a[/b]+c[/d]i` otherwise,
/// with the imaginary coefficient always written out (`0+1i`, not `i`).
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.re, f)?;
        if !self.im.is_zero() {
            if !self.im.is_negative() {
                write!(f, "+")?;
            } else {
                write!(f, "-")?;
            }
            fmt_rational(&self.im.abs(), f)?;
            write!(f, "i")?;
        }
        Ok(())
    }
}

fn parse_digits(bytes: &[u8], pos: usize) -> Result<(BigInt, usize), ScalarParseError> {
    let start = pos;
    let mut end = pos;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == start {
        return Err(ScalarParseError { kind: ScalarParseErrorKind::ExpectedDigit, position: start });
    }
    let text = std::str::from_utf8(&bytes[start..end]).expect("digits are ascii");
    Ok((text.parse::<BigInt>().expect("digit run parses"), end))
}

fn parse_unsigned_rational(bytes: &[u8], pos: usize) -> Result<(Rational, usize), ScalarParseError> {
    let (numer, mut pos) = parse_digits(bytes, pos)?;
    let mut denom = BigInt::one();
    if pos < bytes.len() && bytes[pos] == b'/' {
        let den_start = pos + 1;
        let (d, p) = parse_digits(bytes, den_start)?;
        if d.is_zero() {
            return Err(ScalarParseError {
                kind: ScalarParseErrorKind::ZeroDenominator,
                position: den_start,
            });
        }
        denom = d;
        pos = p;
    }
    Ok((Rational::new(numer, denom), pos))
}

/// Strict grammar `[+-]a[/b][[+-]c[/d]i]` with decimal integer components;
/// no whitespace, no bare `i`. Errors carry the byte offset.
impl FromStr for GaussianRational {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, ScalarParseError> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let re_negative = match bytes.first() {
            Some(b'+') => {
                pos += 1;
                false
            }
            Some(b'-') => {
                pos += 1;
                true
            }
            _ => false,
        };
        let (re_mag, next) = parse_unsigned_rational(bytes, pos)?;
        pos = next;
        let re = if re_negative { -re_mag } else { re_mag };
        if pos == bytes.len() {
            return Ok(GaussianRational::from_rational(re));
        }
        let im_negative = match bytes[pos] {
            b'+' => false,
            b'-' => true,
            _ => {
                return Err(ScalarParseError {
                    kind: ScalarParseErrorKind::ExpectedSignOrEnd,
                    position: pos,
                })
            }
        };
        pos += 1;
        let (im_mag, next) = parse_unsigned_rational(bytes, pos)?;
        pos = next;
        if pos >= bytes.len() || bytes[pos] != b'i' {
            return Err(ScalarParseError {
                kind: ScalarParseErrorKind::ExpectedImaginaryUnit,
                position: pos,
            });
        }
        pos += 1;
        if pos != bytes.len() {
            return Err(ScalarParseError {
                kind: ScalarParseErrorKind::UnexpectedTrailingInput,
                position: pos,
            });
        }
        let im = if im_negative { -im_mag } else { im_mag };
        Ok(GaussianRational::new(re, im))
    }
}
