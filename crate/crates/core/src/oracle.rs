//! Extended-precision reference arithmetic.
//!
//! Values are binary floating-point numbers with a configurable significand
//! width (or unlimited width for exact sums and products of doubles). Every
//! binary64 value converts exactly, so errors of working-precision results
//! can be measured against these references directly.

use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::ops::Abs;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex64;

use crate::solver::{Kind, Quadratic};
use crate::{Error, Result};

type Big = FBig<HalfEven, 2>;

pub const DEFAULT_PRECISION_BITS: usize = 128;
pub const MIN_PRECISION_BITS: usize = 106;

// Extra bits carried through intermediate steps of the root formula.
const GUARD_BITS: usize = 64;
// Precision of error ratios. Far below anything measurable at binary64.
const MEASURE_BITS: usize = 192;

/// Real number at extended precision. A precision of zero means the value
/// is held exactly; such values support `+`, `-`, `*` but not `/` or `sqrt`.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct ExtendedScalar(Big);

impl ExtendedScalar {
    /// Exact copy of `x` carrying `bits` of precision for later operations.
    pub fn from_f64(x: f64, bits: usize) -> Self {
        Self::exact(x).with_precision(bits)
    }

    /// Exact copy of `x` with unlimited precision.
    pub fn exact(x: f64) -> Self {
        assert!(x.is_finite(), "extended values are finite");
        let v = Big::try_from(x).expect("finite doubles convert exactly");
        Self(v.with_precision(0).value())
    }

    pub fn zero() -> Self {
        Self(Big::ZERO)
    }

    pub fn precision_bits(&self) -> usize {
        self.0.precision()
    }

    /// Rounds (to nearest even) to `bits` of significand. `0` means unlimited.
    pub fn with_precision(self, bits: usize) -> Self {
        Self(self.0.with_precision(bits).value())
    }

    /// Nearest binary64 value.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Big::ZERO
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Big::ZERO
    }

    pub fn abs(&self) -> Self {
        Self(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        Self(self.0.sqrt())
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&ExtendedScalar> for &ExtendedScalar {
            type Output = ExtendedScalar;
            fn $method(self, rhs: &ExtendedScalar) -> ExtendedScalar {
                ExtendedScalar(&self.0 $op &rhs.0)
            }
        }
        impl $trait for ExtendedScalar {
            type Output = ExtendedScalar;
            fn $method(self, rhs: ExtendedScalar) -> ExtendedScalar {
                ExtendedScalar(self.0 $op rhs.0)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for ExtendedScalar {
    type Output = ExtendedScalar;
    fn neg(self) -> ExtendedScalar {
        ExtendedScalar(-self.0)
    }
}

impl Neg for &ExtendedScalar {
    type Output = ExtendedScalar;
    fn neg(self) -> ExtendedScalar {
        -self.clone()
    }
}

/// Complex number with [`ExtendedScalar`] parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedComplex {
    pub re: ExtendedScalar,
    pub im: ExtendedScalar,
}

impl ExtendedComplex {
    pub fn new(re: ExtendedScalar, im: ExtendedScalar) -> Self {
        Self { re, im }
    }

    pub fn from_complex(z: Complex64, bits: usize) -> Self {
        Self::new(
            ExtendedScalar::from_f64(z.re, bits),
            ExtendedScalar::from_f64(z.im, bits),
        )
    }

    pub fn exact(z: Complex64) -> Self {
        Self::new(ExtendedScalar::exact(z.re), ExtendedScalar::exact(z.im))
    }

    pub fn zero() -> Self {
        Self::new(ExtendedScalar::zero(), ExtendedScalar::zero())
    }

    pub fn with_precision(self, bits: usize) -> Self {
        Self::new(self.re.with_precision(bits), self.im.with_precision(bits))
    }

    /// Precision of the wider part (`0` if either is exact).
    pub fn precision_bits(&self) -> usize {
        let (p, q) = (self.re.precision_bits(), self.im.precision_bits());
        if p == 0 || q == 0 {
            0
        } else {
            p.max(q)
        }
    }

    /// Nearest binary64 value, componentwise.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> ExtendedScalar {
        &self.re.square() + &self.im.square()
    }

    pub fn norm(&self) -> ExtendedScalar {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &ExtendedScalar) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    /// Principal square root (non-negative real part).
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let two = ExtendedScalar::exact(2.0);
        let t = ((&self.re.abs() + &self.norm()) / two.clone()).sqrt();
        let half_im = &self.im / &(&two * &t);
        if self.re.is_negative() {
            let im = if self.im.is_negative() { -t } else { t };
            Self::new(half_im.abs(), im)
        } else {
            Self::new(t, half_im)
        }
    }
}

impl Add for &ExtendedComplex {
    type Output = ExtendedComplex;
    fn add(self, rhs: &ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ExtendedComplex {
    type Output = ExtendedComplex;
    fn sub(self, rhs: &ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ExtendedComplex {
    type Output = ExtendedComplex;
    fn mul(self, rhs: &ExtendedComplex) -> ExtendedComplex {
        ExtendedComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Div for &ExtendedComplex {
    type Output = ExtendedComplex;
    fn div(self, rhs: &ExtendedComplex) -> ExtendedComplex {
        if rhs.is_real() {
            return ExtendedComplex::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        ExtendedComplex::new(&num.re / &den, &num.im / &den)
    }
}

impl Neg for &ExtendedComplex {
    type Output = ExtendedComplex;
    fn neg(self) -> ExtendedComplex {
        ExtendedComplex::new(-&self.re, -&self.im)
    }
}

/// Both roots of `q`, each within `2^(4 - bits)` relative of the exact
/// root, ordered by decreasing modulus.
pub fn oracle_roots(q: &Quadratic, bits: usize) -> Result<(ExtendedComplex, ExtendedComplex)> {
    if bits < MIN_PRECISION_BITS {
        return Err(Error::InsufficientPrecision {
            got: bits,
            min: MIN_PRECISION_BITS,
        });
    }
    if q.a == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let real = q.kind() == Kind::Real;
    Ok(oracle_roots_extended(
        &ExtendedComplex::exact(q.a),
        &ExtendedComplex::exact(q.b),
        &ExtendedComplex::exact(q.c),
        real,
        bits,
    ))
}

/// [`oracle_roots`] for coefficients that are already extended values,
/// e.g. a polynomial recomposed from computed roots. With `real` set and a
/// negative discriminant the pair is returned exactly conjugate.
pub fn oracle_roots_extended(
    a: &ExtendedComplex,
    b: &ExtendedComplex,
    c: &ExtendedComplex,
    real: bool,
    bits: usize,
) -> (ExtendedComplex, ExtendedComplex) {
    let work = bits + GUARD_BITS;
    let a = a.clone().with_precision(work);
    let b = b.clone().with_precision(work);
    let c = c.clone().with_precision(work);
    let two = ExtendedScalar::exact(2.0);
    let four = ExtendedScalar::exact(4.0);

    let disc = &(&b * &b) - &(&a * &c).scale(&four);

    if real && a.is_real() && b.is_real() && c.is_real() && disc.re.is_negative() {
        let s = (-&disc.re).sqrt();
        let den = &two * &a.re;
        let x1 = ExtendedComplex::new(-&(&b.re / &den), &s / &den);
        let x1 = x1.with_precision(bits);
        let x2 = x1.conj();
        return (x1, x2);
    }

    // Pick the square root that adds to b without cancellation.
    let mut d = disc.sqrt();
    let alignment = &(&b.re * &d.re) + &(&b.im * &d.im);
    if alignment.is_negative() {
        d = -&d;
    }
    let half = ExtendedScalar::exact(0.5);
    let big = (-&(&b + &d)).scale(&half);
    if big.is_zero() {
        return (ExtendedComplex::zero(), ExtendedComplex::zero());
    }
    let mut x1 = &big / &a;
    let mut x2 = &c / &big;
    if x2.norm_sqr() > x1.norm_sqr() {
        std::mem::swap(&mut x1, &mut x2);
    }
    (x1.with_precision(bits), x2.with_precision(bits))
}

/// `(b_hat, c_hat) = (-a (x1 + x2), a x1 x2)`, evaluated exactly.
pub fn recompose(x1: Complex64, x2: Complex64, a: Complex64) -> (ExtendedComplex, ExtendedComplex) {
    let a = ExtendedComplex::exact(a);
    let x1 = ExtendedComplex::exact(x1);
    let x2 = ExtendedComplex::exact(x2);
    let b_hat = -&(&a * &(&x1 + &x2));
    let c_hat = &(&a * &x1) * &x2;
    (b_hat, c_hat)
}

/// `|approx - exact| / |exact|`, rounded to binary64; zero when both are zero.
pub fn rel_error(approx: Complex64, exact: &ExtendedComplex) -> Result<f64> {
    relative_gap(&ExtendedComplex::exact(approx), exact)
}

/// `|value - reference| / |reference|` for two extended values.
pub fn relative_gap(value: &ExtendedComplex, reference: &ExtendedComplex) -> Result<f64> {
    let value = value.clone().with_precision(MEASURE_BITS);
    let reference = reference.clone().with_precision(MEASURE_BITS);
    let diff = (&value - &reference).norm();
    if reference.is_zero() {
        return if diff.is_zero() {
            Ok(0.0)
        } else {
            Err(Error::InfiniteRelativeError)
        };
    }
    Ok((diff / reference.norm()).to_f64())
}

/// Euclidean norm of a vector of extended complex values.
pub fn vector_norm(parts: &[&ExtendedComplex]) -> ExtendedScalar {
    parts
        .iter()
        .map(|z| (*z).clone().with_precision(MEASURE_BITS).norm_sqr())
        .fold(ExtendedScalar::zero(), |acc, s| acc + s)
        .sqrt()
}
