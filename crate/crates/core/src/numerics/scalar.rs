use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{CMatrix, Tolerances};

/// Exact Gaussian rational `p + q i` with arbitrary-precision `p`, `q`.
pub type Exact = Complex<BigRational>;

/// Double-precision complex number.
pub type Float = Complex64;

/// A complex field with one of two backends.
///
/// Every algorithm in the crate is generic over this trait. The exact backend
/// decides equality and rank exactly; the float backend compares with an
/// explicit tolerance and computes rank from singular values.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// Real rational `num / den`. Panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Conversion from a finite double. Exact for the exact backend: every
    /// finite `f64` is a dyadic rational.
    fn from_c64(z: Complex64) -> Self;

    fn to_c64(&self) -> Complex64;

    fn to_exact(&self) -> Exact;

    fn conj(&self) -> Self;

    /// `|z|^2` as a (real) scalar.
    fn abs_sq(&self) -> Self;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Backend equality: exact comparison, or `|a - b| <= tol` for floats.
    fn near(&self, other: &Self, tol: f64) -> bool;

    /// Zero test used by degree detection and pole checks.
    fn negligible(&self, tol: f64) -> bool {
        self.near(&Self::zero(), tol)
    }

    fn exp(&self) -> Option<Self>;

    fn ln(&self) -> Option<Self>;

    /// Rank of a square matrix in this backend.
    /// Rank with singular values below `tol.rank * max(sigma_max, floor)`
    /// treated as zero (float backend only).
    fn rank(m: &CMatrix<Self>, tol: &Tolerances, floor: f64) -> usize;
}

fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(|| panic!("non-finite value {x} has no exact form"))
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Complex::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    fn from_c64(z: Complex64) -> Self {
        Complex::new(rational_from_f64(z.re), rational_from_f64(z.im))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn to_exact(&self) -> Exact {
        self.clone()
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn abs_sq(&self) -> Self {
        Complex::new(self.norm_sqr(), BigRational::zero())
    }

    fn near(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn exp(&self) -> Option<Self> {
        None
    }

    fn ln(&self) -> Option<Self> {
        None
    }

    fn rank(m: &CMatrix<Self>, _tol: &Tolerances, _floor: f64) -> usize {
        m.elimination_rank()
    }
}

impl Scalar for Float {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_c64(z: Complex64) -> Self {
        z
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn to_exact(&self) -> Exact {
        Exact::from_c64(*self)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn abs_sq(&self) -> Self {
        Complex64::new(self.norm_sqr(), 0.0)
    }

    fn near(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }

    fn exp(&self) -> Option<Self> {
        Some(Complex::exp(*self))
    }

    fn ln(&self) -> Option<Self> {
        Some(Complex::ln(*self))
    }

    fn rank(m: &CMatrix<Self>, tol: &Tolerances, floor: f64) -> usize {
        let sv = m.singular_values();
        let max = sv.iter().cloned().fold(floor, f64::max);
        if max == 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > tol.rank * max).count()
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal (`"-0.125"`, `"3e-2"`)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -value } else { value })
}

/// `p/q` text for an exact rational (`"3"` when integral).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
