//! Scalar field abstraction.
//!
//! Every algebraic routine in the crate is written against [`Scalar`], so the
//! same code runs exactly over [`BigRational`] and approximately over `f64` /
//! `f32`. Decisions that must be exact (cone membership, certificates) are only
//! ever taken with an exact scalar; the float instantiations exist for search
//! and for quick exploratory evaluation.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// A real ordered field, exact or floating point.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `true` when arithmetic never rounds.
    const EXACT: bool;

    fn from_rational(r: &BigRational) -> Self;

    fn from_int(n: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero for exact scalars, below a fixed absolute tolerance for floats.
    fn is_negligible(&self) -> bool;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn is_nonnegative(&self) -> bool {
        !self.is_negative() || self.is_negligible()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-9
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn from_int(n: i64) -> Self {
        n as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-4
    }
}

/// `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as an exact rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest rational with denominator `den` (round half away from zero).
pub fn round_to_rational(x: f64, den: i64) -> BigRational {
    let scaled = (x * den as f64).round();
    let num = BigInt::from_f64(scaled).unwrap_or_default();
    BigRational::new(num, BigInt::from(den))
}

/// The imaginary unit in `Complex<T>`.
pub fn imag_unit<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// `i^k` for any integer `k`.
pub fn i_pow<T: Scalar>(k: i64) -> Complex<T> {
    match k.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

pub fn complex_is_negligible<T: Scalar>(z: &Complex<T>) -> bool {
    z.re.is_negligible() && z.im.is_negligible()
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parse `"<int>"` or `"<int>/<posint>"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim();
            if d.starts_with('-') || d.starts_with('+') {
                return None;
            }
            let d = d.parse::<BigInt>().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

/// Canonical string for an exact rational: `p` or `p/q` in lowest terms.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_format() {
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(10, 4)), "5/2");
        assert_eq!(format_rational(&int(-7)), "-7");
    }

    #[test]
    fn powers_of_i_cycle() {
        let i = imag_unit::<BigRational>();
        assert_eq!(i_pow::<BigRational>(1), i);
        assert_eq!(i_pow::<BigRational>(5), i);
        assert_eq!(i_pow::<BigRational>(-1), Complex::new(int(0), int(-1)));
        assert_eq!(i_pow::<BigRational>(2), Complex::new(int(-1), int(0)));
    }

    #[test]
    fn float_tolerance() {
        assert!(1e-12f64.is_negligible());
        assert!(!1e-3f64.is_negligible());
        assert!((-1e-12f64).is_nonnegative());
        assert!(!rat(-1, 1_000_000_000_000).is_nonnegative());
    }
}
