//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::Debug;

use num_rational::Rational64;
use num_traits::{Num, ToPrimitive};

/// Ordered field used for breakpoints and probability values.
///
/// Implemented for `f32`, `f64` and [`Rational64`]. All comparisons made by
/// the library are exact comparisons of stored values; the only places that
/// approximate are those that take an explicit tolerance.
pub trait Scalar: Num + PartialOrd + Copy + Debug + Send + Sync + 'static {
    /// Converts from `f64`. Exact for dyadic inputs where the type allows it.
    fn from_f64(v: f64) -> Self;

    fn to_f64(self) -> f64;

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half(self) -> Self {
        self / Self::two()
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn abs_diff(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            other - self
        }
    }

    /// False for NaN and infinities.
    fn is_finite_value(self) -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Rational64 {
    fn from_f64(v: f64) -> Self {
        exact_dyadic(v)
            .or_else(|| Rational64::approximate_float(v))
            .expect("value not representable as Rational64")
    }

    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

/// Exact conversion of a finite `f64` that is an integer multiple of `2^-30`
/// with a numerator that fits in 62 bits. Longer expansions are left to the
/// continued-fraction approximation, which keeps denominators small enough
/// for further arithmetic and maps decimal literals such as `0.1` to `1/10`.
fn exact_dyadic(v: f64) -> Option<Rational64> {
    if !v.is_finite() {
        return None;
    }
    if v == 0.0 {
        return Some(Rational64::from_integer(0));
    }
    let bits = v.to_bits();
    let negative = bits >> 63 == 1;
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mut mantissa, mut exp) = if exponent == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1u64 << 52), exponent - 1075)
    };
    let shift = mantissa.trailing_zeros() as i64;
    mantissa >>= shift;
    exp += shift;
    let mantissa = mantissa as i64;
    let signed = if negative { -mantissa } else { mantissa };
    if exp >= 0 {
        if exp > 62 || mantissa.leading_zeros() as i64 <= exp + 1 {
            return None;
        }
        Some(Rational64::from_integer(signed << exp))
    } else {
        if -exp > 30 {
            return None;
        }
        Some(Rational64::new(signed, 1i64 << -exp))
    }
}
