use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Unit roundoff of `f64`.
pub const ULP: f64 = f64::EPSILON;

/// A real number known as `value ± error`.
///
/// Every arithmetic operation widens the error by the rounding of the result, so a
/// chain of operations keeps an enclosure of the exact value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealApprox {
    pub value: f64,
    pub error: f64,
}

impl RealApprox {
    pub const ZERO: RealApprox = RealApprox { value: 0.0, error: 0.0 };

    pub fn new(value: f64, error: f64) -> Self {
        debug_assert!(error >= 0.0 && error.is_finite(), "bad error bound {error}");
        RealApprox { value, error }
    }

    /// A value that is exactly representable.
    pub fn exact(value: f64) -> Self {
        RealApprox { value, error: 0.0 }
    }

    /// A value produced by a single correctly rounded operation.
    pub fn rounded(value: f64) -> Self {
        RealApprox { value, error: ULP * value.abs() }
    }

    pub fn from_int(n: i64) -> Self {
        let v = n as f64;
        if (v as i64) == n && v.abs() < 9.0e15 {
            Self::exact(v)
        } else {
            Self::rounded(v)
        }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }

    /// Certified strict positivity.
    pub fn is_positive(&self) -> bool {
        self.lower() > 0.0
    }

    pub fn with_extra_error(self, extra: f64) -> Self {
        RealApprox::new(self.value, self.error + extra.abs())
    }

    fn widen(value: f64, error: f64) -> Self {
        RealApprox::new(value, error + ULP * value.abs())
    }

    pub fn ln(self) -> Self {
        assert!(self.lower() > 0.0, "logarithm of a non-positive interval {self}");
        let v = self.value.ln();
        // |d ln| <= err / lower
        Self::widen(v, self.error / self.lower() + 2.0 * ULP * v.abs().max(1.0))
    }

    pub fn exp(self) -> Self {
        let v = self.value.exp();
        Self::widen(v, v * (self.error.exp_m1()) + 2.0 * ULP * v)
    }

    pub fn powi(self, n: i32) -> Self {
        let mut acc = RealApprox::exact(1.0);
        for _ in 0..n.unsigned_abs() {
            acc = acc * self;
        }
        if n < 0 {
            RealApprox::exact(1.0) / acc
        } else {
            acc
        }
    }

    pub fn abs(self) -> Self {
        RealApprox::new(self.value.abs(), self.error)
    }

    /// Ceiling, provided the enclosure does not straddle an integer.
    pub fn certified_ceil(&self) -> Option<i64> {
        let lo = self.lower().ceil();
        let hi = self.upper().ceil();
        if lo == hi && (self.lower() != lo || self.error == 0.0) {
            Some(lo as i64)
        } else {
            None
        }
    }

    /// `self >= other` up to the combined tolerance `max(floor, 3 * (errors))`.
    pub fn ge_within(&self, other: &RealApprox, floor: f64) -> bool {
        self.value - other.value >= -tolerance(&[*self, *other], floor)
    }

    /// `|self - other|` is below `tol` once enclosure errors are accounted for.
    pub fn close_to(&self, other: &RealApprox, tol: f64) -> bool {
        (self.value - other.value).abs() <= tol + self.error + other.error
    }
}

/// Comparison tolerance: the larger of `floor` and three times the summed error bounds.
pub fn tolerance(operands: &[RealApprox], floor: f64) -> f64 {
    let s: f64 = operands.iter().map(|r| r.error).sum();
    floor.max(3.0 * s)
}

impl fmt::Display for RealApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12} ± {:.1e}", self.value, self.error)
    }
}

impl From<f64> for RealApprox {
    fn from(v: f64) -> Self {
        RealApprox::exact(v)
    }
}

impl Add for RealApprox {
    type Output = RealApprox;
    fn add(self, rhs: RealApprox) -> RealApprox {
        RealApprox::widen(self.value + rhs.value, self.error + rhs.error)
    }
}

impl Sub for RealApprox {
    type Output = RealApprox;
    fn sub(self, rhs: RealApprox) -> RealApprox {
        RealApprox::widen(self.value - rhs.value, self.error + rhs.error)
    }
}

impl Neg for RealApprox {
    type Output = RealApprox;
    fn neg(self) -> RealApprox {
        RealApprox::new(-self.value, self.error)
    }
}

impl Mul for RealApprox {
    type Output = RealApprox;
    fn mul(self, rhs: RealApprox) -> RealApprox {
        let v = self.value * rhs.value;
        let e = self.value.abs() * rhs.error + rhs.value.abs() * self.error + self.error * rhs.error;
        RealApprox::widen(v, e)
    }
}

impl Div for RealApprox {
    type Output = RealApprox;
    fn div(self, rhs: RealApprox) -> RealApprox {
        let lo = rhs.value.abs() - rhs.error;
        assert!(lo > 0.0, "division by an interval containing zero: {rhs}");
        let v = self.value / rhs.value;
        let e = (self.error + v.abs() * rhs.error) / lo;
        RealApprox::widen(v, e)
    }
}

impl Mul<f64> for RealApprox {
    type Output = RealApprox;
    fn mul(self, rhs: f64) -> RealApprox {
        self * RealApprox::exact(rhs)
    }
}

impl Add<f64> for RealApprox {
    type Output = RealApprox;
    fn add(self, rhs: f64) -> RealApprox {
        self + RealApprox::exact(rhs)
    }
}

impl std::iter::Sum for RealApprox {
    fn sum<I: Iterator<Item = RealApprox>>(iter: I) -> RealApprox {
        iter.fold(RealApprox::ZERO, |a, b| a + b)
    }
}
