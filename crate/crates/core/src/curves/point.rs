use std::fmt;

use num_traits::{One, Zero};

use super::quad::{join_fields, QuadElt};
use super::weierstrass::{Isomorphism, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::numeric::rational::{parse_rat, rational_sqrt, Int, Rat};

/// A point on a Weierstrass curve with coordinates in ℚ or one quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: QuadElt, y: QuadElt },
}

impl CurvePoint {
    pub fn rational(x: Rat, y: Rat) -> Self {
        CurvePoint::Affine { x: x.into(), y: y.into() }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Self::rational(Rat::from_integer(x.into()), Rat::from_integer(y.into()))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    /// Rational coordinates, if both are rational.
    pub fn as_rational(&self) -> Option<(Rat, Rat)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x.as_rational()?.clone(), y.as_rational()?.clone())),
        }
    }

    pub fn x(&self) -> Option<&QuadElt> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }

    /// The `D` of the coefficient field ℚ(√D), 1 for rational points.
    pub fn field(&self) -> Result<Int> {
        match self {
            CurvePoint::Infinity => Ok(Int::one()),
            CurvePoint::Affine { x, y } => x.common_field(y),
        }
    }

    /// Parse `"x,y"` with rational coordinates.
    pub fn parse(s: &str) -> Result<Self> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected \"x,y\", got {s:?}")))?;
        Ok(Self::rational(parse_rat(x)?, parse_rat(y)?))
    }

    /// Image under a change of coordinates.
    pub fn map(&self, iso: &Isomorphism) -> CurvePoint {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let (x, y) = iso.map_xy(x, y);
                CurvePoint::Affine { x, y }
            }
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

fn q(r: &Rat) -> QuadElt {
    QuadElt::rational(r.clone())
}

impl WeierstrassCurve {
    /// Whether `P` satisfies the equation exactly.
    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                if x.common_field(y).is_err() {
                    return false;
                }
                let lhs = &(y * y) + &(&(&q(&self.a1) * x) * y) + (&q(&self.a3) * y);
                let rhs = &(&(&(x * x) * x) + &(&q(&self.a2) * &(x * x))) + &(&(&q(&self.a4) * x) + &q(&self.a6));
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: &(&(-y) - &(&q(&self.a1) * x)) - &q(&self.a3),
            },
        }
    }

    /// Chord-tangent sum. Points over different quadratic fields are rejected.
    pub fn add(&self, p: &CurvePoint, r: &CurvePoint) -> Result<CurvePoint> {
        join_fields(&p.field()?, &r.field()?)?;
        let (x1, y1, x2, y2) = match (p, r) {
            (CurvePoint::Infinity, _) => return Ok(r.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (a1, a2, a3, a4, a6) = (q(&self.a1), q(&self.a2), q(&self.a3), q(&self.a4), q(&self.a6));
        let (lambda, nu) = if x1 != x2 {
            let dx = x2 - x1;
            let lambda = &(y2 - y1) / &dx;
            let nu = &(&(y1 * x2) - &(y2 * x1)) / &dx;
            (lambda, nu)
        } else {
            let sum = &(&(y1 + y2) + &(&a1 * x2)) + &a3;
            if sum.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            let three = q(&Rat::from_integer(3.into()));
            let two = q(&Rat::from_integer(2.into()));
            let den = &(&(&two * y1) + &(&a1 * x1)) + &a3;
            let x1sq = x1 * x1;
            let num_l = &(&(&(&three * &x1sq) + &(&(&two * &a2) * x1)) + &a4) - &(&a1 * y1);
            let num_n = &(&(&(-&(&x1sq * x1)) + &(&a4 * x1)) + &(&two * &a6)) - &(&a3 * y1);
            (&num_l / &den, &num_n / &den)
        };
        let x3 = &(&(&(&(&lambda * &lambda) + &(&a1 * &lambda)) - &a2) - x1) - x2;
        let y3 = &(&(-&(&(&lambda + &a1) * &x3)) - &nu) - &a3;
        Ok(CurvePoint::Affine { x: x3, y: y3 })
    }

    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p).expect("a point shares its own field")
    }

    /// `[m]P` by double-and-add; negative `m` multiplies `−P`.
    pub fn scalar_mul(&self, m: i64, p: &CurvePoint) -> CurvePoint {
        let mut base = if m < 0 { self.neg(p) } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base).expect("multiples share a field");
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Smallest `n ≤ bound` with `[n]P = O`.
    pub fn order_up_to(&self, p: &CurvePoint, bound: u32) -> Option<u32> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p).expect("multiples share a field");
        }
        None
    }

    /// Check a point and return it, or an input error.
    pub fn checked_point(&self, p: CurvePoint) -> Result<CurvePoint> {
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::input(format!("{p} is not on {self}")))
        }
    }

    /// A zero-checked `y` for rational `x` on a short model, if rational.
    pub fn rational_y_short(&self, x: &Rat) -> Option<Rat> {
        debug_assert!(self.is_short());
        let rhs = x * x * x + &self.a4 * x + &self.a6;
        if rhs.is_zero() {
            return Some(Rat::zero());
        }
        rational_sqrt(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{frac, int, rat};

    #[test]
    fn doubling_oracle() {
        let e = WeierstrassCurve::short_i64(-2, 0).unwrap();
        let p = CurvePoint::from_i64(-1, 1);
        assert!(e.contains(&p));
        let two_p = e.double(&p);
        assert_eq!(two_p, CurvePoint::rational(frac(9, 4), frac(-21, 8)));
        assert!(e.contains(&two_p));
        assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), CurvePoint::Infinity);
        assert_eq!(e.scalar_mul(0, &p), CurvePoint::Infinity);
    }

    #[test]
    fn long_form_multiples() {
        // 37a1 generator
        let e = WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let p = CurvePoint::from_i64(0, 0);
        for m in -6..=6 {
            let mp = e.scalar_mul(m, &p);
            assert!(e.contains(&mp));
            let sum = e.add(&e.scalar_mul(m - 2, &p), &e.scalar_mul(2, &p)).unwrap();
            assert_eq!(sum, mp);
        }
        assert_eq!(e.scalar_mul(2, &p), CurvePoint::from_i64(1, 0));
        assert_eq!(e.order_up_to(&p, 20), None);
    }

    #[test]
    fn torsion_order() {
        let e = WeierstrassCurve::short_i64(0, 1).unwrap();
        assert_eq!(e.order_up_to(&CurvePoint::from_i64(2, 3), 12), Some(6));
        assert_eq!(e.order_up_to(&CurvePoint::from_i64(-1, 0), 12), Some(2));
    }

    #[test]
    fn quadratic_points() {
        let e = WeierstrassCurve::short_i64(0, 1).unwrap();
        // x = 5 gives y = sqrt(126) = 3 sqrt(14)
        let y = QuadElt::sqrt_of(&rat(126));
        let p = CurvePoint::Affine { x: rat(5).into(), y };
        assert!(e.contains(&p));
        let three = e.scalar_mul(3, &p);
        assert!(e.contains(&three));
        assert_eq!(three.field().unwrap(), int(14));
        let other = CurvePoint::Affine { x: rat(3).into(), y: QuadElt::sqrt_of(&rat(28)) };
        assert!(e.contains(&other));
        assert!(e.add(&p, &other).is_err());
    }
}
