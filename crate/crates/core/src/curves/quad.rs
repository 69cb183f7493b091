use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::primes::{is_squarefree, squarefree_part};
use crate::numeric::rational::{int_sqrt_exact, rat_to_f64, Int, Rat};

/// An element `a + b·√D` of ℚ(√D). `D = 1` tags a plain rational (then `b = 0`).
#[derive(Debug, Clone)]
pub struct QuadElt {
    pub a: Rat,
    pub b: Rat,
    pub d: Int,
}

impl QuadElt {
    pub fn rational(a: Rat) -> Self {
        QuadElt { a, b: Rat::zero(), d: Int::one() }
    }

    /// `a + b·√d`; `d` must be squarefree and different from 0 and 1.
    pub fn new(a: Rat, b: Rat, d: Int) -> Result<Self> {
        if d.is_zero() || d.is_one() || !is_squarefree(&d) {
            return Err(Error::input(format!("{d} is not a squarefree integer other than 0, 1")));
        }
        Ok(QuadElt { a, b, d })
    }

    /// `√r` for a rational `r`, written as `m·√D` with `D` squarefree. Rational when `r`
    /// is a square.
    pub fn sqrt_of(r: &Rat) -> Self {
        if r.is_zero() {
            return Self::rational(Rat::zero());
        }
        // r = n/d = n·d / d², then n·d = m²·D
        let nd = r.numer() * r.denom();
        let core = squarefree_part(&nd);
        let square = (&nd / &core).abs();
        let m = int_sqrt_exact(&square).expect("cofactor of the squarefree part is a square");
        let coeff = Rat::new(m, r.denom().clone());
        if core.is_one() {
            Self::rational(coeff)
        } else {
            QuadElt { a: Rat::zero(), b: coeff, d: core }
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rat::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    /// The field tag shared by `self` and `other`, or an error when they live in
    /// different quadratic fields.
    pub fn common_field(&self, other: &QuadElt) -> Result<Int> {
        join_fields(self.field(), other.field())
    }

    /// `D` for an irrational element, 1 for a rational one.
    pub fn field(&self) -> &Int {
        static ONE: std::sync::OnceLock<Int> = std::sync::OnceLock::new();
        if self.b.is_zero() {
            ONE.get_or_init(Int::one)
        } else {
            &self.d
        }
    }

    pub fn conj(&self) -> Self {
        QuadElt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::input("division by zero in a quadratic field"));
        }
        let n = self.norm();
        Ok(QuadElt { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() })
    }

    /// Value under the embedding with `√D > 0`; `None` for imaginary fields.
    pub fn to_f64(&self) -> Option<f64> {
        if self.is_rational() {
            return Some(rat_to_f64(&self.a));
        }
        if self.d.is_negative() {
            return None;
        }
        let root = rat_to_f64(&Rat::from_integer(self.d.clone())).sqrt();
        Some(rat_to_f64(&self.a) + rat_to_f64(&self.b) * root)
    }

    /// Minimal polynomial over ℚ as `(c0, c1, c2)` monic coefficients, or the linear
    /// `x − a` for a rational element.
    pub fn minpoly(&self) -> Vec<Rat> {
        if self.is_rational() {
            vec![-&self.a, Rat::one()]
        } else {
            vec![self.norm(), -self.trace(), Rat::one()]
        }
    }

}

// rationals compare equal whatever field they were computed in
impl PartialEq for QuadElt {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadElt {}

impl std::hash::Hash for QuadElt {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
        if !self.b.is_zero() {
            self.d.hash(h);
        }
    }
}

pub(crate) fn join_fields(d1: &Int, d2: &Int) -> Result<Int> {
    if d1 == d2 || d2.is_one() {
        Ok(d1.clone())
    } else if d1.is_one() {
        Ok(d2.clone())
    } else {
        Err(Error::input(format!("elements of Q(sqrt {d1}) and Q(sqrt {d2}) cannot be combined")))
    }
}

fn field(x: &QuadElt, y: &QuadElt) -> Int {
    x.common_field(y).expect("operands in one quadratic field")
}

impl From<Rat> for QuadElt {
    fn from(a: Rat) -> Self {
        Self::rational(a)
    }
}

impl Add for &QuadElt {
    type Output = QuadElt;
    fn add(self, o: &QuadElt) -> QuadElt {
        let d = field(self, o);
        QuadElt { a: &self.a + &o.a, b: &self.b + &o.b, d }
    }
}

impl Sub for &QuadElt {
    type Output = QuadElt;
    fn sub(self, o: &QuadElt) -> QuadElt {
        let d = field(self, o);
        QuadElt { a: &self.a - &o.a, b: &self.b - &o.b, d }
    }
}

impl Mul for &QuadElt {
    type Output = QuadElt;
    fn mul(self, o: &QuadElt) -> QuadElt {
        let d = field(self, o);
        let dr = Rat::from_integer(d.clone());
        let a = &self.a * &o.a + dr * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadElt { a, b, d }
    }
}

impl Div for &QuadElt {
    type Output = QuadElt;
    fn div(self, o: &QuadElt) -> QuadElt {
        self * &o.inv().expect("nonzero divisor")
    }
}

impl Neg for &QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadElt {
            type Output = QuadElt;
            fn $m(self, o: QuadElt) -> QuadElt {
                (&self).$m(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        -(&self)
    }
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{frac, int, rat};

    #[test]
    fn field_arithmetic() {
        let x = QuadElt::new(rat(1), rat(2), int(3)).unwrap();
        let y = QuadElt::new(frac(1, 2), rat(-1), int(3)).unwrap();
        let prod = &x * &y;
        assert_eq!(prod, QuadElt::new(frac(-11, 2), rat(0), int(3)).unwrap());
        let q = &prod / &y;
        assert_eq!(q, x);
        assert_eq!(&(&x - &x) + &QuadElt::one(), QuadElt::one());
        assert!(QuadElt::new(rat(1), rat(1), int(4)).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let x = QuadElt::new(rat(0), rat(1), int(2)).unwrap();
        let y = QuadElt::new(rat(0), rat(1), int(5)).unwrap();
        assert!(x.common_field(&y).is_err());
        assert!(x.common_field(&QuadElt::one()).is_ok());
    }

    #[test]
    fn square_roots() {
        let r = QuadElt::sqrt_of(&rat(126));
        assert_eq!((r.b.clone(), r.d.clone()), (rat(3), int(14)));
        assert_eq!(&r * &r, QuadElt::rational(rat(126)));
        assert_eq!(QuadElt::sqrt_of(&frac(9, 4)), QuadElt::rational(frac(3, 2)));
        let s = QuadElt::sqrt_of(&frac(-1, 8));
        assert_eq!(s.d, int(-2));
        assert_eq!((&s * &s).a, frac(-1, 8));
    }
}
