use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::is_prime_u64;
use super::real::{RealApprox, ULP};
use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Parse `"n"` or `"n/d"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<Int> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
    }
}

/// Serialise as `"n/d"`, the exchange format for rationals.
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// p-adic valuation, with the zero element mapped to a distinguished infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_positive(self) -> bool {
        match self {
            Valuation::Finite(v) => v > 0,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer. Caller guarantees `n != 0`.
pub fn ord_int(n: &Int, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let bp = Int::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Valuation of an integer, allowing zero.
pub fn ord_int_val(n: &Int, p: u64) -> Valuation {
    if n.is_zero() {
        Valuation::Infinite
    } else {
        Valuation::Finite(ord_int(n, p))
    }
}

/// `ord_p(x)` for a rational `x`.
pub fn ord_p(x: &Rat, p: u64) -> Result<Valuation> {
    if !is_prime_u64(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    Ok(ord_unchecked(x, p))
}

/// `ord_p` without the primality check; `p` must be prime.
pub(crate) fn ord_unchecked(x: &Rat, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(ord_int(x.numer(), p) - ord_int(x.denom(), p))
}

/// Natural logarithm of `|n|` for a nonzero big integer, with relative accuracy near
/// machine precision.
pub fn log_abs(n: &Int) -> f64 {
    assert!(!n.is_zero(), "log of zero");
    let bits = n.bits();
    if bits <= 1000 {
        n.abs().to_f64().expect("finite").ln()
    } else {
        let shift = bits - 64;
        let top = (n.abs() >> shift).to_f64().expect("finite");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Enclosure of `log |n|`.
pub fn log_abs_approx(n: &Int) -> RealApprox {
    let v = log_abs(n);
    RealApprox::new(v, 4.0 * ULP * v.abs().max(1.0))
}

/// `log p` as an enclosure.
pub fn log_prime(p: u64) -> RealApprox {
    log_abs_approx(&Int::from(p))
}

/// Weil height `h(n/d) = log max(|n|, d)` of a reduced fraction; `h(0) = 0`.
pub fn weil_height_rational(x: &Rat) -> RealApprox {
    if x.is_zero() {
        return RealApprox::ZERO;
    }
    let m = x.numer().abs().max(x.denom().clone());
    if m.is_one() {
        RealApprox::ZERO
    } else {
        log_abs_approx(&m)
    }
}

/// Nearest `f64` to a rational, saturating to infinity.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let (n, d) = (x.numer(), x.denom());
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // shift so that the quotient keeps 64 significant bits
    let shift = nb - db - 64;
    let q = if shift >= 0 {
        n / (d << (shift as u64))
    } else {
        (n << ((-shift) as u64)) / d
    };
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    let scaled = qf * 2f64.powi(shift.clamp(-1100, 1100) as i32);
    if shift.abs() > 1100 {
        if shift > 0 {
            f64::INFINITY.copysign(qf)
        } else {
            0.0
        }
    } else {
        scaled
    }
}

/// `true` when `x` is the square of a rational.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rat::new(n, d))
}

/// Exact integer square root, if `n` is a perfect square.
pub fn int_sqrt_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Int {
    xs.into_iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(ord_p(&frac(8, 3), 2).unwrap(), Valuation::Finite(3));
        assert_eq!(ord_p(&rat(1), 3).unwrap(), Valuation::Finite(0));
        assert_eq!(ord_p(&frac(7, 25), 5).unwrap(), Valuation::Finite(-2));
        assert_eq!(ord_p(&rat(0), 5).unwrap(), Valuation::Infinite);
        assert!(ord_p(&rat(4), 4).is_err());
    }

    #[test]
    fn heights_of_rationals() {
        assert_eq!(weil_height_rational(&rat(1)).value, 0.0);
        assert!(weil_height_rational(&rat(2)).contains(2f64.ln()));
        assert!(weil_height_rational(&frac(3, 5)).contains(5f64.ln()));
        assert_eq!(weil_height_rational(&rat(0)).value, 0.0);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(rat_to_string(&frac(-3, 2)), "-3/2");
        assert_eq!(rat_to_string(&rat(5)), "5/1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn huge_log() {
        let n = Int::from(10).pow(2000u32);
        let l = log_abs(&n);
        assert!((l - 2000.0 * 10f64.ln()).abs() < 1e-9);
        assert!((rat_to_f64(&frac(1, 3)) - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(rat_to_f64(&Rat::from_integer(Int::from(10).pow(400u32))), f64::INFINITY);
    }
}
