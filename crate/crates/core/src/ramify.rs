//! Ramification certificates at a prime and the construction of non-torsion points
//! defined over the maximal extension unramified at `p`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::curves::{non_torsion_certificate, CurvePoint, QuadElt, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::numeric::poly::IntPoly;
use crate::numeric::primes::{is_prime_u64, is_squarefree, squarefree_part};
use crate::numeric::rational::{ord_int_val, Int, Rat, Valuation};

/// Default cap on the search index `n`.
pub const SEARCH_CAP: u64 = 50;

/// Division polynomials up to this index are used for non-torsion certificates.
pub const TORSION_CHECK_M: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Unramified,
    RamifiedWithIndex(u32),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RamSubject {
    /// ℚ(√D); `D = 1` stands for ℚ itself.
    QuadField(#[serde(serialize_with = "crate::io::int_as_string")] Int),
    /// Fields generated by the roots of a polynomial, constant term first.
    Poly(#[serde(serialize_with = "crate::io::poly_as_strings")] IntPoly),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamCert {
    pub p: u64,
    pub subject: RamSubject,
    pub verdict: Verdict,
}

impl RamCert {
    pub fn is_unramified(&self) -> bool {
        self.verdict == Verdict::Unramified
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::input(format!("{p} is not prime")))
    }
}

/// Exact ramification of `p` in ℚ(√D).
pub fn quadratic_ramification(d: &Int, p: u64) -> Result<RamCert> {
    check_prime(p)?;
    if d.is_zero() || d.is_one() || !is_squarefree(d) {
        return Err(Error::input(format!("{d} is not a squarefree integer other than 0, 1")));
    }
    let verdict = if quadratic_index(d, p) == 1 { Verdict::Unramified } else { Verdict::RamifiedWithIndex(2) };
    Ok(RamCert { p, subject: RamSubject::QuadField(d.clone()), verdict })
}

/// Ramification index of `p` in ℚ(√D) for squarefree `D` (1 when `D = 1`).
pub fn quadratic_index(d: &Int, p: u64) -> u32 {
    if d.is_one() {
        return 1;
    }
    let ramified = if p == 2 {
        d.mod_floor(&Int::from(4)) != Int::one()
    } else {
        (d % Int::from(p)).is_zero()
    };
    if ramified {
        2
    } else {
        1
    }
}

/// Ramification index of `p` in ℚ(√D₁, √D₂): 4 when all three quadratic subfields
/// ramify, 2 when some do, else 1.
pub fn biquadratic_index(d1: &Int, d2: &Int, p: u64) -> u32 {
    let d3 = squarefree_part(&(d1 * d2));
    let r = [d1, d2, &d3].iter().filter(|d| quadratic_index(d, p) == 2).count();
    match r {
        0 => 1,
        3 => 4,
        _ => 2,
    }
}

/// `Unramified` when the binary form of `g` is separable mod `p` (`ḡ` squarefree and
/// the degree drops by at most one), which makes every root generate an extension
/// unramified at `p`; otherwise `Inconclusive`.
pub fn unramified_certificate(g: &IntPoly, p: u64) -> Result<RamCert> {
    check_prime(p)?;
    if g.degree() == 0 || g.is_zero() {
        return Err(Error::input("certificate needs a nonconstant polynomial"));
    }
    if p >= 1 << 32 {
        return Err(Error::input("certificates are computed for p < 2^32"));
    }
    let prim = g.primitive();
    let red = prim.reduce_mod(p);
    let separable = !red.is_zero() && prim.degree() - red.degree() <= 1 && red.is_squarefree();
    let verdict = if separable { Verdict::Unramified } else { Verdict::Inconclusive };
    Ok(RamCert { p, subject: RamSubject::Poly(g.clone()), verdict })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstructionCase {
    /// `x_n = np`, `v(B) = 0`.
    BUnit,
    /// `x_n = np + √A`, `v(A) = 0 < v(B)`.
    AUnit,
    /// `x_n = np + 1`, both positive.
    BothDivisible,
    /// `p = 2`: `y_n = 2n` or `2n + 1`, `x_n` a root of `x³ + Ax + B − y_n²`.
    Two,
}

/// A point over the maximal extension unramified at `p`, described by the minimal
/// data of its coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct UnramifiedPoint {
    pub case: ConstructionCase,
    pub n: u64,
    /// Polynomial with `x_n` among its roots.
    #[serde(serialize_with = "crate::io::poly_as_strings")]
    pub x_poly: IntPoly,
    /// `x_n` itself when it lies in ℚ or ℚ(√A).
    #[serde(skip)]
    pub x: Option<QuadElt>,
    pub x_display: String,
    /// `y_n²` for odd `p`, `y_n` for `p = 2`.
    pub y_display: String,
    pub non_torsion: bool,
    pub x_cert: Option<RamCert>,
    pub y_cert: RamCert,
    /// `y_n²` when `x_n` is rational.
    #[serde(skip)]
    y_squared: Option<Rat>,
}

impl UnramifiedPoint {
    /// The point itself when both coordinates lie in one quadratic field.
    pub fn point(&self) -> Option<CurvePoint> {
        let x = self.x.as_ref()?.as_rational()?.clone();
        let y2 = self.y_squared.as_ref()?;
        Some(CurvePoint::Affine { x: x.into(), y: QuadElt::sqrt_of(y2) })
    }
}

/// The explicit non-torsion point over a field unramified at `p`, with `n ≤ cap` the first index that certifies both non-torsion
/// and unramifiedness.
pub fn construct_unramified_point(e: &WeierstrassCurve, p: u64, cap: u64) -> Result<UnramifiedPoint> {
    check_prime(p)?;
    let (a, b) = e
        .short_coefficients()
        .ok_or_else(|| Error::input("the construction works on a short model"))?;
    let va = rat_val(&a, p);
    let vb = rat_val(&b, p);
    if va < Valuation::Finite(0) || vb < Valuation::Finite(0) {
        return Err(Error::precondition(format!("the model is not integral at {p}")));
    }
    let (a, b) = (a.to_integer(), b.to_integer());
    for n in 1..=cap {
        let candidate = if p == 2 { case_two(e, &a, &b, vb, n)? } else { case_odd(e, &a, &b, va, vb, p, n)? };
        if candidate.non_torsion
            && candidate.y_cert.is_unramified()
            && candidate.x_cert.as_ref().is_none_or(|c| c.is_unramified())
        {
            return Ok(candidate);
        }
    }
    Err(Error::SearchExhausted(format!("no certified point with n ≤ {cap}")))
}

fn rat_val(x: &Rat, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    match (ord_int_val(x.numer(), p), ord_int_val(x.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => Valuation::Infinite,
    }
}

fn case_odd(
    e: &WeierstrassCurve,
    a: &Int,
    b: &Int,
    va: Valuation,
    vb: Valuation,
    p: u64,
    n: u64,
) -> Result<UnramifiedPoint> {
    let np = Int::from(n) * Int::from(p);
    let r = |z: &Int| Rat::from_integer(z.clone());
    let case = if vb == Valuation::Finite(0) {
        ConstructionCase::BUnit
    } else if va == Valuation::Finite(0) {
        ConstructionCase::AUnit
    } else {
        ConstructionCase::BothDivisible
    };
    let x = match case {
        ConstructionCase::BUnit => QuadElt::rational(r(&np)),
        ConstructionCase::BothDivisible => QuadElt::rational(r(&(&np + 1))),
        _ => &QuadElt::rational(r(&np)) + &QuadElt::sqrt_of(&r(a)),
    };
    let (av, bv) = (QuadElt::rational(r(a)), QuadElt::rational(r(b)));
    let y2 = &(&(&(&x * &x) * &x) + &(&av * &x)) + &bv;
    let x_poly = minpoly_int(&x);
    let non_torsion = non_torsion_certificate(e, &x_poly, TORSION_CHECK_M)?;
    let (x_cert, y_cert) = if x.is_rational() {
        let y2r = y2.a.clone();
        let d = squarefree_part(&(y2r.numer() * y2r.denom()));
        let cert = if d.is_one() {
            RamCert { p, subject: RamSubject::QuadField(d), verdict: Verdict::Unramified }
        } else {
            quadratic_ramification(&d, p)?
        };
        (None, cert)
    } else {
        // y⁴ − 2c·y² + (c² − A·d²) for y² = c + d√A
        let (c, dd) = (y2.a.clone(), y2.b.clone());
        let da = Rat::from_integer(x.d.clone());
        let quartic = [&c * &c - &da * &dd * &dd, Rat::zero(), -(&c + &c), Rat::zero(), Rat::one()];
        let den = crate::numeric::rational::common_denominator(quartic.iter());
        let y_poly = IntPoly::new(quartic.iter().map(|q| (q * Rat::from_integer(den.clone())).to_integer()).collect());
        (Some(quadratic_ramification(&x.d, p)?), unramified_certificate(&y_poly, p)?)
    };
    Ok(UnramifiedPoint {
        case,
        n,
        x_display: x.to_string(),
        y_display: format!("sqrt({y2})"),
        x_poly,
        y_squared: y2.as_rational().cloned(),
        x: Some(x),
        non_torsion,
        x_cert,
        y_cert,
    })
}

fn case_two(e: &WeierstrassCurve, a: &Int, b: &Int, vb: Valuation, n: u64) -> Result<UnramifiedPoint> {
    let y = if vb == Valuation::Finite(0) { Int::from(2 * n) } else { Int::from(2 * n + 1) };
    let f = IntPoly::new(vec![b - &y * &y, a.clone(), Int::zero(), Int::one()]);
    let non_torsion = non_torsion_certificate(e, &f, TORSION_CHECK_M)?;
    let y_cert = unramified_certificate(&f, 2)?;
    Ok(UnramifiedPoint {
        case: ConstructionCase::Two,
        n,
        x_display: format!("root of {}", poly_string(&f)),
        y_display: y.to_string(),
        x_poly: f,
        x: None,
        non_torsion,
        x_cert: None,
        y_cert,
        y_squared: None,
    })
}

/// Minimal polynomial of a rational or quadratic element with integer coefficients.
fn minpoly_int(x: &QuadElt) -> IntPoly {
    let m = x.minpoly();
    let den = crate::numeric::rational::common_denominator(m.iter());
    IntPoly::new(m.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect()).primitive()
}

/// `c0 + c1*x + ...` rendering used in reports.
pub fn poly_string(f: &IntPoly) -> String {
    let mut terms = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let coef = if i > 0 && c.abs().is_one() {
            if c.is_negative() { "-".to_string() } else { String::new() }
        } else {
            c.to_string()
        };
        terms.push(if mon.is_empty() { coef } else if coef.is_empty() || coef == "-" { format!("{coef}{mon}") } else { format!("{coef}*{mon}") });
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.join(" + ").replace("+ -", "- ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::primes::primes_up_to;
    use crate::numeric::rational::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadratic_cases() {
        assert_eq!(quadratic_ramification(&int(2), 3).unwrap().verdict, Verdict::Unramified);
        assert_eq!(quadratic_ramification(&int(5), 5).unwrap().verdict, Verdict::RamifiedWithIndex(2));
        assert_eq!(quadratic_ramification(&int(-1), 2).unwrap().verdict, Verdict::RamifiedWithIndex(2));
        assert_eq!(quadratic_ramification(&int(-3), 2).unwrap().verdict, Verdict::Unramified);
        assert!(quadratic_ramification(&int(12), 3).is_err());
        // the Gaussian case seen through the polynomial: x² + 1 ≡ (x + 1)² mod 2
        let g = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(unramified_certificate(&g, 2).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn polynomial_certificates() {
        let c = |v: &[i64], p| unramified_certificate(&IntPoly::from_i64(v), p).unwrap().verdict;
        assert_eq!(c(&[-2, 0, 1], 5), Verdict::Unramified);
        assert_eq!(c(&[-5, 0, 1], 5), Verdict::Inconclusive);
        assert_eq!(c(&[-3, 0, 0, 1], 2), Verdict::Unramified);
        // degree drop by one keeps a simple root at infinity
        assert_eq!(c(&[1, 1, 5], 5), Verdict::Unramified);
        assert_eq!(c(&[1, 25, 25], 5), Verdict::Inconclusive);
        assert!(unramified_certificate(&IntPoly::from_i64(&[3]), 5).is_err());
    }

    #[test]
    fn certificate_agrees_with_exact_answer() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let primes = primes_up_to(100);
        let mut checked = 0;
        while checked < 500 {
            let d = int(rng.gen_range(-500i64..=500));
            if d.is_zero() || d.is_one() || !is_squarefree(&d) {
                continue;
            }
            let p = primes[rng.gen_range(0..primes.len())];
            let poly = IntPoly::new(vec![-d.clone(), Int::zero(), Int::one()]);
            if unramified_certificate(&poly, p).unwrap().is_unramified() {
                assert!(quadratic_ramification(&d, p).unwrap().is_unramified(), "D = {d}, p = {p}");
            }
            checked += 1;
        }
    }

    fn squarefree_range() -> Vec<Int> {
        (-30i64..=30).map(int).filter(|d| !d.is_zero() && (d.is_one() || is_squarefree(d))).collect()
    }

    #[test]
    fn compositum_index_bounds() {
        let ds = squarefree_range();
        for p in primes_up_to(30) {
            for d1 in &ds {
                for d2 in &ds {
                    let (e1, e2) = (quadratic_index(d1, p), quadratic_index(d2, p));
                    let d3 = squarefree_part(&(d1 * d2));
                    // unramified constituents give an unramified product field
                    if e1 == 1 && e2 == 1 {
                        assert_eq!(quadratic_index(&d3, p), 1);
                    }
                    // the compositum lies in M_{e1·e2}
                    let e = if d1 == d2 || d3.is_one() || d1.is_one() || d2.is_one() {
                        e1.max(e2)
                    } else {
                        biquadratic_index(d1, d2, p)
                    };
                    assert!(e <= e1 * e2, "D1 = {d1}, D2 = {d2}, p = {p}");
                }
            }
        }
    }

    #[test]
    fn lemma_examples() {
        let e = WeierstrassCurve::short_i64(0, 1).unwrap();
        let pt = construct_unramified_point(&e, 5, SEARCH_CAP).unwrap();
        assert_eq!((pt.case, pt.n), (ConstructionCase::BUnit, 1));
        assert_eq!(pt.y_cert.subject, RamSubject::QuadField(int(14)));
        assert!(pt.non_torsion && pt.y_cert.is_unramified());

        let e = WeierstrassCurve::short_i64(25, 5).unwrap();
        let pt = construct_unramified_point(&e, 5, SEARCH_CAP).unwrap();
        assert_eq!((pt.case, pt.n), (ConstructionCase::BothDivisible, 1));
        assert_eq!(pt.y_cert.subject, RamSubject::QuadField(int(371)));

        let e = WeierstrassCurve::short_i64(0, 1).unwrap();
        let pt = construct_unramified_point(&e, 2, SEARCH_CAP).unwrap();
        assert_eq!((pt.case, pt.n), (ConstructionCase::Two, 1));
        assert_eq!(pt.x_poly, IntPoly::from_i64(&[-3, 0, 0, 1]));

        // v(A) = 0 < v(B) with irrational √A produces both certificates
        let e = WeierstrassCurve::short_i64(2, 7).unwrap();
        let pt = construct_unramified_point(&e, 7, SEARCH_CAP).unwrap();
        assert_eq!(pt.case, ConstructionCase::AUnit);
        assert!(pt.x_cert.as_ref().unwrap().is_unramified() && pt.y_cert.is_unramified());
    }

    #[test]
    fn outputs_satisfy_the_curve() {
        for (a, b, p) in [(0, 1, 5), (25, 5, 5), (2, 7, 7), (3, 14, 7), (-1, 0, 5), (0, 1, 2), (1, 2, 2)] {
            let e = WeierstrassCurve::short_i64(a, b).unwrap();
            let pt = construct_unramified_point(&e, p, SEARCH_CAP).unwrap();
            assert!(pt.non_torsion && pt.y_cert.is_unramified());
            if let Some(q) = pt.point() {
                assert!(e.contains(&q));
            }
            if let Some(x) = &pt.x {
                let mut acc = QuadElt::zero();
                for c in pt.x_poly.to_qpoly().coeffs().iter().rev() {
                    acc = &(&acc * x) + &QuadElt::rational(c.clone());
                }
                assert!(acc.is_zero());
            } else {
                // p = 2: (x, y_n) is on the curve iff x is a root of x³ + Ax + B − y_n²
                let y: Int = pt.y_display.parse().unwrap();
                let expect = IntPoly::new(vec![Int::from(b) - &y * &y, Int::from(a), Int::zero(), Int::one()]);
                assert_eq!(pt.x_poly, expect);
            }
        }
    }
}
