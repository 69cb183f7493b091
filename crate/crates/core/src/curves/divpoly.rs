//! Division polynomials of short models, with `ψ_m = φ_m` for odd `m` and
//! `ψ_m = y·φ_m` for even `m`.

use num_traits::{One, Zero};

use super::weierstrass::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::numeric::poly::{IntPoly, QPoly};
use crate::numeric::rational::Rat;

fn qc(c: Rat) -> QPoly {
    QPoly::new(vec![c])
}

fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Arithmetic in ℚ[x] or in ℚ[x]/(g).
struct Ring<'a> {
    modulus: Option<&'a QPoly>,
}

impl Ring<'_> {
    fn reduce(&self, p: QPoly) -> QPoly {
        match self.modulus {
            Some(g) => p.rem(g),
            None => p,
        }
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(a.mul(b))
    }
    fn cube(&self, a: &QPoly) -> QPoly {
        self.mul(&self.mul(a, a), a)
    }
}

fn short_ab(e: &WeierstrassCurve) -> Result<(Rat, Rat)> {
    e.short_coefficients()
        .ok_or_else(|| Error::input("division polynomials need a short model y^2 = x^3 + Ax + B"))
}

/// `φ_0, …, φ_m` in the given ring.
fn phi_table(a: &Rat, b: &Rat, m: usize, ring: &Ring) -> Vec<QPoly> {
    let f = QPoly::new(vec![b.clone(), a.clone(), Rat::zero(), Rat::one()]);
    let f2 = ring.mul(&f, &f);
    let mut t = vec![
        QPoly::zero(),
        QPoly::one(),
        qc(q(2)),
        QPoly::new(vec![-(a * a), q(12) * b, q(6) * a, Rat::zero(), q(3)]),
        QPoly::new(vec![
            q(4) * (-(q(8) * b * b) - a * a * a),
            q(4) * (-(q(4) * a * b)),
            q(4) * (-(q(5) * a * a)),
            q(4) * (q(20) * b),
            q(4) * (q(5) * a),
            Rat::zero(),
            q(4),
        ]),
    ];
    for poly in t.iter_mut() {
        *poly = ring.reduce(poly.clone());
    }
    let half = qc(Rat::new(1.into(), 2.into()));
    for n in 5..=m {
        let k = n / 2;
        let next = if n % 2 == 1 {
            let (x, y) = (ring.mul(&t[k + 2], &ring.cube(&t[k])), ring.mul(&t[k - 1], &ring.cube(&t[k + 1])));
            if k % 2 == 0 {
                ring.mul(&f2, &x).sub(&y)
            } else {
                x.sub(&ring.mul(&f2, &y))
            }
        } else {
            let u = ring.mul(&t[k + 2], &ring.mul(&t[k - 1], &t[k - 1]));
            let v = ring.mul(&t[k - 2], &ring.mul(&t[k + 1], &t[k + 1]));
            ring.mul(&ring.mul(&t[k], &u.sub(&v)), &half)
        };
        t.push(next);
    }
    t.truncate(m + 1);
    t
}

/// `φ_m` over ℚ. Returned with cleared denominators, unchanged when `A, B` are integers.
pub fn division_polynomial(e: &WeierstrassCurve, m: usize) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::input("division polynomial index must be at least 1"));
    }
    let (a, b) = short_ab(e)?;
    let phi = phi_table(&a, &b, m, &Ring { modulus: None }).pop().expect("table has m + 1 entries");
    Ok(to_int(&phi))
}

/// The polynomial whose roots are the `x` of the nonzero `m`-torsion: `φ_m` for odd
/// `m`, `(x³ + Ax + B)·φ_m` for even `m`.
pub fn torsion_polynomial(e: &WeierstrassCurve, m: usize) -> Result<IntPoly> {
    let (a, b) = short_ab(e)?;
    let phi = division_polynomial(e, m)?;
    if m % 2 == 1 {
        return Ok(phi);
    }
    let f = QPoly::new(vec![b, a, Rat::zero(), Rat::one()]);
    Ok(to_int(&phi.to_qpoly().mul(&f)))
}

fn to_int(p: &QPoly) -> IntPoly {
    let den = p.denominator_lcm();
    if den.is_one() {
        IntPoly::new(p.coeffs().iter().map(|c| c.to_integer()).collect())
    } else {
        p.to_int_poly()
    }
}

/// Certificate that no point with `x` a root of `g` is torsion of order `≤ max_m`: for
/// every such `m`, `gcd(g, T_m) = 1` where `T_m` is the torsion polynomial. The
/// recurrence runs in ℚ[x]/(g), so the cost depends on `deg g`, not on `m²`.
pub fn non_torsion_certificate(e: &WeierstrassCurve, g: &IntPoly, max_m: usize) -> Result<bool> {
    let (a, b) = short_ab(e)?;
    if g.degree() == 0 {
        return Err(Error::input("minimal polynomial must be nonconstant"));
    }
    let gq = g.to_qpoly();
    let ring = Ring { modulus: Some(&gq) };
    let table = phi_table(&a, &b, max_m.max(4), &ring);
    let f = ring.reduce(QPoly::new(vec![b.clone(), a.clone(), Rat::zero(), Rat::one()]));
    for (m, phi) in table.iter().enumerate().take(max_m + 1).skip(2) {
        let t = if m % 2 == 1 { phi.clone() } else { ring.mul(phi, &f) };
        if gq.gcd(&t).degree() > 0 || t.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::CurvePoint;
    use crate::numeric::rational::rat;

    #[test]
    fn small_indices() {
        let e = WeierstrassCurve::short_i64(-7, 11).unwrap();
        assert_eq!(division_polynomial(&e, 1).unwrap(), IntPoly::from_i64(&[1]));
        assert_eq!(division_polynomial(&e, 2).unwrap(), IntPoly::from_i64(&[2]));
        // 3x^4 + 6Ax^2 + 12Bx - A^2
        assert_eq!(division_polynomial(&e, 3).unwrap(), IntPoly::from_i64(&[-49, 132, -42, 0, 3]));
        for m in 1..=12usize {
            let deg = if m % 2 == 1 { (m * m - 1) / 2 } else { (m * m - 4) / 2 };
            assert_eq!(division_polynomial(&e, m).unwrap().degree(), deg, "m = {m}");
        }
    }

    #[test]
    fn vanishing_matches_group_law() {
        // y^2 = x^3 + 1 has torsion of order 6; y^2 = x^3 - 2x has (-1, 1) of infinite order
        let cases = [
            (WeierstrassCurve::short_i64(0, 1).unwrap(), CurvePoint::from_i64(2, 3)),
            (WeierstrassCurve::short_i64(0, 1).unwrap(), CurvePoint::from_i64(0, 1)),
            (WeierstrassCurve::short_i64(-2, 0).unwrap(), CurvePoint::from_i64(-1, 1)),
            (WeierstrassCurve::short_i64(-2, 0).unwrap(), CurvePoint::from_i64(0, 0)),
        ];
        for (e, p) in cases {
            let x = p.as_rational().unwrap().0;
            for m in 1..=12usize {
                let t = torsion_polynomial(&e, m).unwrap();
                let kills = e.scalar_mul(m as i64, &p).is_infinity();
                assert_eq!(t.eval_rat(&x).is_zero(), kills, "{p} m = {m}");
            }
        }
    }

    #[test]
    fn three_torsion_root() {
        // y^2 = x^3 + 1: (0, 1) has order 3
        let e = WeierstrassCurve::short_i64(0, 1).unwrap();
        assert!(division_polynomial(&e, 3).unwrap().eval_rat(&rat(0)).is_zero());
        assert!(!division_polynomial(&e, 3).unwrap().eval_rat(&rat(2)).is_zero());
    }

    #[test]
    fn certificates() {
        let e = WeierstrassCurve::short_i64(0, 1).unwrap();
        // x = 5 is non-torsion; x = 2 is 6-torsion
        assert!(non_torsion_certificate(&e, &IntPoly::from_i64(&[-5, 1]), 30).unwrap());
        assert!(!non_torsion_certificate(&e, &IntPoly::from_i64(&[-2, 1]), 30).unwrap());
        // the x-minimal polynomial of the 3-torsion factor x^3 + 4 of phi_3 = 3x(x^3 + 4)
        assert!(!non_torsion_certificate(&e, &IntPoly::from_i64(&[4, 0, 0, 1]), 30).unwrap());
        assert!(non_torsion_certificate(&e, &IntPoly::from_i64(&[-3, 0, 0, 1]), 30).unwrap());
    }
}
