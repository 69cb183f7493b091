//! Rational torsion by Lutz–Nagell.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::point::CurvePoint;
use super::weierstrass::WeierstrassCurve;
use crate::numeric::primes::factor;
use crate::numeric::rational::{Int, Rat};

/// Integer roots of `x³ + a·x + c`, found by exact bisection on monotone pieces.
pub fn integer_roots_depressed_cubic(a: &Int, c: &Int) -> Vec<Int> {
    let g = |x: &Int| x * x * x + a * x + c;
    // Cauchy bound
    let r = Int::one() + a.abs().max(c.abs());
    let mut pieces: Vec<(Int, Int, bool)> = Vec::new();
    if !a.is_negative() {
        pieces.push((-&r, r.clone(), true));
    } else {
        // critical points at ±sqrt(-a/3); k = floor of that
        let k = (-a / Int::from(3)).sqrt();
        pieces.push((-&r, -&k - 1u32, true));
        pieces.push((-&k, k.clone(), false));
        pieces.push((&k + 1u32, r.clone(), true));
    }
    let mut roots = Vec::new();
    for (mut lo, mut hi, increasing) in pieces {
        if lo > hi {
            continue;
        }
        let sign = |x: &Int| {
            let v = g(x);
            if increasing {
                v
            } else {
                -v
            }
        };
        if sign(&lo).is_positive() || sign(&hi).is_negative() {
            continue;
        }
        // smallest x in [lo, hi] with sign(x) >= 0
        while lo < hi {
            let mid = (&lo + &hi).div_floor(&Int::from(2));
            if sign(&mid).is_negative() {
                lo = mid + 1u32;
            } else {
                hi = mid;
            }
        }
        if g(&lo).is_zero() {
            roots.push(lo);
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Positive `y` with `y² | n`.
fn square_divisor_roots(n: &Int) -> Vec<Int> {
    let mut ys = vec![Int::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::new();
        for y in &ys {
            let mut pk = Int::one();
            for _ in 0..=(e / 2) {
                next.push(y * &pk);
                pk *= &p;
            }
        }
        ys = next;
    }
    ys.sort();
    ys
}

/// Torsion of an integral short model `y² = x³ + Ax + B`.
fn torsion_integral_short(e: &WeierstrassCurve) -> Vec<CurvePoint> {
    let a = e.a4.to_integer();
    let b = e.a6.to_integer();
    let mut out = vec![CurvePoint::Infinity];
    for x in integer_roots_depressed_cubic(&a, &b) {
        out.push(CurvePoint::rational(Rat::from_integer(x), Rat::zero()));
    }
    let d = Int::from(4) * &a * &a * &a + Int::from(27) * &b * &b;
    for y in square_divisor_roots(&d) {
        let c = &b - &y * &y;
        for x in integer_roots_depressed_cubic(&a, &c) {
            for yy in [y.clone(), -&y] {
                let p = CurvePoint::rational(Rat::from_integer(x.clone()), Rat::from_integer(yy));
                if e.order_up_to(&p, 12).is_some() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// The rational torsion subgroup, including the point at infinity, on the given model.
pub fn rational_torsion(e: &WeierstrassCurve) -> Vec<CurvePoint> {
    let (short, iso) = e.integral_short_model();
    let back = iso.inverse();
    torsion_integral_short(&short).iter().map(|p| p.map(&back)).collect()
}

/// Whether a point is torsion. Rational points failing the Lutz–Nagell conditions on
/// the integral short model are rejected at once; otherwise the order is searched up
/// to 12 (Mazur).
pub fn is_torsion(e: &WeierstrassCurve, p: &CurvePoint) -> bool {
    if let Some((x, y)) = p.as_rational() {
        let (short, iso) = e.integral_short_model();
        let (xs, ys) = iso.map_xy(&x, &y);
        if !xs.is_integer() || !ys.is_integer() {
            return false;
        }
        let y = ys.to_integer();
        if !y.is_zero() {
            let (a, b) = (short.a4.to_integer(), short.a6.to_integer());
            let disc = Int::from(4) * &a * &a * &a + Int::from(27) * &b * &b;
            if !(&disc % (&y * &y)).is_zero() {
                return false;
            }
        }
    }
    e.order_up_to(p, 12).is_some()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::int;

    #[test]
    fn cubic_roots() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        assert_eq!(integer_roots_depressed_cubic(&int(-7), &int(6)), vec![int(-3), int(1), int(2)]);
        assert_eq!(integer_roots_depressed_cubic(&int(0), &int(-8)), vec![int(2)]);
        assert!(integer_roots_depressed_cubic(&int(1), &int(1)).is_empty());
        // double root: x^3 - 3x + 2 = (x - 1)^2 (x + 2)
        assert_eq!(integer_roots_depressed_cubic(&int(-3), &int(2)), vec![int(-2), int(1)]);
    }

    #[test]
    fn torsion_orders() {
        let cases = [([0i64, 0, 0, -1, 0], 4usize), ([0, 0, 0, 0, 2], 1), ([0, 0, 0, 0, 1], 6), ([0, -1, 1, -10, -20], 5), ([0, 0, 1, -1, 0], 1)];
        for (a, n) in cases {
            let e = WeierstrassCurve::from_i64(a).unwrap();
            let t = rational_torsion(&e);
            assert_eq!(t.len(), n, "{a:?}");
            for p in &t {
                assert!(e.contains(p));
                for q in &t {
                    assert!(t.contains(&e.add(p, q).unwrap()));
                }
            }
        }
    }
}
