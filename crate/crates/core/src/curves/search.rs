//! Exhaustive search for rational points of bounded height.

use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};

use super::point::CurvePoint;
use super::weierstrass::WeierstrassCurve;
use crate::numeric::rational::{int_sqrt_exact, Int, Rat};

/// `y² = n³ + A·n·d⁴ + B·d⁶`, in machine integers when they suffice.
fn numerator_square(n: i64, d: i64, a: &Int, b: &Int, small: Option<(i128, i128)>) -> Option<Int> {
    if let Some((a, b)) = small {
        let (n, d) = (n as i128, d as i128);
        let d2 = d * d;
        let v = n
            .checked_mul(n)
            .and_then(|v| v.checked_mul(n))
            .zip(a.checked_mul(n).and_then(|v| v.checked_mul(d2 * d2)))
            .zip(b.checked_mul(d2 * d2 * d2))
            .and_then(|((x, y), z)| x.checked_add(y)?.checked_add(z));
        if let Some(v) = v {
            if v < 0 {
                return None;
            }
            let r = v.sqrt();
            return (r * r == v).then(|| Int::from(r));
        }
    }
    let (n, d) = (Int::from(n), Int::from(d));
    let d2 = &d * &d;
    let v = &n * &n * &n + a * &n * &d2 * &d2 + b * &d2 * &d2 * &d2;
    int_sqrt_exact(&v)
}

/// All affine rational points with `h(x) ≤ h_max` on the integral short model of `E`
/// (where `x = n/d²` in lowest terms), returned in the coordinates of `E`.
pub fn rational_point_search(e: &WeierstrassCurve, h_max: f64) -> Vec<CurvePoint> {
    if h_max < 0.0 {
        return Vec::new();
    }
    let (short, iso) = e.integral_short_model();
    let back = iso.inverse();
    let a = short.a4.to_integer();
    let b = short.a6.to_integer();
    let small = a.to_i128().zip(b.to_i128());
    // h(n/d²) = log max(|n|, d²) <= h_max; the float bound is nudged so that boundary
    // values are never dropped, and each candidate is then checked exactly
    let x_max = (h_max.exp() * (1.0 + 1e-12)).floor() as i64;
    let mut out = Vec::new();
    let mut d = 1i64;
    while d * d <= x_max {
        for n in -x_max..=x_max {
            if n.gcd(&d) != 1 {
                continue;
            }
            if n.abs().max(d * d) as f64 > h_max.exp() * (1.0 + 1e-12) {
                continue;
            }
            if let Some(m) = numerator_square(n, d, &a, &b, small) {
                let x = Rat::new(n.into(), (d * d).into());
                let y = Rat::new(m.clone(), (d * d * d).into());
                out.push(CurvePoint::rational(x.clone(), y.clone()));
                if !m.is_zero() {
                    out.push(CurvePoint::rational(x, -y));
                }
            }
        }
        d += 1;
    }
    out.iter().map(|p| p.map(&back)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_search() {
        let e = WeierstrassCurve::short_i64(-2, 0).unwrap();
        let pts = rational_point_search(&e, 1.0);
        for p in [CurvePoint::from_i64(-1, 1), CurvePoint::from_i64(-1, -1), CurvePoint::from_i64(0, 0)] {
            assert!(pts.contains(&p), "{p}");
        }
        assert!(pts.iter().all(|p| e.contains(p)));
    }

    #[test]
    fn matches_brute_force_grid() {
        // y^2 = x^3 + 7: compare with a direct rational-substitution oracle
        let e = WeierstrassCurve::short_i64(0, 7).unwrap();
        let pts = rational_point_search(&e, 2.0);
        let mut oracle = Vec::new();
        for d in 1..=2i64 {
            for n in -7..=7i64 {
                if n.gcd(&d) != 1 || n.abs().max(d * d) as f64 > 2f64.exp() {
                    continue;
                }
                let x = Rat::new(n.into(), (d * d).into());
                if let Some(y) = e.rational_y_short(&x) {
                    oracle.push(CurvePoint::rational(x.clone(), y.clone()));
                    if !y.is_zero() {
                        oracle.push(CurvePoint::rational(x, -y));
                    }
                }
            }
        }
        assert_eq!(pts, oracle);
    }

    #[test]
    fn long_models_map_back() {
        let e = WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let pts = rational_point_search(&e, 6.0);
        assert!(pts.iter().all(|p| e.contains(p)));
        assert!(pts.contains(&CurvePoint::from_i64(0, 0)));
    }
}
