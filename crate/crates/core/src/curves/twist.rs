//! Quadratic-type twists `E_γ: y² = x³ + γ²A·x + γ³B` and the isomorphism
//! `g_γ: (x, y) ↦ (γx, γ√γ·y)`.

use num_traits::Zero;

use super::point::CurvePoint;
use super::quad::QuadElt;
use super::weierstrass::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::numeric::rational::Rat;

fn short_ab(e: &WeierstrassCurve) -> Result<(Rat, Rat)> {
    e.short_coefficients().ok_or_else(|| Error::input("twists are defined for short models"))
}

pub fn twist(e: &WeierstrassCurve, gamma: &Rat) -> Result<WeierstrassCurve> {
    if gamma.is_zero() {
        return Err(Error::input("twist parameter must be nonzero"));
    }
    let (a, b) = short_ab(e)?;
    WeierstrassCurve::short(gamma * gamma * a, gamma * gamma * gamma * b)
}

/// `x ↦ γx`.
pub fn twist_x(gamma: &Rat, x: &Rat) -> Result<Rat> {
    if gamma.is_zero() {
        return Err(Error::input("twist parameter must be nonzero"));
    }
    Ok(gamma * x)
}

/// `g_γ(P)`; the `y`-coordinate lives in ℚ(√γ) and must share a field with `y(P)`.
pub fn twist_point(e: &WeierstrassCurve, gamma: &Rat, p: &CurvePoint) -> Result<CurvePoint> {
    short_ab(e)?;
    if gamma.is_zero() {
        return Err(Error::input("twist parameter must be nonzero"));
    }
    match p {
        CurvePoint::Infinity => Ok(CurvePoint::Infinity),
        CurvePoint::Affine { x, y } => {
            let g = QuadElt::rational(gamma.clone());
            let scale = &g * &QuadElt::sqrt_of(gamma);
            scale.common_field(y)?;
            Ok(CurvePoint::Affine { x: &g * x, y: &scale * y })
        }
    }
}

/// For `E: y² = x³ + Ax` and `P = (√α, α^{1/4}·√(α + A))`, the twist parameter
/// `γ = √α·(α² + αA)` has `γ² = α·t²` with `t = α² + αA`, so `E_γ` is defined over ℚ.
/// Returns `(γ², g_γ(P))` with `g_γ(P) = (α·t, t²·√α)`.
pub fn fourth_power_twist_image(alpha: &Rat, a: &Rat) -> Result<(Rat, CurvePoint)> {
    if alpha.is_zero() {
        return Err(Error::input("alpha must be nonzero"));
    }
    let t = alpha * alpha + alpha * a;
    if t.is_zero() {
        return Err(Error::input("alpha + A must be nonzero"));
    }
    let gamma_sq = alpha * &t * &t;
    let sqrt_alpha = QuadElt::sqrt_of(alpha);
    let y = &QuadElt::rational(&t * &t) * &sqrt_alpha;
    Ok((gamma_sq, CurvePoint::Affine { x: QuadElt::rational(alpha * &t), y }))
}

/// `E_γ` for `E: y² = x³ + Ax` given `γ²` (only `γ²` enters when `B = 0`).
pub fn twist_by_square(a: &Rat, gamma_sq: &Rat) -> Result<WeierstrassCurve> {
    WeierstrassCurve::short(gamma_sq * a, Rat::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{frac, rat};

    #[test]
    fn identity_and_scaling() {
        let e = WeierstrassCurve::short_i64(-7, 10).unwrap();
        assert_eq!(twist(&e, &rat(1)).unwrap(), e);
        for p in [3i64, 5, 7] {
            let e = WeierstrassCurve::short_i64(-2 * p * p, 0).unwrap();
            assert_eq!(twist(&e, &frac(1, p)).unwrap(), WeierstrassCurve::short_i64(-2, 0).unwrap());
        }
        assert!(twist(&e, &rat(0)).is_err());
    }

    #[test]
    fn twisted_points_lie_on_twist() {
        let e = WeierstrassCurve::short_i64(-2, 0).unwrap();
        let p = CurvePoint::from_i64(-1, 1);
        for g in [rat(2), frac(-3, 5), rat(4), frac(1, 7)] {
            let et = twist(&e, &g).unwrap();
            let q = twist_point(&e, &g, &p).unwrap();
            assert!(et.contains(&q), "gamma = {g}");
            assert_eq!(et.j, e.j);
        }
    }

    #[test]
    fn fourth_power_projection() {
        // the corrected image (αt, t²√α) satisfies E_γ exactly; the point (αt, t) only
        // does when α·t² = 1
        for (alpha, a) in [(rat(2), rat(3)), (frac(3, 2), rat(-1)), (rat(5), frac(1, 4)), (rat(4), rat(1))] {
            let (g2, q) = fourth_power_twist_image(&alpha, &a).unwrap();
            let et = twist_by_square(&a, &g2).unwrap();
            assert!(et.contains(&q));
            let t = &alpha * &alpha + &alpha * &a;
            let literal = CurvePoint::rational(&alpha * &t, t.clone());
            assert_eq!(et.contains(&literal), &alpha * &t * &t == rat(1));
        }
    }
}
