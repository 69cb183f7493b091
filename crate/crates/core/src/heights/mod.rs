//! Néron–Tate heights, local heights and the inequalities over `Λ_s = {iQ : i ≤ s}`.
//!
//! `ĥ_E(P) = ½ lim 4⁻ⁿ h(x([2]ⁿP))` is computed on the integral short model as half the
//! canonical height of `x(P)` under the Lattès map, which is the same limit.

pub mod engine;
pub mod local;
pub mod pairing;

use crate::curves::{is_torsion, CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::lattes::lattes_from_curve;
use crate::numeric::real::RealApprox;

pub use local::{
    decomposition, local_height_arch, local_height_nonarch_e0, Decomposition, LocalHeightValue, Place,
};
pub use pairing::{elkies_check, hoehe1_check, pairing_sum, ElkiesReport, HoeheRow, LambdaSet, PairingReport};

/// `ĥ_E(P)` with absolute error at most `eps`; exactly 0 for torsion points.
pub fn canonical_height(e: &WeierstrassCurve, p: &CurvePoint, eps: f64) -> Result<RealApprox> {
    if !(eps > 0.0) {
        return Err(Error::input("tolerance must be positive"));
    }
    if !e.contains(p) {
        return Err(Error::input(format!("{p} is not on {e}")));
    }
    if p.is_infinity() {
        return Ok(RealApprox::ZERO);
    }
    let (x, _) = p
        .as_rational()
        .ok_or_else(|| Error::input("canonical_height takes rational points"))?;
    if is_torsion(e, p) {
        return Ok(RealApprox::ZERO);
    }
    let (short, iso) = e.integral_short_model();
    let f = lattes_from_curve(&short)?;
    let h = f.homogeneous().canonical_height(Some(&iso.map_x(&x)), 2.0 * eps)?;
    Ok(h * 0.5)
}

/// `C(E)` with `|ĥ(P) − ½h(x(P))| ≤ C(E)`, where `x` is the coordinate on the integral
/// short model returned by [`WeierstrassCurve::integral_short_model`].
pub fn height_difference_bound(e: &WeierstrassCurve) -> Result<f64> {
    let (short, _) = e.integral_short_model();
    Ok(0.5 * lattes_from_curve(&short)?.height_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::rational_torsion;
    use crate::numeric::rational::weil_height_rational;

    #[test]
    fn rank_one_generator() {
        let e = WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let h = canonical_height(&e, &CurvePoint::from_i64(0, 0), 1e-10).unwrap();
        // twice this is the regulator 0.0511114082 in the normalisation ĥ ≈ h(x)
        assert!((h.value - 0.0255557041).abs() < 1e-9, "{h}");
    }

    #[test]
    fn quadraticity() {
        let e = WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let p = CurvePoint::from_i64(0, 0);
        let eps = 1e-9;
        let h = canonical_height(&e, &p, eps).unwrap();
        for m in 2..=8i64 {
            let hm = canonical_height(&e, &e.scalar_mul(m, &p), eps).unwrap();
            assert!((hm.value - (m * m) as f64 * h.value).abs() <= 2.0 * eps * (m * m) as f64, "m = {m}");
        }
    }

    #[test]
    fn torsion_is_zero() {
        let e = WeierstrassCurve::short_i64(0, 1).unwrap();
        for t in rational_torsion(&e) {
            assert_eq!(canonical_height(&e, &t, 1e-9).unwrap(), RealApprox::ZERO);
        }
    }

    #[test]
    fn difference_bound_holds() {
        let e = WeierstrassCurve::short_i64(-2, 0).unwrap();
        let c = height_difference_bound(&e).unwrap();
        let p = CurvePoint::from_i64(-1, 1);
        for m in 1..=6 {
            let q = e.scalar_mul(m, &p);
            let h = canonical_height(&e, &q, 1e-9).unwrap().value;
            let x = q.as_rational().unwrap().0;
            assert!((h - 0.5 * weil_height_rational(&x).value).abs() <= c);
        }
    }
}
