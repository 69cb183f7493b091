//! Local heights in the normalisation `ĥ = Σ_v λ_v` with
//! `λ_p(Q) = (½·max(0, −ord_p x(Q)) + ord_p(Δ_min)/12)·log p` for `Q` in `E_0` at `p`.
//!
//! At ∞ the height comes from Tate's series on a model shifted so that every real
//! point has `x ≥ 2`:
//!
//! ```text
//! λ_∞(P) = ½ log x(P) + ⅛ Σ_{n≥0} 4⁻ⁿ log z([2]ⁿP) − (1/12) log|Δ|,
//! z = 1 − b4 t² − 2 b6 t³ − b8 t⁴,  t = 1/x.
//! ```

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::canonical_height;
use crate::curves::{reduction_type, CurvePoint, Isomorphism, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::numeric::poly::IntPoly;
use crate::numeric::primes::prime_divisors_u64;
use crate::numeric::rational::{log_abs_approx, log_prime, ord_unchecked, rat_to_f64, Int, Rat, Valuation};
use crate::numeric::real::{RealApprox, ULP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Place {
    Infinite,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalHeightValue {
    pub place: Place,
    pub value: RealApprox,
    /// Set for non-archimedean values computed on `E_0`.
    pub on_e0: bool,
}

/// `λ_p(Q)` on the `p`-minimal model, for `Q` with nonsingular reduction there.
pub fn local_height_nonarch_e0(e: &WeierstrassCurve, q: &CurvePoint, p: u64) -> Result<LocalHeightValue> {
    if q.is_infinity() {
        return Err(Error::input("the local height is not defined at O"));
    }
    let red = reduction_type(e, p)?;
    let min = e.transform(&red.minimal_transform);
    let (x, y) = q
        .map(&red.minimal_transform)
        .as_rational()
        .ok_or_else(|| Error::input("local heights take rational points"))?;
    let pole = match ord_unchecked(&x, p) {
        Valuation::Finite(v) if v < 0 => -v,
        _ => 0,
    };
    if pole == 0 && is_singular_mod_p(&min, &x, &y, p) {
        return Err(Error::precondition(format!(
            "({x}, {y}) reduces to the singular point mod {p}; multiply by the component index first"
        )));
    }
    let units = Rat::new(Int::from(6 * pole + red.ord_min_disc as i64), Int::from(12));
    let value = log_prime(p) * rat_to_f64(&units);
    Ok(LocalHeightValue { place: Place::Prime(p), value: value.with_extra_error(ULP * value.value), on_e0: true })
}

fn is_singular_mod_p(e: &WeierstrassCurve, x: &Rat, y: &Rat, p: u64) -> bool {
    let fy = Rat::from_integer(Int::from(2)) * y + &e.a1 * x + &e.a3;
    let fx = Rat::from_integer(Int::from(3)) * x * x + Rat::from_integer(Int::from(2)) * &e.a2 * x + &e.a4
        - &e.a1 * y;
    ord_unchecked(&fy, p).is_positive() && ord_unchecked(&fx, p).is_positive()
}

/// Tate's series data on the shifted model.
struct TateSeries {
    /// `z(t)` and `w(t)` with `t([2]P) = w/z`, as homogeneous quartics in `(1, t)`.
    z: IntPoly,
    w: IntPoly,
    /// Shift to the model where real points have `x ≥ 2`.
    shift_iso: Isomorphism,
    log_disc: RealApprox,
    /// `log z` lies in `[−log_s, log_zmax]` on the real locus.
    log_s: f64,
    log_zmax: f64,
    lip: f64,
    lip_log: f64,
}

impl TateSeries {
    fn new(e: &WeierstrassCurve) -> Result<Self> {
        if !e.is_integral() {
            return Err(Error::input("Tate's series is set up on an integral model"));
        }
        // every real root of 4x³ + b2x² + 2b4x + b6 exceeds −(1 + max |c_i / 4|)
        let bound = [&e.b2, &(&e.b4 * Rat::from_integer(Int::from(2))), &e.b6]
            .iter()
            .map(|c| (c.abs() / Rat::from_integer(Int::from(4))).ceil().to_integer())
            .max()
            .unwrap_or_else(Int::zero);
        let shift = bound + Int::from(3);
        let shift_iso = Isomorphism { u: Rat::one(), r: -Rat::from_integer(shift), s: Rat::zero(), t: Rat::zero() };
        let m = e.transform(&shift_iso);
        let int = |r: &Rat| r.to_integer();
        let (b2, b4, b6, b8) = (int(&m.b2), int(&m.b4), int(&m.b6), int(&m.b8));
        let z = IntPoly::new(vec![Int::one(), Int::zero(), -&b4, -(&b6 * Int::from(2)), -&b8]);
        let w = IntPoly::new(vec![Int::zero(), Int::from(4), b2, &b4 * Int::from(2), b6]);
        let (g, u, v) = z.to_qpoly().ext_gcd(&w.to_qpoly());
        if g.degree() > 0 {
            return Err(Error::input("duplication forms are not coprime"));
        }
        let s_bound = (u.abs_sum_upper() + v.abs_sum_upper()).max(1.0);
        let abs_sum = |p: &IntPoly| -> f64 { p.coeffs().iter().map(|c| rat_to_f64(&Rat::from_integer(c.abs()))).sum() };
        let dsum = |p: &IntPoly| -> f64 {
            abs_sum(&IntPoly::new(p.coeffs().iter().enumerate().map(|(i, c)| c * Int::from(i)).collect()))
        };
        let zmax = abs_sum(&z) * (1.0 + 8.0 * ULP);
        // t ↦ w/z is Lipschitz on [0, 1] with constant (w'·z + w·z')/z² ≤ S²(w'zmax + wmax z')
        let lip = (s_bound * s_bound * (dsum(&w) * zmax + abs_sum(&w) * dsum(&z))).max(2.0);
        let lip_log = (s_bound * dsum(&z)).max(1.0);
        let disc = m.disc.to_integer();
        Ok(TateSeries {
            z,
            w,
            shift_iso,
            log_disc: log_abs_approx(&disc),
            log_s: s_bound.ln(),
            log_zmax: zmax.ln(),
            lip,
            lip_log,
        })
    }

    /// `λ_∞` at a real point with `x ≥ 2` on the shifted model.
    fn evaluate(&self, x: &Rat, eps: f64) -> Result<RealApprox> {
        let range = self.log_s + self.log_zmax;
        let mut steps = 2usize;
        // ⅛ Σ_{n≥N} 4⁻ⁿ · range/2 ≤ eps/4
        while range / 12.0 / 4f64.powi(steps as i32 - 1) > eps / 4.0 {
            steps += 1;
            if steps > 200 {
                return Err(Error::precision("Tate series tail does not reach the tolerance"));
            }
        }
        let lip_log2 = self.lip.log2();
        let bits = ((steps as f64 + 1.0) * lip_log2 + self.lip_log.log2() + (8.0 / eps).log2() + 4.0)
            .ceil()
            .max(64.0) as u64;
        // homogeneous coordinates (X, T) with t = T/X
        let (mut big_x, mut big_t) = (x.numer().clone(), x.denom().clone());
        let mut drift = fixed_point(&mut big_x, &mut big_t, bits);
        let mut sum = RealApprox::ZERO;
        let mut weight = 0.125;
        for _ in 0..steps {
            let zx = self.z.eval_homogeneous(4, &big_t, &big_x);
            let wx = self.w.eval_homogeneous(4, &big_t, &big_x);
            if zx.is_zero() || !zx.is_positive() {
                return Err(Error::precision("Tate series left the real locus"));
            }
            let log_z = log_abs_approx(&zx) - log_abs_approx(&big_x) * 4.0;
            let perturb = if drift > -1000.0 { self.lip_log * drift.exp2() } else { 0.0 };
            sum = sum + log_z.with_extra_error(perturb) * weight;
            weight *= 0.25;
            big_x = zx;
            big_t = wx;
            let fresh = fixed_point(&mut big_x, &mut big_t, bits);
            drift = log2_add(drift + lip_log2, fresh);
        }
        let w_tail = weight * 4.0 / 3.0;
        let (lo, hi) = (-self.log_s * w_tail, self.log_zmax * w_tail);
        let tail = RealApprox::new(0.5 * (lo + hi), 0.5 * (hi - lo));
        let half_log_x = log_abs_approx(x.numer()) * 0.5 - log_abs_approx(x.denom()) * 0.5;
        Ok(half_log_x + sum + tail - self.log_disc * (1.0 / 12.0))
    }
}

fn fixed_point(x: &mut Int, y: &mut Int, bits: u64) -> f64 {
    let have = x.bits().max(y.bits());
    if have <= bits {
        let s = bits - have;
        *x <<= s;
        *y <<= s;
        f64::NEG_INFINITY
    } else {
        let s = have - bits;
        *x >>= s;
        *y >>= s;
        2.0 - bits as f64
    }
}

fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        hi
    } else {
        hi + (1.0 + (lo - hi).exp2()).log2()
    }
}

/// Archimedean local height of a rational affine point.
pub fn local_height_arch(e: &WeierstrassCurve, p: &CurvePoint, eps: f64) -> Result<LocalHeightValue> {
    if p.is_infinity() {
        return Err(Error::input("the local height is not defined at O"));
    }
    if !e.contains(p) {
        return Err(Error::input(format!("{p} is not on {e}")));
    }
    // the local height is model independent; work on an integral model
    let (short, iso) = e.integral_short_model();
    let series = TateSeries::new(&short)?;
    let moved = p.map(&iso).map(&series.shift_iso);
    let (x, _) = moved
        .as_rational()
        .ok_or_else(|| Error::input("archimedean heights are computed for rational points"))?;
    let value = series.evaluate(&x, eps)?;
    Ok(LocalHeightValue { place: Place::Infinite, value, on_e0: false })
}

/// Local decomposition of `ĥ` at `Q = N·P`, `N` the lcm of the Tamagawa numbers.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub multiplier: u64,
    pub archimedean: LocalHeightValue,
    pub nonarchimedean: Vec<LocalHeightValue>,
    /// `Σ_v λ_v(Q) / N²`.
    pub local_sum: RealApprox,
    pub canonical: RealApprox,
}

impl Decomposition {
    pub fn agrees(&self, tol: f64) -> bool {
        self.local_sum.close_to(&self.canonical, tol)
    }
}

/// Primes where `λ_p(Q)` can be nonzero: those dividing the discriminant, the
/// coefficient denominators or the denominator of `x(Q)`.
fn relevant_primes(e: &WeierstrassCurve, q: &CurvePoint) -> Vec<u64> {
    let mut n = e.disc.numer() * e.disc.denom();
    for a in e.a_invariants() {
        n *= a.denom();
    }
    if let Some((x, _)) = q.as_rational() {
        n *= x.denom();
    }
    prime_divisors_u64(&n)
}

pub fn decomposition(e: &WeierstrassCurve, p: &CurvePoint, eps: f64) -> Result<Decomposition> {
    let (ep, _) = e.integral_short_model();
    let mut n = 1u64;
    for q in prime_divisors_u64(&(ep.disc.numer().clone())) {
        n = n.lcm(&(reduction_type(e, q)?.tamagawa as u64));
    }
    let q = e.scalar_mul(n as i64, p);
    if q.is_infinity() {
        return Err(Error::input("the point is torsion"));
    }
    let arch = local_height_arch(e, &q, eps / 2.0)?;
    let mut nonarch = Vec::new();
    for prime in relevant_primes(e, &q) {
        nonarch.push(local_height_nonarch_e0(e, &q, prime)?);
    }
    let total: RealApprox = std::iter::once(arch.value).chain(nonarch.iter().map(|l| l.value)).sum();
    let n2 = (n * n) as f64;
    Ok(Decomposition {
        multiplier: n,
        archimedean: arch,
        nonarchimedean: nonarch,
        local_sum: total * (1.0 / n2),
        canonical: canonical_height(e, p, eps)?,
    })
}

/// `λ_∞(2P) − 4λ_∞(P) = −log|2y + a1x + a3| + ¼ log|Δ|`.
pub fn duplication_defect(e: &WeierstrassCurve, p: &CurvePoint) -> Result<RealApprox> {
    let (x, y) = p.as_rational().ok_or_else(|| Error::input("rational point expected"))?;
    let psi = Rat::from_integer(Int::from(2)) * &y + &e.a1 * &x + &e.a3;
    if psi.is_zero() {
        return Err(Error::input("2-torsion point"));
    }
    let log_psi = log_abs_approx(psi.numer()) - log_abs_approx(psi.denom());
    let log_d = log_abs_approx(e.disc.numer()) - log_abs_approx(e.disc.denom());
    Ok(-log_psi + log_d * 0.25)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::rational_torsion;

    fn curves() -> Vec<(WeierstrassCurve, CurvePoint)> {
        vec![
            (WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap(), CurvePoint::from_i64(0, 0)),
            (WeierstrassCurve::short_i64(-2, 0).unwrap(), CurvePoint::from_i64(-1, 1)),
            (WeierstrassCurve::from_i64([0, 1, 1, -2, 0]).unwrap(), CurvePoint::from_i64(0, 0)),
            (WeierstrassCurve::short_i64(0, 2).unwrap(), CurvePoint::from_i64(-1, 1)),
        ]
    }

    #[test]
    fn decomposition_matches_canonical_height() {
        for (e, p) in curves() {
            for m in 1..=3 {
                let q = e.scalar_mul(m, &p);
                let d = decomposition(&e, &q, 1e-9).unwrap();
                assert!(d.agrees(1e-7), "{e} {q}: {} vs {}", d.local_sum, d.canonical);
            }
        }
    }

    #[test]
    fn duplication_identity() {
        for (e, p) in curves() {
            let two = e.double(&p);
            let l1 = local_height_arch(&e, &p, 1e-10).unwrap().value;
            let l2 = local_height_arch(&e, &two, 1e-10).unwrap().value;
            let defect = duplication_defect(&e, &p).unwrap();
            assert!((l2 - l1 * 4.0).close_to(&defect, 1e-8), "{e}");
        }
    }

    #[test]
    fn torsion_points_have_finite_arch_height() {
        let e = WeierstrassCurve::short_i64(0, 1).unwrap();
        for t in rational_torsion(&e).into_iter().filter(|t| !t.is_infinity()) {
            assert!(local_height_arch(&e, &t, 1e-9).unwrap().value.value.is_finite());
        }
    }

    #[test]
    fn e0_precondition() {
        // 11a1: (5, 5) generates torsion of order 5 meeting the non-identity components at 11
        let e = WeierstrassCurve::from_i64([0, -1, 1, -10, -20]).unwrap();
        let q = CurvePoint::from_i64(5, 5);
        assert!(matches!(local_height_nonarch_e0(&e, &q, 11), Err(Error::Precondition(_))));
        assert!(local_height_nonarch_e0(&e, &CurvePoint::Infinity, 11).is_err());
    }

    #[test]
    fn literal_sign_breaks_decomposition() {
        // flipping the x-term sign, λ_p = (½ max(0, ord_p x) + ord_p Δ/12) log p, moves the
        // sum away from ĥ as soon as x has a nonzero valuation
        let (e, p) = curves().remove(1);
        let q = e.scalar_mul(2, &p);
        let d = decomposition(&e, &q, 1e-9).unwrap();
        let (x, _) = e.scalar_mul(d.multiplier as i64, &q).as_rational().unwrap();
        let mut literal = d.archimedean.value;
        for l in &d.nonarchimedean {
            let Place::Prime(pr) = l.place else { unreachable!() };
            let red = reduction_type(&e, pr).unwrap();
            let xm = red.minimal_transform.map_x(&x);
            let v = ord_unchecked(&xm, pr).finite().unwrap_or(0).max(0) as f64;
            literal = literal + log_prime(pr) * (0.5 * v + red.ord_min_disc as f64 / 12.0);
        }
        let n2 = (d.multiplier * d.multiplier) as f64;
        assert!(((literal * (1.0 / n2)).value - d.canonical.value).abs() > 1e-3);
    }
}
