//! Canonical height of an endomorphism of P¹ over ℚ.
//!
//! For a primitive lift `z` of a rational point and a homogeneous pair `Φ` of degree
//! `d`,
//!
//! ```text
//! ĥ(z) = h(z) + Σ_{n≥0} d^-(n+1) Σ_v δ_v(Φⁿ z),   δ_v(w) = log‖Φ(w)‖_v − d·log‖w‖_v.
//! ```
//!
//! `δ_p` vanishes unless `p` divides the resultant; there it is tracked exactly modulo
//! a power of `p`. `δ_∞` is evaluated on a fixed-point integer copy of the orbit
//! whose precision grows with the number of steps. The terms beyond the last computed one are bounded by the range of
//! `Σ_v δ_v`, which yields the enclosure.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::poly::{IntPoly, QPoly};
use crate::numeric::primes::factor;
use crate::numeric::rational::{log_abs, log_abs_approx, log_prime, rat_to_f64, Int, Rat};
use crate::numeric::real::{RealApprox, ULP};

/// Iterations never exceed this, whatever the tolerance.
const MAX_STEPS: usize = 200;

/// A degree-`d` map `[X:Y] ↦ [F(X,Y) : G(X,Y)]` with integer coefficients.
#[derive(Debug, Clone)]
pub struct HomogeneousMap {
    /// `F(x, 1)`.
    pub f: IntPoly,
    /// `G(x, 1)`.
    pub g: IntPoly,
    pub degree: usize,
    pub resultant: Int,
    bad_primes: Vec<(u64, u32)>,
    /// Upper bound for `δ_∞` on the unit sphere of the max norm.
    log_upper: f64,
    /// Lower bound for `δ_∞` is `−log_lower_inf`.
    log_lower_inf: f64,
}

impl HomogeneousMap {
    pub fn new(f: IntPoly, g: IntPoly, degree: usize) -> Result<Self> {
        if degree < 2 || f.degree() > degree || g.degree() > degree {
            return Err(Error::input("a dynamical pair needs degree at least 2 and matching forms"));
        }
        let resultant = IntPoly::homogeneous_resultant(&f, degree, &g, degree);
        if resultant.is_zero() {
            return Err(Error::input("the forms share a root; the map is degenerate"));
        }
        let mut bad_primes = Vec::new();
        for (p, e) in factor(&resultant) {
            let p = p
                .to_u64()
                .ok_or_else(|| Error::precision(format!("resultant prime {p} exceeds 64 bits")))?;
            bad_primes.push((p, e));
        }
        let sum = |p: &IntPoly| -> f64 { p.coeffs().iter().map(|c| rat_to_f64(&Rat::from_integer(c.abs()))).sum() };
        let log_upper = (sum(&f).max(sum(&g)) * (1.0 + 8.0 * ULP)).ln();
        let log_lower_inf = Self::bezout_bound(&f, &g, degree)?.ln();
        Ok(HomogeneousMap { f, g, degree, resultant, bad_primes, log_upper, log_lower_inf })
    }

    /// `S` with `max(|F|, |G|)(w) ≥ 1/S` whenever `‖w‖_∞ = 1`, from the Bezout
    /// identities `uF + vG = 1` in both affine charts.
    fn bezout_bound(f: &IntPoly, g: &IntPoly, d: usize) -> Result<f64> {
        let chart = |f: &IntPoly, g: &IntPoly| -> Result<f64> {
            let (gcd, u, v) = f.to_qpoly().ext_gcd(&g.to_qpoly());
            if gcd.degree() > 0 {
                return Err(Error::input("the forms share an affine root"));
            }
            Ok(u.abs_sum_upper() + v.abs_sum_upper())
        };
        let rev = |p: &IntPoly| -> IntPoly { IntPoly::new((0..=d).map(|i| p.coeff(d - i)).collect()) };
        Ok(chart(f, g)?.max(chart(&rev(f), &rev(g))?).max(1.0))
    }

    /// Primes dividing the resultant with their exponents.
    pub fn bad_primes(&self) -> &[(u64, u32)] {
        &self.bad_primes
    }

    /// The pair as rational functions in the affine coordinate.
    pub fn forms(&self) -> (QPoly, QPoly) {
        (self.f.to_qpoly(), self.g.to_qpoly())
    }

    /// Lower bound `−L` for `Σ_v δ_v`, returned as `L ≥ 0`.
    pub fn one_step_loss(&self) -> f64 {
        self.log_lower_inf + log_abs(&self.resultant)
    }

    /// `C` with `|ĥ − h| ≤ C` on all of P¹(ℚ).
    pub fn height_constant(&self) -> f64 {
        self.one_step_loss().max(self.log_upper.max(0.0)) / (self.degree as f64 - 1.0)
    }

    /// Heights above this strictly increase under the map: the one-step bound gives
    /// `h(φ(α)) ≥ d·h(α) − L`, and `C + 1 > L/(d − 1)`.
    pub fn escape_threshold(&self) -> f64 {
        self.height_constant() + 1.0
    }

    /// Image of a primitive integer pair, again primitive.
    pub fn apply_pair(&self, a: &Int, b: &Int) -> (Int, Int) {
        let fa = self.f.eval_homogeneous(self.degree, a, b);
        let ga = self.g.eval_homogeneous(self.degree, a, b);
        let c = fa.gcd(&ga);
        (fa / &c, ga / &c)
    }

    /// `φ(α)` on P¹(ℚ), with `None` standing for ∞.
    pub fn apply(&self, alpha: Option<&Rat>) -> Option<Rat> {
        let (a, b) = to_pair(alpha);
        from_pair(self.apply_pair(&a, &b))
    }

    /// Canonical height of `α ∈ P¹(ℚ)` (`None` is ∞) with absolute error at most
    /// `eps`.
    pub fn canonical_height(&self, alpha: Option<&Rat>, eps: f64) -> Result<RealApprox> {
        if !(eps > 0.0) {
            return Err(Error::input("tolerance must be positive"));
        }
        let (a, b) = to_pair(alpha);
        let d = self.degree as f64;
        let range = self.log_upper + self.one_step_loss();
        let mut steps = 4;
        while range / ((d - 1.0) * d.powi(steps as i32)) > eps / 4.0 {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::precision("tail bound does not reach the tolerance"));
            }
        }
        let h0 = if a.is_zero() || b.is_zero() {
            RealApprox::ZERO
        } else {
            let m = a.abs().max(b.abs());
            if m.is_one() {
                RealApprox::ZERO
            } else {
                log_abs_approx(&m)
            }
        };
        let mut total = h0 + self.archimedean_sum(&a, &b, steps, eps);
        for &(p, e) in &self.bad_primes {
            total = total + self.nonarchimedean_sum(&a, &b, p, e, steps)?;
        }
        // Σ_v δ_v lies in [−L, U]; the remaining weights sum to 1/((d−1)dⁿ)
        let w = 1.0 / ((d - 1.0) * d.powi(steps as i32));
        let (lo, hi) = (-self.one_step_loss() * w, self.log_upper * w);
        let tail = RealApprox::new(0.5 * (lo + hi), 0.5 * (hi - lo) * (1.0 + 8.0 * ULP));
        let out = total + tail;
        if out.error > eps {
            return Err(Error::precision(format!(
                "archimedean iteration lost accuracy (error {:.2e} above {eps:.1e})",
                out.error
            )));
        }
        Ok(out)
    }

    /// `Σ_{n<N} d^-(n+1) δ_∞(zₙ)`, following the orbit in fixed point with `P`-bit
    /// integer vectors. Truncation perturbs the projective point by at most `2^(1−P)`
    /// per step, and one step of the map expands such perturbations by at most
    /// `L = 2·d·U·S`, where `U` bounds the coefficient sums and `1/S` bounds
    /// `max(|F|, |G|)` from below on the unit sphere.
    fn archimedean_sum(&self, a: &Int, b: &Int, steps: usize, eps: f64) -> RealApprox {
        let d = self.degree as f64;
        let lip = 2.0 * d * self.log_upper.exp() * self.log_lower_inf.exp();
        let lip_log2 = lip.max(2.0).log2();
        let bits = ((steps as f64 + 1.0) * lip_log2 + lip_log2 + (8.0 / eps).log2() + 4.0).ceil().max(64.0) as u64;
        let (mut x, mut y) = (a.clone(), b.clone());
        let mut drift_log2 = rescale(&mut x, &mut y, bits);
        let mut sum = RealApprox::ZERO;
        let mut weight = 1.0 / d;
        for _ in 0..steps {
            let fx = self.f.eval_homogeneous(self.degree, &x, &y);
            let gy = self.g.eval_homogeneous(self.degree, &x, &y);
            let top = if fx.abs() >= gy.abs() { fx.abs() } else { gy.abs() };
            let norm = if x.abs() >= y.abs() { x.abs() } else { y.abs() };
            let delta = log_abs_approx(&top) - log_abs_approx(&norm) * d;
            // the exact orbit point is within 2^drift of the computed one
            let perturb = if drift_log2 > -1000.0 { lip * drift_log2.exp2() } else { 0.0 };
            sum = sum + delta.with_extra_error(perturb) * weight;
            weight /= d;
            x = fx;
            y = gy;
            let fresh = rescale(&mut x, &mut y, bits);
            drift_log2 = log2_add(drift_log2 + lip_log2, fresh);
        }
        sum
    }

    /// `Σ_{n<N} d^-(n+1) δ_p(zₙ)`, exact.
    fn nonarchimedean_sum(&self, a: &Int, b: &Int, p: u64, e: u32, steps: usize) -> Result<RealApprox> {
        let d = self.degree as f64;
        // each step loses at most v_p(Res) digits
        let mut prec = steps as u32 * e + 2;
        for _ in 0..4 {
            match self.padic_losses(a, b, p, prec, steps) {
                Some(losses) => {
                    let mut weight = 1.0 / d;
                    let mut acc = 0.0f64;
                    for t in losses {
                        acc += t as f64 * weight;
                        weight /= d;
                    }
                    let lp = log_prime(p);
                    return Ok(-(lp * acc).with_extra_error(ULP * acc));
                }
                None => prec *= 2,
            }
        }
        Err(Error::precision(format!("{p}-adic precision exhausted")))
    }

    /// Valuations `t_n = min(v_p F(zₙ), v_p G(zₙ))`, or `None` if `prec` digits ran out.
    fn padic_losses(&self, a: &Int, b: &Int, p: u64, prec: u32, steps: usize) -> Option<Vec<u32>> {
        let bp = Int::from(p);
        let mut k = prec;
        let mut modulus = bp.pow(k);
        let mut x = a.mod_floor(&modulus);
        let mut y = b.mod_floor(&modulus);
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            let fx = self.f.eval_homogeneous(self.degree, &x, &y).mod_floor(&modulus);
            let gy = self.g.eval_homogeneous(self.degree, &x, &y).mod_floor(&modulus);
            let t = val_mod(&fx, &bp, k).min(val_mod(&gy, &bp, k));
            if t >= k {
                return None;
            }
            let scale = bp.pow(t);
            k -= t;
            modulus = bp.pow(k);
            x = (fx / &scale).mod_floor(&modulus);
            y = (gy / &scale).mod_floor(&modulus);
            out.push(t);
        }
        Some(out)
    }
}

/// Primitive integer pair for a point of P¹(ℚ).
pub fn to_pair(alpha: Option<&Rat>) -> (Int, Int) {
    match alpha {
        None => (Int::one(), Int::zero()),
        Some(r) => (r.numer().clone(), r.denom().clone()),
    }
}

pub fn from_pair((a, b): (Int, Int)) -> Option<Rat> {
    if b.is_zero() {
        None
    } else {
        Some(Rat::new(a, b))
    }
}

/// Valuation of a residue modulo `p^k`, capped at `k`.
fn val_mod(x: &Int, p: &Int, k: u32) -> u32 {
    if x.is_zero() {
        return k;
    }
    let mut v = 0;
    let mut m = x.clone();
    while v < k {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    v
}

/// Scale `(x, y)` so that the larger entry has exactly `bits` bits, truncating if it
/// had more. Returns `log2` of the relative perturbation (−∞ when exact).
fn rescale(x: &mut Int, y: &mut Int, bits: u64) -> f64 {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{frac, rat, weil_height_rational};

    fn square_map() -> HomogeneousMap {
        // x ↦ x², resultant 1
        HomogeneousMap::new(IntPoly::from_i64(&[0, 0, 1]), IntPoly::from_i64(&[1]), 2).unwrap()
    }

    #[test]
    fn power_map_height_is_weil_height() {
        let m = square_map();
        for x in [frac(3, 5), rat(7), frac(-22, 9), rat(1), rat(0)] {
            let h = m.canonical_height(Some(&x), 1e-10).unwrap();
            let w = weil_height_rational(&x);
            assert!(h.close_to(&w, 1e-10), "{x}: {h} vs {w}");
        }
        assert!(m.canonical_height(None, 1e-10).unwrap().contains(0.0));
    }

    #[test]
    fn functional_equation_with_bad_primes() {
        // x ↦ (x² − 2)/(3x) style map with nontrivial resultant
        let m = HomogeneousMap::new(IntPoly::from_i64(&[-2, 0, 5]), IntPoly::from_i64(&[0, 6]), 2).unwrap();
        assert!(!m.bad_primes().is_empty());
        for x in [frac(1, 2), rat(4), frac(-7, 3), frac(10, 11)] {
            let h = m.canonical_height(Some(&x), 1e-9).unwrap();
            let fx = m.apply(Some(&x));
            let hf = m.canonical_height(fx.as_ref(), 1e-9).unwrap();
            assert!((hf.value - 2.0 * h.value).abs() < 3e-9, "{x}: {hf} vs 2·{h}");
            let w = weil_height_rational(&x);
            assert!((h.value - w.value).abs() <= m.height_constant() + 1e-9);
        }
    }

    #[test]
    fn escape_threshold_is_sound_on_samples() {
        let m = HomogeneousMap::new(IntPoly::from_i64(&[-2, 0, 5]), IntPoly::from_i64(&[0, 6]), 2).unwrap();
        let b = m.escape_threshold();
        for n in 1..200i64 {
            let x = frac(n * n * 1_000_003 + 17, 3 * n + 1);
            let h = weil_height_rational(&x).value;
            if h > b {
                let hf = weil_height_rational(&m.apply(Some(&x)).unwrap()).value;
                assert!(hf > h);
            }
        }
    }

    #[test]
    fn degenerate_pair_rejected() {
        assert!(HomogeneousMap::new(IntPoly::from_i64(&[0, 1]), IntPoly::from_i64(&[0, 0, 1]), 2).is_err());
    }
}
