//! The Lattès map `f` with `f(x(P)) = x([2]P)` on a short Weierstrass curve, its
//! canonical height, orbits and preimages.

pub mod sequence;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curves::{CurvePoint, QuadElt, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::heights::engine::HomogeneousMap;
use crate::numeric::poly::IntPoly;
use crate::numeric::rational::{common_denominator, weil_height_rational, Int, Rat};
use crate::numeric::real::RealApprox;

pub use sequence::{small_height_sequence, small_height_sequence_with, SeedCurve, SequenceLevel, SmallHeightSequence};

/// Points of P¹(ℚ); `None` is ∞.
pub type P1 = Option<Rat>;

/// Number of sampled points checked when a map is built.
const CONSTRUCTION_SAMPLES: usize = 100;

#[derive(Debug, Clone)]
pub struct LattesMap {
    pub numer: IntPoly,
    pub denom: IntPoly,
    pub source_curve: WeierstrassCurve,
    map: HomogeneousMap,
}

/// Build `f(x) = (x⁴ − 2Ax² − 8Bx + A²) / (4x³ + 4Ax + 4B)` with the content of the
/// pair removed, and check `f(x(P)) = x([2]P)` on sampled points over quadratic fields.
pub fn lattes_from_curve(e: &WeierstrassCurve) -> Result<LattesMap> {
    let (a, b) = e
        .short_coefficients()
        .ok_or_else(|| Error::input("the Lattès map is built from a short model y² = x³ + Ax + B"))?;
    let r = |n: i64| Rat::from_integer(Int::from(n));
    let numer = [&a * &a, r(-8) * &b, r(-2) * &a, r(0), r(1)];
    let denom = [r(4) * &b, r(4) * &a, r(0), r(4)];
    let den = common_denominator(numer.iter().chain(denom.iter()));
    let scale = |c: &Rat| (c * Rat::from_integer(den.clone())).to_integer();
    let mut n: Vec<Int> = numer.iter().map(scale).collect();
    let mut d: Vec<Int> = denom.iter().map(scale).collect();
    let content = n.iter().chain(d.iter()).fold(Int::zero(), |g, c| g.gcd(c));
    for c in n.iter_mut().chain(d.iter_mut()) {
        *c = &*c / &content;
    }
    let (numer, denom) = (IntPoly::new(n), IntPoly::new(d));
    let map = HomogeneousMap::new(numer.clone(), denom.clone(), 4)?;
    let f = LattesMap { numer, denom, source_curve: e.clone(), map };
    f.check_samples(CONSTRUCTION_SAMPLES)?;
    Ok(f)
}

impl LattesMap {
    pub fn degree(&self) -> usize {
        4
    }

    pub fn homogeneous(&self) -> &HomogeneousMap {
        &self.map
    }

    /// `f(α)`, with `None` for ∞.
    pub fn apply(&self, alpha: Option<&Rat>) -> P1 {
        self.map.apply(alpha)
    }

    /// `n`-fold iterate.
    pub fn iterate(&self, alpha: Option<&Rat>, n: usize) -> P1 {
        let mut cur = alpha.cloned();
        for _ in 0..n {
            cur = self.apply(cur.as_ref());
        }
        cur
    }

    /// `C_f` with `|ĥ_f − h| ≤ C_f`.
    pub fn height_constant(&self) -> f64 {
        self.map.height_constant()
    }

    /// `B_f = C_f + 1`: above it heights strictly increase along orbits.
    pub fn escape_threshold(&self) -> f64 {
        self.map.escape_threshold()
    }

    fn check_samples(&self, count: usize) -> Result<()> {
        let e = &self.source_curve;
        let (a, b) = e.short_coefficients().expect("short model");
        let mut rng = ChaCha8Rng::seed_from_u64(0x1a77e5);
        for _ in 0..count {
            let x = Rat::new(Int::from(rng.gen_range(-60i64..=60)), Int::from(rng.gen_range(1i64..=9)));
            let rhs = &x * &x * &x + &a * &x + &b;
            let p = CurvePoint::Affine { x: x.clone().into(), y: QuadElt::sqrt_of(&rhs) };
            let expect = match e.double(&p) {
                CurvePoint::Infinity => None,
                CurvePoint::Affine { x, .. } => Some(
                    x.as_rational()
                        .cloned()
                        .ok_or_else(|| Error::input("x([2]P) left the rationals"))?,
                ),
            };
            if self.apply(Some(&x)) != expect {
                return Err(Error::input(format!("Lattès map disagrees with doubling at x = {x}")));
            }
        }
        Ok(())
    }
}

/// `ĥ_f(α)` with absolute error at most `eps`; exactly 0 on certified preperiodic
/// points.
pub fn lattes_height(f: &LattesMap, alpha: Option<&Rat>, eps: f64) -> Result<RealApprox> {
    if let OrbitStatus::Preperiodic { .. } = is_preperiodic(f, alpha).status {
        return Ok(RealApprox::ZERO);
    }
    f.map.canonical_height(alpha, eps)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum OrbitStatus {
    /// `orbit[tail] = orbit[tail + cycle]`.
    Preperiodic { tail: usize, cycle: usize },
    /// The last iterate has height above the escape threshold.
    Escaping { height: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRecord {
    #[serde(serialize_with = "ser_p1")]
    pub start: P1,
    #[serde(serialize_with = "ser_p1_vec")]
    pub orbit: Vec<P1>,
    pub status: OrbitStatus,
}

fn p1_string(x: &P1) -> String {
    match x {
        None => "inf".to_string(),
        Some(r) => crate::numeric::rational::rat_to_string(r),
    }
}

fn ser_p1<S: serde::Serializer>(x: &P1, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p1_string(x))
}

fn ser_p1_vec<S: serde::Serializer>(xs: &[P1], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(p1_string))
}

fn p1_height(x: &P1) -> f64 {
    x.as_ref().map_or(0.0, |r| weil_height_rational(r).value)
}

/// Iterate exactly until a value repeats or the height passes `B_f`.
pub fn is_preperiodic(f: &LattesMap, alpha: Option<&Rat>) -> OrbitRecord {
    let threshold = f.escape_threshold();
    let mut orbit: Vec<P1> = vec![alpha.cloned()];
    loop {
        let last = orbit.last().expect("nonempty orbit");
        // the f64 logarithm is within 1e-12 of the truth; stay clear of the boundary
        let h = p1_height(last);
        if h > threshold + 1e-9 {
            return OrbitRecord { start: alpha.cloned(), orbit, status: OrbitStatus::Escaping { height: h } };
        }
        let next = f.apply(last.as_ref());
        if let Some(i) = orbit.iter().position(|v| *v == next) {
            let cycle = orbit.len() - i;
            orbit.push(next);
            return OrbitRecord {
                start: alpha.cloned(),
                orbit,
                status: OrbitStatus::Preperiodic { tail: i, cycle },
            };
        }
        orbit.push(next);
    }
}

/// The polynomial `numer − β·denom` cleared of denominators and content, whose roots
/// are `f⁻¹(β)`; the flag is set when its degree falls below 4.
pub fn preimage_polynomial(f: &LattesMap, beta: &Rat) -> (IntPoly, bool) {
    let (n, d) = (beta.numer(), beta.denom());
    let poly = f.numer.scale(d).sub(&f.denom.scale(n)).primitive();
    let degenerate = poly.degree() < 4;
    (poly, degenerate)
}

/// Rational roots of an integer polynomial (rational root theorem over the divisors
/// of the extreme coefficients).
pub fn rational_roots(poly: &IntPoly) -> Vec<Rat> {
    let q = poly.to_qpoly();
    let mut out = Vec::new();
    for (factor, _) in q.squarefree_decomposition() {
        out.extend(rational_roots_squarefree(&factor.to_int_poly()));
    }
    out.sort();
    out.dedup();
    out
}

fn rational_roots_squarefree(poly: &IntPoly) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut p = poly.clone();
    // strip the root 0
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(Rat::zero());
        p = IntPoly::new(p.coeffs()[zeros..].to_vec());
    }
    if p.degree() == 0 {
        return out;
    }
    let divs = |n: &Int| -> Vec<Int> {
        let n = n.abs();
        let mut v = Vec::new();
        for (q, e) in crate::numeric::primes::factor(&n) {
            let mut next = Vec::new();
            let base = if v.is_empty() { vec![Int::one()] } else { v.clone() };
            for d in &base {
                let mut m = d.clone();
                for _ in 0..=e {
                    next.push(m.clone());
                    m *= &q;
                }
            }
            v = next;
        }
        if v.is_empty() {
            v.push(Int::one());
        }
        v
    };
    let nums = divs(&p.coeff(0));
    let dens = divs(&p.lead());
    for a in &nums {
        for b in &dens {
            for sign in [1, -1] {
                let r = Rat::new(a * sign, b.clone());
                if p.eval_rat(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heights::canonical_height;
    use crate::numeric::rational::{frac, rat};

    fn curve() -> WeierstrassCurve {
        WeierstrassCurve::short_i64(-2, 0).unwrap()
    }

    #[test]
    fn construction_and_degree() {
        let f = lattes_from_curve(&curve()).unwrap();
        assert_eq!(f.numer.degree(), 4);
        assert_eq!(f.denom.degree(), 3);
        // 2-torsion x-coordinate goes to the pole
        assert_eq!(f.apply(Some(&rat(0))), None);
        assert_eq!(f.apply(Some(&rat(-1))), Some(frac(9, 4)));
        assert!(lattes_from_curve(&WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap()).is_err());
    }

    #[test]
    fn functional_equation_and_relation() {
        let e = curve();
        let f = lattes_from_curve(&e).unwrap();
        let eps = 1e-9;
        for alpha in [rat(-1), frac(9, 4), rat(3), frac(-5, 7)] {
            let h = lattes_height(&f, Some(&alpha), eps).unwrap();
            let h4 = lattes_height(&f, f.apply(Some(&alpha)).as_ref(), eps).unwrap();
            assert!((h4.value - 4.0 * h.value).abs() <= 2.0 * eps, "{alpha}");
        }
        let p = CurvePoint::from_i64(-1, 1);
        let he = canonical_height(&e, &p, eps).unwrap();
        let hf = lattes_height(&f, Some(&rat(-1)), eps).unwrap();
        assert!((hf.value - 2.0 * he.value).abs() <= 2.0 * eps);
    }

    #[test]
    fn orbits() {
        let f = lattes_from_curve(&WeierstrassCurve::short_i64(0, 1).unwrap()).unwrap();
        // (2, 3) has order 6 on y² = x³ + 1
        let rec = is_preperiodic(&f, Some(&rat(2)));
        assert!(matches!(rec.status, OrbitStatus::Preperiodic { .. }));
        assert_eq!(lattes_height(&f, Some(&rat(2)), 1e-9).unwrap(), RealApprox::ZERO);
        let g = lattes_from_curve(&curve()).unwrap();
        let rec = is_preperiodic(&g, Some(&rat(-1)));
        assert!(matches!(rec.status, OrbitStatus::Escaping { .. }));
        // ∞ is fixed
        let rec = is_preperiodic(&g, None);
        assert_eq!(rec.status, OrbitStatus::Preperiodic { tail: 0, cycle: 1 });
    }

    #[test]
    fn preimages() {
        let f = lattes_from_curve(&curve()).unwrap();
        let beta = frac(9, 4);
        let (poly, degenerate) = preimage_polynomial(&f, &beta);
        assert!(!degenerate);
        assert_eq!(poly.degree(), 4);
        let roots = rational_roots(&poly);
        assert!(roots.contains(&rat(-1)));
        for r in roots {
            assert_eq!(f.apply(Some(&r)), Some(beta.clone()));
        }
    }
}
