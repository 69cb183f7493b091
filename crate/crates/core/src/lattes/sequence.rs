//! Preimage towers of small height over a bad-reduction twin.
//!
//! A seed curve `E_γ` with good reduction at `p` and a non-torsion point `P₀` is
//! twisted by `p` to `E: y² = x³ + p²A·x + p³B`, which has additive reduction at `p`.
//! Level 0 is `α₀ = p·x(P₀)`; level `n` collects the roots of `L_n = f^{-n}(α₀)` where
//! `f` is the Lattès map of `E`. The twist gives `f_E(p·x) = p·f_{E_γ}(x)`, so the roots
//! of `L_n(p·x)` are `x`-coordinates of halvings on `E_γ`, generate the same fields as
//! the roots of `L_n`, and that rescaled polynomial is what gets certified at `p`.

use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{lattes_from_curve, lattes_height, LattesMap};
use crate::curves::{reduction_type, twist, CurvePoint, ReductionType, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::numeric::poly::IntPoly;
use crate::numeric::primes::is_prime_u64;
use crate::numeric::rational::{Int, Rat};
use crate::numeric::real::RealApprox;
use crate::ramify::{unramified_certificate, RamCert};

#[derive(Debug, Clone)]
pub struct SeedCurve {
    pub curve: WeierstrassCurve,
    pub point: CurvePoint,
}

impl Default for SeedCurve {
    /// `y² = x³ − 2x` with `(−1, 1)`; good reduction away from 2.
    fn default() -> Self {
        SeedCurve {
            curve: WeierstrassCurve::short_i64(-2, 0).expect("nonsingular"),
            point: CurvePoint::from_i64(-1, 1),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceLevel {
    pub level: usize,
    /// `L_n`, constant term first.
    #[serde(serialize_with = "crate::io::poly_as_strings")]
    pub poly: IntPoly,
    pub degree: usize,
    /// `ĥ_f(level n) / ĥ_f(α₀) = 4⁻ⁿ`.
    #[serde(with = "crate::io::rat_serde")]
    pub ratio: Rat,
    pub hf: RealApprox,
    /// Naive height `log max |c_i|` of `L_n`.
    pub naive_height: f64,
    /// Certificate at `p` for the primitive part of `L_n(p·x)`.
    pub cert: RamCert,
    pub degenerate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallHeightSequence {
    pub p: u64,
    #[serde(serialize_with = "crate::io::curve_as_strings")]
    pub bad_curve: WeierstrassCurve,
    #[serde(with = "crate::io::rat_serde")]
    pub alpha0: Rat,
    /// `ĥ_f(α₀)`, computed directly.
    pub hf_alpha0: RealApprox,
    /// `2ĥ_{E_γ}(P₀)`.
    pub twice_seed_height: RealApprox,
    pub levels: Vec<SequenceLevel>,
    /// Set when a degenerate preimage polynomial cut the tower short.
    pub truncated: bool,
}

/// Levels `0..=levels` of the tower above `α₀` for the default seed.
pub fn small_height_sequence(p: u64, levels: usize) -> Result<SmallHeightSequence> {
    small_height_sequence_with(&SeedCurve::default(), p, levels, 1e-9)
}

pub fn small_height_sequence_with(seed: &SeedCurve, p: u64, levels: usize, eps: f64) -> Result<SmallHeightSequence> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::input(format!("{p} is not an odd prime")));
    }
    if !seed.curve.is_short() || !seed.curve.is_integral() {
        return Err(Error::input("the seed curve must be an integral short model"));
    }
    if reduction_type(&seed.curve, p)?.kind != ReductionType::Good {
        return Err(Error::precondition(format!("seed curve has bad reduction at {p}")));
    }
    let (x0, _) = seed
        .point
        .as_rational()
        .ok_or_else(|| Error::input("seed point must be rational and affine"))?;
    if !seed.curve.contains(&seed.point) {
        return Err(Error::input("seed point is not on the seed curve"));
    }
    let seed_height = crate::heights::canonical_height(&seed.curve, &seed.point, eps)?;
    if seed_height.upper() <= 0.0 {
        return Err(Error::input("seed point is torsion"));
    }

    let pz = Int::from(p);
    let pr = Rat::from_integer(pz.clone());
    let bad_curve = twist(&seed.curve, &pr)?;
    let f: LattesMap = lattes_from_curve(&bad_curve)?;
    let alpha0 = &pr * &x0;
    let hf0 = lattes_height(&f, Some(&alpha0), eps)?;

    let mut out = Vec::with_capacity(levels + 1);
    let mut poly = IntPoly::linear_root(&alpha0);
    let mut truncated = false;
    let mut ratio = Rat::one();
    for n in 0..=levels {
        if n > 0 {
            let next = poly.pullback(&f.numer, &f.denom).primitive();
            let degenerate = next.degree() < 4 * poly.degree();
            poly = next;
            ratio /= Rat::from_integer(Int::from(4));
            if degenerate {
                out.push(level_record(n, &poly, &ratio, hf0, &pz, p, true)?);
                truncated = true;
                break;
            }
        }
        out.push(level_record(n, &poly, &ratio, hf0, &pz, p, false)?);
    }
    Ok(SmallHeightSequence {
        p,
        bad_curve,
        alpha0,
        hf_alpha0: hf0,
        twice_seed_height: seed_height * 2.0,
        levels: out,
        truncated,
    })
}

fn level_record(
    n: usize,
    poly: &IntPoly,
    ratio: &Rat,
    hf0: RealApprox,
    pz: &Int,
    p: u64,
    degenerate: bool,
) -> Result<SequenceLevel> {
    let rescaled = poly.rescale_argument(pz).primitive();
    let cert = unramified_certificate(&rescaled, p)?;
    let r = ratio.to_f64().unwrap_or(0.0);
    Ok(SequenceLevel {
        level: n,
        degree: poly.degree(),
        naive_height: if poly.is_zero() { 0.0 } else { poly.naive_height() },
        poly: poly.clone(),
        ratio: ratio.clone(),
        hf: hf0 * r,
        cert,
        degenerate,
    })
}

impl SmallHeightSequence {
    /// Consecutive ratios are exactly 1/4.
    pub fn ratios_exact(&self) -> bool {
        let quarter = Rat::new(Int::one(), Int::from(4));
        self.levels.windows(2).all(|w| &w[1].ratio / &w[0].ratio == quarter)
            && self.levels.first().is_none_or(|l| l.ratio.is_one())
    }

    pub fn level0_matches(&self, tol: f64) -> bool {
        self.hf_alpha0.close_to(&self.twice_seed_height, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_zero_height_matches_seed() {
        let s = small_height_sequence(5, 0).unwrap();
        assert_eq!(s.alpha0, Rat::from_integer(Int::from(-5)));
        assert!(s.level0_matches(1e-6), "{} vs {}", s.hf_alpha0, s.twice_seed_height);
        assert_eq!(reduction_type(&s.bad_curve, 5).unwrap().kind, ReductionType::Additive);
    }

    #[test]
    fn tower_for_five() {
        let s = small_height_sequence(5, 3).unwrap();
        assert!(s.ratios_exact());
        assert!(!s.truncated);
        for (n, l) in s.levels.iter().enumerate() {
            assert_eq!(l.degree, 4usize.pow(n as u32));
            assert!(l.cert.is_unramified(), "level {n}");
        }
    }

    #[test]
    fn rescaled_level_is_seed_tower() {
        // L_n(p·x) is proportional to the tower of x(P₀) under the seed curve's map
        let p = 7u64;
        let s = small_height_sequence(p, 2).unwrap();
        let seed = SeedCurve::default();
        let g = lattes_from_curve(&seed.curve).unwrap();
        let mut t = IntPoly::linear_root(&Rat::from_integer(Int::from(-1)));
        for l in &s.levels {
            assert_eq!(l.poly.rescale_argument(&Int::from(p)).primitive(), t.primitive());
            t = t.pullback(&g.numer, &g.denom);
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(small_height_sequence(2, 1).is_err());
        assert!(small_height_sequence(9, 1).is_err());
    }
}
