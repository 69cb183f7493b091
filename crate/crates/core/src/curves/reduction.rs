//! Local reduction data by Tate's algorithm, plus an independent point-counting oracle.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::weierstrass::{Isomorphism, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::numeric::poly::FpPoly;
use crate::numeric::primes::{is_prime_u64, prime_divisors_u64};
use crate::numeric::rational::{ord_unchecked, Int, Rat, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionType {
    Good,
    MultSplit,
    MultNonsplit,
    Additive,
}

impl ReductionType {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, ReductionType::MultSplit | ReductionType::MultNonsplit)
    }

    pub fn name(self) -> &'static str {
        match self {
            ReductionType::Good => "Good",
            ReductionType::MultSplit => "MultSplit",
            ReductionType::MultNonsplit => "MultNonsplit",
            ReductionType::Additive => "Additive",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Good" => Ok(ReductionType::Good),
            "MultSplit" => Ok(ReductionType::MultSplit),
            "MultNonsplit" => Ok(ReductionType::MultNonsplit),
            "Additive" => Ok(ReductionType::Additive),
            _ => Err(Error::Parse(format!("unknown reduction type {s:?}"))),
        }
    }
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PotentialType {
    PotGood,
    PotMult,
}

/// Reduction data of a curve at one prime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalReduction {
    pub p: u64,
    /// Change of coordinates from the input model to a p-minimal model.
    pub minimal_transform: Isomorphism,
    pub ord_min_disc: u32,
    pub kind: ReductionType,
    pub potential: PotentialType,
    /// `ord_p(j⁻¹)` for multiplicative reduction.
    pub component_index_n: Option<u32>,
    /// Order of the component group `E(ℚ_p)/E_0(ℚ_p)`.
    pub tamagawa: u32,
    /// Kodaira symbol, for display.
    pub kodaira: String,
    /// Conductor exponent.
    pub conductor_exponent: u32,
}

fn val(x: &Rat, p: u64) -> i64 {
    match ord_unchecked(x, p) {
        Valuation::Finite(v) => v,
        Valuation::Infinite => i64::MAX / 4,
    }
}

fn ri(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Residue of a p-integral rational, in `[0, p)`.
fn preduce(x: &Rat, p: u64) -> Int {
    let pi = Int::from(p);
    let d = x.denom().mod_floor(&pi);
    let inv = mod_inverse(&d, &pi);
    (x.numer() * inv).mod_floor(&pi)
}

fn mod_inverse(a: &Int, p: &Int) -> Int {
    let g = a.extended_gcd(p);
    assert!(g.gcd.is_one(), "{a} is not a unit mod {p}");
    g.x.mod_floor(p)
}

fn pinv(x: &Rat, p: u64) -> Rat {
    Rat::from_integer(mod_inverse(&preduce(x, p), &Int::from(p)))
}

fn pr(x: &Rat, p: u64) -> Rat {
    Rat::from_integer(preduce(x, p))
}

fn pdiv(x: &Rat, p: u64) -> bool {
    val(x, p) > 0
}

/// Legendre symbol for an odd prime.
pub(crate) fn legendre(a: &Int, p: u64) -> i32 {
    let pi = Int::from(p);
    let a = a.mod_floor(&pi);
    if a.is_zero() {
        return 0;
    }
    let e = (&pi - 1u32) / 2u32;
    if a.modpow(&e, &pi).is_one() {
        1
    } else {
        -1
    }
}

/// Whether `a·T² + b·T + c` has a root mod `p` (inputs p-integral).
fn quad_has_root(a: &Rat, b: &Rat, c: &Rat, p: u64) -> bool {
    let (a, b, c) = (preduce(a, p), preduce(b, p), preduce(c, p));
    if a.is_zero() {
        return !b.is_zero() || c.is_zero();
    }
    if p == 2 {
        return (0..2u32).any(|t| (&a * t * t + &b * t + &c).is_even());
    }
    legendre(&(&b * &b - 4 * &a * &c), p) >= 0
}

/// Number of distinct roots of `T³ + bT² + cT + d` mod `p`.
fn cubic_root_count(b: &Rat, c: &Rat, d: &Rat, p: u64) -> u32 {
    let (b, c, d) = (preduce(b, p), preduce(c, p), preduce(d, p));
    let pi = Int::from(p);
    if p < 2000 {
        return (0..p)
            .filter(|&t| {
                let t = Int::from(t);
                ((&t * &t * &t) + &b * &t * &t + &c * &t + &d).mod_floor(&pi).is_zero()
            })
            .count() as u32;
    }
    // deg gcd(T^p - T, f) over F_p
    let f = [d, c, b, Int::one()];
    let xp = powmod_t(&pi, &f, &pi);
    let mut g = xp;
    while g.len() < 2 {
        g.push(Int::zero());
    }
    g[1] = (&g[1] - 1u32).mod_floor(&pi);
    let small = |v: &Int| v.mod_floor(&pi).to_u64().expect("residue fits in u64");
    let fp = FpPoly::new(f.iter().map(small).collect(), p);
    let gp = FpPoly::new(g.iter().map(small).collect(), p);
    let h = fp.gcd(&gp);
    if h.is_zero() {
        3
    } else {
        h.degree() as u32
    }
}

/// `T^e mod (monic cubic f, p)` as coefficient vector.
fn powmod_t(e: &Int, f: &[Int; 4], p: &Int) -> Vec<Int> {
    let mulmod = |a: &[Int], b: &[Int]| -> Vec<Int> {
        let mut out = vec![Int::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        for k in (3..out.len()).rev() {
            let c = out[k].mod_floor(p);
            if !c.is_zero() {
                for i in 0..3 {
                    out[k - 3 + i] -= &c * &f[i];
                }
            }
            out[k] = Int::zero();
        }
        out.truncate(3);
        out.iter().map(|v| v.mod_floor(p)).collect()
    };
    let mut result = vec![Int::one()];
    let mut base = vec![Int::zero(), Int::one()];
    let mut e = e.clone();
    while e.is_positive() {
        if e.is_odd() {
            result = mulmod(&result, &base);
        }
        base = mulmod(&base, &base);
        e >>= 1;
    }
    result
}

/// Tate's algorithm at `p`.
pub fn reduction_type(e: &WeierstrassCurve, p: u64) -> Result<LocalReduction> {
    if !is_prime_u64(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let mut iso = Isomorphism::identity();
    // make the model p-integral
    let k = e
        .a_invariants()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let w = [1i64, 2, 3, 4, 6][i];
            let v = val(a, p);
            if v < 0 {
                (-v + w - 1) / w
            } else {
                0
            }
        })
        .max()
        .unwrap_or(0);
    if k > 0 {
        let u = Rat::new(Int::one(), Int::from(p).pow(k as u32));
        iso = iso.then(&Isomorphism { u, r: Rat::zero(), s: Rat::zero(), t: Rat::zero() });
    }
    let potential = if val(&e.j, p) < 0 { PotentialType::PotMult } else { PotentialType::PotGood };
    let pr_ = ri(p as i64);
    let half = if p == 2 { Rat::zero() } else { pinv(&ri(2), p) };
    let rst = |iso: &mut Isomorphism, r: Rat, s: Rat, t: Rat| {
        *iso = iso.then(&Isomorphism { u: Rat::one(), r, s, t });
    };

    loop {
        let c = e.transform(&iso);
        let vpd = val(&c.disc, p);
        let finish = |iso: Isomorphism, kind: ReductionType, cp: i64, kod: String, fp: i64| LocalReduction {
            p,
            minimal_transform: iso,
            ord_min_disc: vpd as u32,
            kind,
            potential,
            component_index_n: kind.is_multiplicative().then_some(vpd as u32),
            tamagawa: cp as u32,
            kodaira: kod,
            conductor_exponent: fp as u32,
        };
        if vpd == 0 {
            return Ok(finish(iso, ReductionType::Good, 1, "I0".into(), 0));
        }
        let (a1, a2, a3, a4, a6) = (&c.a1, &c.a2, &c.a3, &c.a4, &c.a6);
        let (b2, b4, b6) = (&c.b2, &c.b4, &c.b6);
        // move the singular point to (0, 0)
        let (r, t) = if p == 2 {
            if pdiv(b2, p) {
                let r = pr(a4, p);
                let t = pr(&(((&r + a2) * &r + a4) * &r + a6), p);
                (r, t)
            } else {
                let inv = pinv(a1, p);
                let r = &inv * a3;
                let t = &inv * (a4 + &r * &r);
                (r, t)
            }
        } else if p == 3 {
            let r = if pdiv(b2, p) { pr(&-b6, p) } else { -pinv(b2, p) * b4 };
            let t = a1 * &r + a3;
            (r, t)
        } else {
            let r = if pdiv(&c.c4, p) {
                -pinv(&ri(12), p) * b2
            } else {
                -pinv(&(ri(12) * &c.c4), p) * (&c.c6 + b2 * &c.c4)
            };
            let t = -&half * (a1 * &r + a3);
            (r, t)
        };
        rst(&mut iso, pr(&r, p), Rat::zero(), pr(&t, p));
        let c = e.transform(&iso);
        let (a1, a2, a3, a6) = (c.a1.clone(), c.a2.clone(), c.a3.clone(), c.a6.clone());

        if !pdiv(&c.c4, p) {
            let (kind, cp) = if quad_has_root(&ri(1), &a1, &-&a2, p) {
                (ReductionType::MultSplit, vpd)
            } else {
                (ReductionType::MultNonsplit, if vpd % 2 == 0 { 2 } else { 1 })
            };
            return Ok(finish(iso, kind, cp, format!("I{vpd}"), 1));
        }
        if val(&a6, p) < 2 {
            return Ok(finish(iso, ReductionType::Additive, 1, "II".into(), vpd));
        }
        if val(&c.b8, p) < 3 {
            return Ok(finish(iso, ReductionType::Additive, 2, "III".into(), vpd - 1));
        }
        if val(&c.b6, p) < 3 {
            let a3t = pr(&(&a3 / &pr_), p);
            let a6t = pr(&(&a6 / (&pr_ * &pr_)), p);
            let cp = if quad_has_root(&ri(1), &a3t, &-a6t, p) { 3 } else { 1 };
            return Ok(finish(iso, ReductionType::Additive, cp, "IV".into(), vpd - 2));
        }
        // now p | a1, a2; p^2 | a3, a4; p^3 | a6
        let (s, t) = if p == 2 {
            (pr(&a2, p), &pr_ * pr(&(&a6 / (&pr_ * &pr_)), p))
        } else if p == 3 {
            (a1.clone(), a3.clone())
        } else {
            (-&a1 * &half, -&a3 * &half)
        };
        rst(&mut iso, Rat::zero(), s, t);
        let c = e.transform(&iso);
        let p2 = &pr_ * &pr_;
        let p3 = &p2 * &pr_;
        let b = pr(&(&c.a2 / &pr_), p);
        let cc = pr(&(&c.a4 / &p2), p);
        let d = pr(&(&c.a6 / &p3), p);
        let w = ri(27) * &d * &d - &b * &b * &cc * &cc + ri(4) * &b * &b * &b * &d - ri(18) * &b * &cc * &d
            + ri(4) * &cc * &cc * &cc;
        let x = ri(3) * &cc - &b * &b;
        let sw = if pdiv(&w, p) {
            if pdiv(&x, p) {
                3
            } else {
                2
            }
        } else {
            1
        };
        if sw == 1 {
            let cp = 1 + cubic_root_count(&b, &cc, &d, p) as i64;
            return Ok(finish(iso, ReductionType::Additive, cp, "I0*".into(), vpd - 4));
        }
        if sw == 2 {
            let r = if p == 2 {
                pr(&cc, p)
            } else if p == 3 {
                &cc * pinv(&b, p)
            } else {
                (&b * &cc - ri(9) * &d) * pinv(&(ri(2) * &x), p)
            };
            rst(&mut iso, &pr_ * pr(&r, p), Rat::zero(), Rat::zero());
            let (mut ix, mut iy) = (3i64, 3i64);
            let mut mx = p2.clone();
            let mut my = p2.clone();
            let cp;
            loop {
                let c = e.transform(&iso);
                let a3t = pr(&(&c.a3 / &my), p);
                let a6t = pr(&(&c.a6 / (&mx * &my)), p);
                if pdiv(&(&a3t * &a3t + ri(4) * &a6t), p) {
                    let t = if p == 2 { &my * pr(&a6t, p) } else { &my * pr(&(-&a3t * &half), p) };
                    rst(&mut iso, Rat::zero(), Rat::zero(), t);
                    my = &my * &pr_;
                    iy += 1;
                    let c = e.transform(&iso);
                    let a2t = pr(&(&c.a2 / &pr_), p);
                    let a4t = pr(&(&c.a4 / (&pr_ * &mx)), p);
                    let a6t = pr(&(&c.a6 / (&mx * &my)), p);
                    if pdiv(&(&a4t * &a4t - ri(4) * &a6t * &a2t), p) {
                        let r = if p == 2 {
                            &mx * pr(&(&a6t * pinv(&a2t, p)), p)
                        } else {
                            &mx * pr(&(-&a4t * pinv(&(ri(2) * &a2t), p)), p)
                        };
                        rst(&mut iso, r, Rat::zero(), Rat::zero());
                        mx = &mx * &pr_;
                        ix += 1;
                    } else {
                        cp = if quad_has_root(&a2t, &a4t, &a6t, p) { 4 } else { 2 };
                        break;
                    }
                } else {
                    cp = if quad_has_root(&ri(1), &a3t, &-a6t, p) { 4 } else { 2 };
                    break;
                }
            }
            let m = ix + iy - 5;
            return Ok(finish(iso, ReductionType::Additive, cp, format!("I{m}*"), vpd - ix - iy + 1));
        }
        // triple root
        let r = if p == 2 {
            b.clone()
        } else if p == 3 {
            pr(&-&d, p)
        } else {
            -&b * pinv(&ri(3), p)
        };
        rst(&mut iso, &pr_ * pr(&r, p), Rat::zero(), Rat::zero());
        let c = e.transform(&iso);
        let a3t = pr(&(&c.a3 / &p2), p);
        let a6t = pr(&(&c.a6 / (&p2 * &p2)), p);
        if !pdiv(&(&a3t * &a3t + ri(4) * &a6t), p) {
            let cp = if quad_has_root(&ri(1), &a3t, &-&a6t, p) { 3 } else { 1 };
            return Ok(finish(iso, ReductionType::Additive, cp, "IV*".into(), vpd - 6));
        }
        let t = if p == 2 { -&p2 * pr(&a6t, p) } else { &p2 * pr(&(-&a3t * &half), p) };
        rst(&mut iso, Rat::zero(), Rat::zero(), t);
        let c = e.transform(&iso);
        if val(&c.a4, p) < 4 {
            return Ok(finish(iso, ReductionType::Additive, 2, "III*".into(), vpd - 7));
        }
        if val(&c.a6, p) < 6 {
            return Ok(finish(iso, ReductionType::Additive, 1, "II*".into(), vpd - 8));
        }
        // not minimal: scale down by p
        iso = iso.then(&Isomorphism { u: pr_.clone(), r: Rat::zero(), s: Rat::zero(), t: Rat::zero() });
    }
}

/// Synonym of [`reduction_type`]; the minimal model is `E.transform(&lr.minimal_transform)`.
pub fn minimal_model_at(e: &WeierstrassCurve, p: u64) -> Result<LocalReduction> {
    reduction_type(e, p)
}

/// Number of points of the reduction of a p-integral model over `F_p`, including the
/// point at infinity and any singular point. Independent of Tate's algorithm.
pub fn reduced_point_count(e: &WeierstrassCurve, p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    if e.a_invariants().iter().any(|a| val(a, p) < 0) {
        return Err(Error::input(format!("model is not integral at {p}")));
    }
    let [a1, a2, a3, a4, a6] = e.a_invariants().map(|a| preduce(&a, p));
    let pi = Int::from(p);
    let mut count = 1u64;
    for x in 0..p {
        let x = Int::from(x);
        let b = (&a1 * &x + &a3).mod_floor(&pi);
        let g = (&x * &x * &x + &a2 * &x * &x + &a4 * &x + &a6).mod_floor(&pi);
        if p == 2 {
            for y in 0..2u32 {
                let y = Int::from(y);
                if ((&y * &y) + &b * &y - &g).mod_floor(&pi).is_zero() {
                    count += 1;
                }
            }
        } else {
            count += (1 + legendre(&(&b * &b + 4 * &g), p)) as u64;
        }
    }
    Ok(count)
}

/// Reduction type read off point counts alone: on a p-minimal model with bad
/// reduction, `#Ẽ(F_p) = p` (node, split), `p + 2` (node, nonsplit) or `p + 1` (cusp).
pub fn classify_by_count(e: &WeierstrassCurve, p: u64) -> Result<ReductionType> {
    let lr = reduction_type(e, p)?;
    if lr.ord_min_disc == 0 {
        return Ok(ReductionType::Good);
    }
    let model = e.transform(&lr.minimal_transform);
    let n = reduced_point_count(&model, p)?;
    match n as i128 - p as i128 {
        0 => Ok(ReductionType::MultSplit),
        2 => Ok(ReductionType::MultNonsplit),
        1 => Ok(ReductionType::Additive),
        d => Err(Error::Precondition(format!("singular reduction with #E(F_p) = p + {d}"))),
    }
}

/// All primes dividing the discriminant, with their reduction data.
pub fn bad_reductions(e: &WeierstrassCurve) -> Vec<LocalReduction> {
    let disc = e.disc.numer() * e.disc.denom();
    let mut primes: Vec<u64> = prime_divisors_u64(&disc);
    for a in e.a_invariants() {
        primes.extend(prime_divisors_u64(a.denom()));
    }
    primes.sort_unstable();
    primes.dedup();
    primes
        .into_iter()
        .map(|p| reduction_type(e, p).expect("prime divisors are prime"))
        .filter(|lr| lr.kind != ReductionType::Good)
        .collect()
}
