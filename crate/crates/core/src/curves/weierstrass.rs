use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::primes::factor;
use crate::numeric::rational::{ord_int, parse_rat, rat_to_string, weil_height_rational, Int, Rat};
use crate::numeric::RealApprox;

/// A Weierstrass model `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` over ℚ with its
/// standard invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a6: Rat,
    pub b2: Rat,
    pub b4: Rat,
    pub b6: Rat,
    pub b8: Rat,
    pub c4: Rat,
    pub c6: Rat,
    pub disc: Rat,
    pub j: Rat,
}

/// The exact invariants of a model plus the height of its j-invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Invariants {
    pub c4: Rat,
    pub c6: Rat,
    pub disc: Rat,
    pub j: Rat,
    pub h_j: RealApprox,
}

impl WeierstrassCurve {
    /// Long-form model; rejects singular equations.
    pub fn new(a: [Rat; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let r = |n: i64| Rat::from_integer(Int::from(n));
        let b2 = &a1 * &a1 + r(4) * &a2;
        let b4 = r(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + r(4) * &a6;
        let b8 = &a1 * &a1 * &a6 + r(4) * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let c4 = &b2 * &b2 - r(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + r(36) * &b2 * &b4 - r(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - r(8) * &b4 * &b4 * &b4 - r(27) * &b6 * &b6 + r(9) * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(Error::input("singular Weierstrass equation (discriminant 0)"));
        }
        let j = &c4 * &c4 * &c4 / &disc;
        debug_assert_eq!(&c4 * &c4 * &c4 - &c6 * &c6, r(1728) * &disc);
        Ok(WeierstrassCurve { a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, disc, j })
    }

    /// Short model `y² = x³ + A·x + B`.
    pub fn short(a: Rat, b: Rat) -> Result<Self> {
        Self::new([Rat::zero(), Rat::zero(), Rat::zero(), a, b])
    }

    pub fn short_i64(a: i64, b: i64) -> Result<Self> {
        Self::short(Rat::from_integer(a.into()), Rat::from_integer(b.into()))
    }

    pub fn from_i64(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(|v| Rat::from_integer(v.into())))
    }

    pub fn a_invariants(&self) -> [Rat; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    /// `(A, B)` of a short model.
    pub fn short_coefficients(&self) -> Option<(Rat, Rat)> {
        self.is_short().then(|| (self.a4.clone(), self.a6.clone()))
    }

    pub fn is_integral(&self) -> bool {
        self.a_invariants().iter().all(|a| a.is_integer())
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            c4: self.c4.clone(),
            c6: self.c6.clone(),
            disc: self.disc.clone(),
            j: self.j.clone(),
            h_j: weil_height_rational(&self.j),
        }
    }

    /// Whether the rational pair `(x, y)` satisfies the equation.
    pub fn contains_rational(&self, x: &Rat, y: &Rat) -> bool {
        let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
        let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        lhs == rhs
    }

    /// Apply a change of coordinates `x = u²x' + r`, `y = u³y' + s·u²x' + t`.
    pub fn transform(&self, iso: &Isomorphism) -> WeierstrassCurve {
        let Isomorphism { u, r, s, t } = iso;
        let two = Rat::from_integer(Int::from(2));
        let three = Rat::from_integer(Int::from(3));
        let a1 = (&self.a1 + &two * s) / u;
        let a2 = (&self.a2 - s * &self.a1 + &three * r - s * s) / u.pow(2);
        let a3 = (&self.a3 + r * &self.a1 + &two * t) / u.pow(3);
        let a4 = (&self.a4 - s * &self.a3 + &two * r * &self.a2 - (t + r * s) * &self.a1 + &three * r * r
            - &two * s * t)
            / u.pow(4);
        let a6 = (&self.a6 + r * &self.a4 + r * r * &self.a2 + r * r * r - t * &self.a3 - t * t - r * t * &self.a1)
            / u.pow(6);
        WeierstrassCurve::new([a1, a2, a3, a4, a6]).expect("isomorphic model is nonsingular")
    }

    /// A short model with integer `A, B`, reduced so that no prime `q` has
    /// `q⁴ | A` and `q⁶ | B`, and the isomorphism from `self` to it.
    pub fn integral_short_model(&self) -> (WeierstrassCurve, Isomorphism) {
        // complete the square in y, then the cube in x
        let third = Rat::new(Int::one(), Int::from(3));
        let half = Rat::new(Int::one(), Int::from(2));
        let s = -&self.a1 * &half;
        let r = -(&self.a2 - &s * &self.a1 - &s * &s) * &third;
        let iso1 = Isomorphism { u: Rat::one(), r: r.clone(), s: s.clone(), t: Rat::zero() };
        let e1 = self.transform(&iso1);
        let t = -&e1.a3 * &half;
        let iso2 = Isomorphism { u: Rat::one(), r: Rat::zero(), s: Rat::zero(), t };
        let mut iso = iso1.then(&iso2);
        let e2 = self.transform(&iso);
        debug_assert!(e2.is_short());
        // scale to integral and strip fourth/sixth powers
        let (a, b) = (e2.a4.clone(), e2.a6.clone());
        let den = a.denom().lcm(b.denom());
        let mut k = Rat::one();
        for (p, _) in factor(&den) {
            let pu = p.to_u64().expect("denominator primes of a curve fit in u64");
            let need = |x: &Rat, w: i64| (ord_int(x.denom(), pu) + w - 1) / w;
            let e = need(&a, 4).max(need(&b, 6));
            k *= Rat::from_integer(p.pow(e as u32));
        }
        let a_int = (&a * k.pow(4)).to_integer();
        let b_int = (&b * k.pow(6)).to_integer();
        let g = a_int.gcd(&b_int);
        let mut shrink = Int::one();
        for (p, _) in factor(&g) {
            loop {
                let q = &shrink * &p;
                if (&a_int % q.pow(4u32)).is_zero() && (&b_int % q.pow(6u32)).is_zero() {
                    shrink = q;
                } else {
                    break;
                }
            }
        }
        let k = k / Rat::from_integer(shrink);
        // x = u^2 x' with u = 1/k
        let scale = Isomorphism { u: Rat::one() / &k, r: Rat::zero(), s: Rat::zero(), t: Rat::zero() };
        iso = iso.then(&scale);
        let out = self.transform(&iso);
        debug_assert!(out.is_short() && out.is_integral());
        (out, iso)
    }

    /// Parse `"A,B"` (short form) or `"a1,a2,a3,a4,a6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?;
        match parts.len() {
            2 => Self::short(parts[0].clone(), parts[1].clone()),
            5 => Self::new([
                parts[0].clone(),
                parts[1].clone(),
                parts[2].clone(),
                parts[3].clone(),
                parts[4].clone(),
            ]),
            n => Err(Error::Parse(format!("expected 2 or 5 coefficients, got {n}"))),
        }
    }

    pub fn to_record_strings(&self) -> [String; 5] {
        self.a_invariants().map(|a| rat_to_string(&a))
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &Rat| if x.is_integer() { x.numer().to_string() } else { x.to_string() };
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            show(&self.a1),
            show(&self.a2),
            show(&self.a3),
            show(&self.a4),
            show(&self.a6)
        )
    }
}

/// Change of Weierstrass coordinates `x = u²x' + r`, `y = u³y' + s·u²x' + t`, mapping
/// the source model to the target model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    #[serde(with = "crate::io::rat_serde")]
    pub u: Rat,
    #[serde(with = "crate::io::rat_serde")]
    pub r: Rat,
    #[serde(with = "crate::io::rat_serde")]
    pub s: Rat,
    #[serde(with = "crate::io::rat_serde")]
    pub t: Rat,
}

impl Isomorphism {
    pub fn identity() -> Self {
        Isomorphism { u: Rat::one(), r: Rat::zero(), s: Rat::zero(), t: Rat::zero() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isomorphism) -> Isomorphism {
        let u1 = &self.u;
        Isomorphism {
            u: u1 * &next.u,
            r: &self.r + u1 * u1 * &next.r,
            s: &self.s + u1 * &next.s,
            t: &self.t + u1 * u1 * &self.s * &next.r + u1 * u1 * u1 * &next.t,
        }
    }

    pub fn inverse(&self) -> Isomorphism {
        let ui = Rat::one() / &self.u;
        Isomorphism {
            u: ui.clone(),
            r: -&self.r * &ui * &ui,
            s: -&self.s * &ui,
            t: (&self.r * &self.s - &self.t) * &ui * &ui * &ui,
        }
    }

    /// Image of a source point `(x, y)` on the target model.
    pub fn map_xy<T>(&self, x: &T, y: &T) -> (T, T)
    where
        T: Clone
            + std::ops::Sub<T, Output = T>
            + std::ops::Mul<T, Output = T>
            + std::ops::Div<T, Output = T>
            + From<Rat>,
    {
        let r = T::from(self.r.clone());
        let s = T::from(self.s.clone());
        let t = T::from(self.t.clone());
        let u2 = T::from(&self.u * &self.u);
        let u3 = T::from(&self.u * &self.u * &self.u);
        let xr = x.clone() - r;
        let xp = xr.clone() / u2;
        let yp = (y.clone() - s * xr - t) / u3;
        (xp, yp)
    }

    pub fn map_x(&self, x: &Rat) -> Rat {
        (x - &self.r) / (&self.u * &self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{frac, rat};

    #[test]
    fn special_j() {
        assert_eq!(WeierstrassCurve::short_i64(0, 1).unwrap().j, rat(0));
        assert_eq!(WeierstrassCurve::short_i64(1, 0).unwrap().j, rat(1728));
        assert!(WeierstrassCurve::short_i64(0, 0).is_err());
        assert!(WeierstrassCurve::short_i64(-3, 2).is_err());
    }

    #[test]
    fn conductor_eleven_invariants() {
        // frozen from direct evaluation of the b/c formulas
        let e = WeierstrassCurve::from_i64([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(e.disc, rat(-161051));
        assert_eq!(e.c4, rat(496));
        assert_eq!(e.c6, rat(20008));
        assert_eq!(e.j, frac(-122023936, 161051));
        assert_eq!(&e.c4 * &e.c4 * &e.c4 - &e.c6 * &e.c6, rat(1728) * &e.disc);
    }

    #[test]
    fn short_model_round_trip() {
        let e = WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let (s, iso) = e.integral_short_model();
        assert!(s.is_short() && s.is_integral());
        assert_eq!(s.j, e.j);
        assert_eq!(e.transform(&iso), s);
        let back = s.transform(&iso.inverse());
        assert_eq!(back, e);
        let (x, y) = iso.map_xy(&rat(0), &rat(0));
        assert!(s.contains_rational(&x, &y));
    }

    #[test]
    fn parse_forms() {
        let e = WeierstrassCurve::parse("1/2,-3").unwrap();
        assert_eq!(e.short_coefficients(), Some((frac(1, 2), rat(-3))));
        assert!(WeierstrassCurve::parse("1,2,3").is_err());
    }
}
