//! Sums over `Λ_s = {iQ : 1 ≤ i ≤ s}` and the two lower bounds for them.

use serde::Serialize;

use super::{canonical_height, local_height_arch};
use crate::curves::{reduction_type, CurvePoint, ReductionType, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::numeric::rational::log_prime;
use crate::numeric::real::RealApprox;

#[derive(Debug, Clone)]
pub struct LambdaSet {
    pub base_point: CurvePoint,
    pub s: usize,
    pub points: Vec<CurvePoint>,
}

impl LambdaSet {
    /// Requires `Q` to have order greater than `s`.
    pub fn new(e: &WeierstrassCurve, q: &CurvePoint, s: usize) -> Result<Self> {
        if s < 1 {
            return Err(Error::input("s must be at least 1"));
        }
        if let Some(n) = e.order_up_to(q, s as u32) {
            return Err(Error::input(format!("Q has order {n} ≤ s = {s}")));
        }
        let mut points = Vec::with_capacity(s);
        let mut acc = q.clone();
        for _ in 0..s {
            points.push(acc.clone());
            acc = e.add(&acc, q)?;
        }
        Ok(LambdaSet { base_point: q.clone(), s, points })
    }

    /// `Σ_{i≠j} g((i − j)Q) = 2 Σ_{k=1}^{s−1} (s − k)·g(kQ)` for an even function `g`.
    fn pair_sum(&self, mut g: impl FnMut(&CurvePoint) -> Result<RealApprox>) -> Result<RealApprox> {
        let mut total = RealApprox::ZERO;
        for k in 1..self.s {
            total = total + g(&self.points[k - 1])? * (2.0 * (self.s - k) as f64);
        }
        Ok(total)
    }
}

/// `2 Σ_{i=1}^{s−1} i²(s − i)`.
pub fn pair_coefficient(s: u64) -> u64 {
    (1..s).map(|i| 2 * i * i * (s - i)).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub s: usize,
    /// `Σ_{R≠R′} ĥ(R − R′)` from the heights of the differences.
    pub direct: RealApprox,
    /// `(Σ_{i≠j} (i − j)²)·ĥ(Q)`.
    pub quadratic: RealApprox,
    /// `(s⁴ − s²)/6·ĥ(Q)`.
    pub closed_form: RealApprox,
    /// `2 Σ i²(s − i) = (s⁴ − s²)/6` holds exactly.
    pub identity_holds: bool,
}

pub fn pairing_sum(e: &WeierstrassCurve, q: &CurvePoint, s: usize, eps: f64) -> Result<PairingReport> {
    let set = LambdaSet::new(e, q, s)?;
    let h = canonical_height(e, q, eps)?;
    let su = s as u64;
    let coeff = pair_coefficient(su);
    let closed = (su.pow(4) - su.pow(2)) / 6;
    let direct = set.pair_sum(|r| canonical_height(e, r, eps))?;
    Ok(PairingReport {
        s,
        direct,
        quadratic: h * coeff as f64,
        closed_form: h * closed as f64,
        identity_holds: coeff == closed && (su.pow(4) - su.pow(2)).is_multiple_of(6),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ElkiesReport {
    pub s: usize,
    pub lhs: RealApprox,
    pub rhs: RealApprox,
    pub ok: bool,
}

/// `Σ_{R≠R′} λ_∞(R − R′) ≥ −(s/2) log s − (16/5)s − (1/12)·max(0, log|j|)·s`.
pub fn elkies_check(e: &WeierstrassCurve, set: &LambdaSet, eps: f64) -> Result<ElkiesReport> {
    let s = set.s as f64;
    let lhs = set.pair_sum(|r| Ok(local_height_arch(e, r, eps)?.value))?;
    let j_plus = if e.j == num_traits::Zero::zero() {
        RealApprox::ZERO
    } else {
        let inv = e.invariants();
        let lj = crate::numeric::rational::log_abs_approx(inv.j.numer())
            - crate::numeric::rational::log_abs_approx(inv.j.denom());
        if lj.value > 0.0 {
            lj
        } else {
            RealApprox::ZERO
        }
    };
    let rhs = RealApprox::exact(-(s / 2.0)) * RealApprox::exact(s).ln() - RealApprox::exact(16.0 / 5.0 * s)
        - j_plus * (s / 12.0);
    let ok = lhs.ge_within(&rhs, 1e-9);
    Ok(ElkiesReport { s: set.s, lhs, rhs, ok })
}

#[derive(Debug, Clone, Serialize)]
pub struct HoeheRow {
    pub s: usize,
    pub lhs: RealApprox,
    pub rhs: RealApprox,
    pub ok: bool,
}

/// The inequality `(s⁴ − s²)/6·ĥ(Q) ≥ (log p/12)s² − (h(j)/12 + 16/5)s − ½ s log s`
/// for `Q = e!·ord_p(j⁻¹)·P`, with `p` split multiplicative.
pub fn hoehe1_check(
    e: &WeierstrassCurve,
    p: u64,
    point: &CurvePoint,
    ram: u32,
    s_max: usize,
    eps: f64,
) -> Result<Vec<HoeheRow>> {
    let red = reduction_type(e, p)?;
    if red.kind != ReductionType::MultSplit {
        return Err(Error::precondition(format!("reduction at {p} is {}, not split multiplicative", red.kind.name())));
    }
    let n = red.component_index_n.expect("multiplicative reduction has a component index") as u64;
    let fact: u64 = (1..=ram as u64).product();
    let mult = (fact * n) as i64;
    let q = e.scalar_mul(mult, point);
    let h = canonical_height(e, &q, eps)?;
    if h.upper() <= 0.0 {
        return Err(Error::input("the point is torsion"));
    }
    let lp = log_prime(p);
    let hj = e.invariants().h_j;
    let mut rows = Vec::with_capacity(s_max);
    for s in 1..=s_max {
        let sf = s as f64;
        let su = s as u64;
        let lhs = h * ((su.pow(4) - su.pow(2)) / 6) as f64;
        let rhs = lp * (sf * sf / 12.0) - (hj * (1.0 / 12.0) + 16.0 / 5.0) * sf
            - RealApprox::exact(sf).ln() * (sf / 2.0);
        rows.push(HoeheRow { s, lhs, rhs, ok: lhs.ge_within(&rhs, 1e-9) });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        assert_eq!(pair_coefficient(1), 0);
        assert_eq!(pair_coefficient(2), 2);
        assert_eq!(pair_coefficient(5), 100);
        for s in 1..40u64 {
            assert_eq!(pair_coefficient(s), (s.pow(4) - s * s) / 6);
        }
    }

    #[test]
    fn pairing_on_rank_one_curve() {
        let e = WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let q = CurvePoint::from_i64(0, 0);
        for s in 1..=6 {
            let r = pairing_sum(&e, &q, s, 1e-10).unwrap();
            assert!(r.identity_holds);
            assert!(r.direct.close_to(&r.closed_form, 1e-5), "s = {s}");
        }
    }

    #[test]
    fn elkies_holds() {
        let e = WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let q = CurvePoint::from_i64(0, 0);
        for s in 1..=10 {
            let set = LambdaSet::new(&e, &q, s).unwrap();
            let r = elkies_check(&e, &set, 1e-9).unwrap();
            assert!(r.ok, "s = {s}: {} < {}", r.lhs, r.rhs);
        }
    }

    #[test]
    fn hoehe1_rejects_nonsplit() {
        let e = WeierstrassCurve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let q = CurvePoint::from_i64(0, 0);
        assert!(matches!(hoehe1_check(&e, 37, &q, 1, 5, 1e-9), Err(Error::Precondition(_))));
    }
}
