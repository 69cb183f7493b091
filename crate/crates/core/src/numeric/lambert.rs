//! Real branches of the Lambert W function and the positivity threshold of
//! `r(x) = a·x − b − log x`.

use serde::{Deserialize, Serialize};

use super::real::{RealApprox, ULP};
use crate::error::{Error, Result};

/// Real branch of W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `W_0`, values `>= -1`.
    Principal,
    /// `W_{-1}`, values `<= -1`.
    Lower,
}

const INV_E: f64 = 0.367_879_441_171_442_33;

/// Bisect a monotone function `g` on `[lo, hi]` for `g(x) = target`, `increasing`
/// giving the direction. Returns the final bracket.
fn bisect(mut lo: f64, mut hi: f64, increasing: bool, target: f64, g: impl Fn(f64) -> f64) -> (f64, f64) {
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let above = g(mid) > target;
        if above == increasing {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// W evaluated at `y = -exp(t)`, i.e. solves `x + log(-x) = t` on the chosen branch.
/// The domain is `t <= -1`; `t = -1` is the branch point `y = -1/e`.
pub fn lambert_w_neg_exp(branch: Branch, t: f64) -> Result<RealApprox> {
    if !t.is_finite() || t > -1.0 {
        return Err(Error::Domain(format!("W(-exp({t})) needs exp({t}) <= 1/e")));
    }
    if t == -1.0 {
        return Ok(RealApprox::exact(-1.0));
    }
    let g = |x: f64| x + (-x).ln();
    let (lo, hi) = match branch {
        Branch::Lower => {
            // g increases on (-inf, -1]; widen [-B, -1] until it brackets t
            let mut b = 2.0;
            while g(-b) > t {
                b *= 2.0;
            }
            bisect(-b, -1.0, true, t, g)
        }
        Branch::Principal => {
            // g decreases on [-1, 0) towards -inf
            bisect(-1.0, -f64::MIN_POSITIVE, false, t, g)
        }
    };
    let x = 0.5 * (lo + hi);
    // rounding in g propagates through dx/dt = x/(x+1)
    let cond = (x / (x + 1.0)).abs();
    let g_err = 4.0 * ULP * (x.abs() + (-x).ln().abs() + t.abs());
    let err = (hi - lo) + cond * g_err + ULP * x.abs();
    Ok(RealApprox::new(x, err))
}

/// `W_branch(y)` with `W·e^W = y`.
pub fn lambert_w(branch: Branch, y: f64) -> Result<RealApprox> {
    if !y.is_finite() {
        return Err(Error::Domain(format!("W({y})")));
    }
    // arguments within rounding of -1/e are taken as the branch point
    if y < -INV_E * (1.0 + 4.0 * ULP) {
        return Err(Error::Domain(format!("W({y}) is undefined below -1/e")));
    }
    match branch {
        Branch::Lower if y >= 0.0 => Err(Error::Domain(format!("W_-1({y}) needs y < 0"))),
        _ if y < 0.0 => {
            let t = (-y).ln();
            // the argument may round just above -1 at the branch point
            let t = if t > -1.0 { -1.0 } else { t };
            let w = lambert_w_neg_exp(branch, t)?;
            // widen by the error of representing y itself
            let slack = (2.0 * std::f64::consts::E * 2.0 * ULP * y.abs()).sqrt();
            let near_branch_point = (1.0 + std::f64::consts::E * y).abs() < 1e-12;
            Ok(if near_branch_point { w.with_extra_error(slack) } else { w })
        }
        _ => {
            if y == 0.0 {
                return Ok(RealApprox::exact(0.0));
            }
            let g = |x: f64| x * x.exp();
            let mut hi = 1.0;
            while g(hi) < y {
                hi *= 2.0;
            }
            let (lo, hi) = bisect(0.0, hi, true, y, g);
            let x = 0.5 * (lo + hi);
            let cond = 1.0 / (x.exp() * (1.0 + x));
            Ok(RealApprox::new(x, (hi - lo) + cond * 4.0 * ULP * y + ULP * x))
        }
    }
}

/// Output of [`positivity_threshold`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    /// Largest root of `r(x) = a·x − b − log x`.
    pub root: RealApprox,
    pub lower: f64,
    pub upper: f64,
}

/// The largest root `−(1/a)·W_{−1}(−a·e^{−b})` of `r(x) = a·x − b − log x`, together
/// with the enclosing bracket `5/8 < root < (8/(5a))(log(1/a) + b)`.
pub fn positivity_threshold(a: f64, b: f64) -> Result<Threshold> {
    if !(a > 0.0) || !(b >= a) || !b.is_finite() {
        return Err(Error::input(format!("need b >= a > 0, got a = {a}, b = {b}")));
    }
    // -a e^{-b} = -exp(log a - b), and log a - b <= log a - a <= -1
    let t = (a.ln() - b).min(-1.0);
    let w = lambert_w_neg_exp(Branch::Lower, t)?;
    let inv_a = RealApprox::exact(1.0) / RealApprox::exact(a);
    let root = -(w * inv_a);
    Ok(Threshold { root, lower: 5.0 / 8.0, upper: 8.0 / (5.0 * a) * ((1.0 / a).ln() + b) })
}

/// `r(x) = a·x − b − log x`.
pub fn threshold_function(a: f64, b: f64, x: f64) -> f64 {
    a * x - b - x.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain bisection on `x e^x = y` over a fixed bracket, independent of the
    /// log-form solver.
    fn oracle_bisect(y: f64, mut lo: f64, mut hi: f64) -> f64 {
        let f = |x: f64| x * x.exp() - y;
        let increasing = f(hi) > f(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == increasing {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn branch_point_and_zero() {
        let w = lambert_w_neg_exp(Branch::Lower, -1.0).unwrap();
        assert_eq!(w.value, -1.0);
        assert_eq!(lambert_w(Branch::Principal, 0.0).unwrap().value, 0.0);
        let w = lambert_w(Branch::Lower, -(-1f64).exp()).unwrap();
        assert!((w.value + 1.0).abs() <= w.error + 1e-7);
    }

    #[test]
    fn lower_branch_matches_bisection_oracle() {
        let oracle = oracle_bisect(-0.1, -50.0, -1.0);
        // frozen from the oracle
        assert!((oracle - (-3.577_152_063_957_297)).abs() < 1e-12);
        let w = lambert_w(Branch::Lower, -0.1).unwrap();
        assert!((w.value - oracle).abs() < 1e-12);
        let w0 = lambert_w(Branch::Principal, -0.1).unwrap();
        assert!((w0.value - oracle_bisect(-0.1, -1.0, 0.0)).abs() < 1e-12);
        assert!(w.value <= -1.0 && w0.value >= -1.0);
    }

    #[test]
    fn domain_errors() {
        assert!(lambert_w(Branch::Lower, 0.5).is_err());
        assert!(lambert_w(Branch::Principal, -0.5).is_err());
        assert!(positivity_threshold(1.0, 0.5).is_err());
        assert!(positivity_threshold(0.0, 1.0).is_err());
    }

    #[test]
    fn threshold_examples() {
        let t = positivity_threshold(1.0, 1.0).unwrap();
        assert_eq!(t.root.value, 1.0);
        let t = positivity_threshold(1.0, 2.0).unwrap();
        // bisection oracle on x - 2 - log x over [1, 10]
        let mut lo = 1.0f64;
        let mut hi = 10.0f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if threshold_function(1.0, 2.0, mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!((t.root.value - 0.5 * (lo + hi)).abs() < 1e-12);
        assert!((t.root.value - 3.146_193_220_620_582_6).abs() < 1e-9);
        assert!(threshold_function(1.0, 2.0, t.root.value * 1.001) > 0.0);
    }
}
