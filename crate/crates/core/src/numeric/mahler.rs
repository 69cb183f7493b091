//! Weil heights of algebraic numbers through the Mahler measure of a defining
//! polynomial.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use super::poly::IntPoly;
use super::rational::log_abs;
use super::real::{RealApprox, ULP};
use crate::error::{Error, Result};

fn to_f64_coeffs(g: &IntPoly) -> Result<Vec<f64>> {
    g.coeffs()
        .iter()
        .map(|c| {
            c.to_f64()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::precision("coefficient exceeds double range"))
        })
        .collect()
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Complex roots of a squarefree polynomial by Aberth–Ehrlich iteration.
pub fn complex_roots(g: &IntPoly) -> Result<Vec<Complex64>> {
    let c = to_f64_coeffs(g)?;
    let n = g.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let cauchy = 1.0 + c[..n].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * cauchy, theta)
        })
        .collect();
    for _ in 0..1000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-17 {
            break;
        }
    }
    Ok(z)
}

/// `Σ log⁺|α|` over the roots of a squarefree integer polynomial, with an error
/// bound from disjoint inclusion disks.
fn log_plus_root_sum(g: &IntPoly) -> Result<RealApprox> {
    let n = g.degree();
    if n == 0 {
        return Ok(RealApprox::ZERO);
    }
    if n == 1 {
        // exact rational root -b/a
        let (b, a) = (g.coeff(0), g.coeff(1));
        if b.abs() <= a.abs() {
            return Ok(RealApprox::ZERO);
        }
        let v = log_abs(&b) - log_abs(&a);
        return Ok(RealApprox::new(v, 8.0 * ULP * (log_abs(&b) + 1.0)));
    }
    let c = to_f64_coeffs(g)?;
    let z = complex_roots(g)?;
    let lead = c[n].abs();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let (p, _) = horner(&c, z[i]);
        let mag: f64 = c.iter().enumerate().map(|(k, a)| a.abs() * z[i].norm().powi(k as i32)).sum();
        let eval_bound = p.norm() + 4.0 * (n as f64 + 2.0) * ULP * mag;
        let sep: f64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).norm()).product();
        radii.push(n as f64 * eval_bound / (lead * sep));
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                return Err(Error::precision("root inclusion disks overlap"));
            }
        }
    }
    let mut total = RealApprox::ZERO;
    for i in 0..n {
        let m = z[i].norm();
        let r = radii[i];
        if m + r <= 1.0 {
            continue;
        }
        if m - r <= 0.0 {
            return Err(Error::precision("root disk contains the origin"));
        }
        let v = m.ln().max(0.0);
        total = total + RealApprox::new(v, r / (m - r) + 2.0 * ULP * v.abs());
    }
    Ok(total)
}

/// `h(α) = (1/deg f)(log|lead f| + Σ log⁺|αᵢ|)` for any root `α` of `f`; the
/// irreducibility of `f` is the caller's business. Repeated roots are handled
/// through the squarefree decomposition.
pub fn height_from_minpoly(f: &IntPoly, eps: f64) -> Result<RealApprox> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::input("height of a constant polynomial"));
    }
    if !(eps > 0.0) {
        return Err(Error::input("eps must be positive"));
    }
    let deg = f.degree() as f64;
    let mut log_m = RealApprox::new(log_abs(&f.lead()), 4.0 * ULP * (1.0 + log_abs(&f.lead())));
    for (g, mult) in f.to_qpoly().squarefree_decomposition() {
        let gi = g.to_int_poly();
        log_m = log_m + log_plus_root_sum(&gi)? * mult as f64;
    }
    let h = log_m * (1.0 / deg);
    if h.error > eps {
        return Err(Error::precision(format!("achieved error {:.2e} exceeds {eps:.2e}", h.error)));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{frac, weil_height_rational};

    #[test]
    fn roots_of_two() {
        for n in 1..=10usize {
            let mut c = vec![0i64; n + 1];
            c[0] = -2;
            c[n] = 1;
            let h = height_from_minpoly(&IntPoly::from_i64(&c), 1e-9).unwrap();
            assert!((h.value - 2f64.ln() / n as f64).abs() < 1e-9, "n = {n}: {h}");
        }
    }

    #[test]
    fn units_and_roots_of_unity() {
        assert_eq!(height_from_minpoly(&IntPoly::from_i64(&[-1, 1]), 1e-9).unwrap().value, 0.0);
        let h = height_from_minpoly(&IntPoly::from_i64(&[1, 1, 1]), 1e-9).unwrap();
        assert!(h.value.abs() < 1e-9);
        assert!(height_from_minpoly(&IntPoly::from_i64(&[3]), 1e-9).is_err());
    }

    #[test]
    fn linear_matches_rational_height() {
        for (n, d) in [(3, 5), (-7, 2), (22, 7), (1, 1000)] {
            let r = frac(n, d);
            let h = height_from_minpoly(&IntPoly::linear_root(&r), 1e-9).unwrap();
            assert!((h.value - weil_height_rational(&r).value).abs() < 1e-9);
        }
    }
}
