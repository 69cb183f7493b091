//! Dense univariate polynomials over ℤ, ℚ and 𝔽_p.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{log_abs, Int, Rat};
use crate::error::{Error, Result};

/// Integer polynomial, coefficients stored from the constant term upwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Int) -> Self {
        Self::new(vec![c])
    }

    /// `x - r` scaled to integer coefficients: `d·x - n` for `r = n/d`.
    pub fn linear_root(r: &Rat) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Int {
        self.coeffs.last().cloned().unwrap_or_else(Int::zero)
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> Int {
        self.coeffs.iter().fold(Int::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        self.coeffs.iter().rev().fold(Int::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
    }

    /// Evaluate the degree-`deg` homogenisation at `(a, b)`.
    pub fn eval_homogeneous(&self, deg: usize, a: &Int, b: &Int) -> Int {
        // acc_k = acc_{k+1}·a + c_k·b^(deg-k)
        let mut acc = self.coeff(deg);
        let mut bpow = Int::one();
        for k in (0..deg).rev() {
            bpow *= b;
            acc = acc * a + self.coeff(k) * &bpow;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Int::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `p(k·x)`.
    pub fn rescale_argument(&self, k: &Int) -> Self {
        let mut kp = Int::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &kp);
            kp *= k;
        }
        Self::new(out)
    }

    /// `den^deg(self) · self(num/den)`: the polynomial whose roots are the preimages
    /// of the roots of `self` under the rational map `num/den`, with
    /// `deg(num) >= deg(den)` assumed.
    pub fn pullback(&self, num: &IntPoly, den: &IntPoly) -> Self {
        let d = self.degree();
        // den^k for k = 0..=d
        let mut den_pows = Vec::with_capacity(d + 1);
        den_pows.push(Self::constant(Int::one()));
        for k in 1..=d {
            let next = den_pows[k - 1].mul(den);
            den_pows.push(next);
        }
        // homogeneous Horner: acc_k = acc_{k+1}·num + c_k·den^(d-k)
        let mut acc = Self::constant(self.lead());
        for k in (0..d).rev() {
            acc = acc.mul(num).add(&den_pows[d - k].scale(&self.coeff(k)));
        }
        acc
    }

    /// `log max |c_i|`, the naive height of the coefficient vector.
    pub fn naive_height(&self) -> f64 {
        let m = self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Int::zero);
        if m.is_zero() {
            0.0
        } else {
            log_abs(&m)
        }
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        let bp = Int::from(p);
        FpPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&bp).to_u64().expect("residue fits"))
                .collect(),
            p,
        )
    }

    /// Homogeneous resultant of two forms of degrees `deg_f` and `deg_g`, given by
    /// their dehomogenisations (leading zeros allowed).
    pub fn homogeneous_resultant(f: &IntPoly, deg_f: usize, g: &IntPoly, deg_g: usize) -> Int {
        let n = deg_f + deg_g;
        if n == 0 {
            return Int::one();
        }
        let mut m = vec![vec![Int::zero(); n]; n];
        for row in 0..deg_g {
            for i in 0..=deg_f {
                m[row][row + i] = f.coeff(deg_f - i);
            }
        }
        for row in 0..deg_f {
            for i in 0..=deg_g {
                m[deg_g + row][row + i] = g.coeff(deg_g - i);
            }
        }
        bareiss_determinant(m)
    }

    /// Resultant with respect to the actual degrees.
    pub fn resultant(f: &IntPoly, g: &IntPoly) -> Int {
        Self::homogeneous_resultant(f, f.degree(), g, g.degree())
    }

    /// Polynomial discriminant `(-1)^{n(n-1)/2} Res(f, f') / lead(f)`.
    pub fn discriminant(&self) -> Int {
        let n = self.degree();
        let r = Self::resultant(self, &self.derivative());
        let sign = if (n * (n.saturating_sub(1)) / 2).is_multiple_of(2) { Int::one() } else { -Int::one() };
        sign * r / self.lead()
    }

    /// Parse a coefficient list `"c0,c1,...,cn"` (constant term first).
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Int>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &QPoly) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); self.degree() - dd + 1];
        let lead = d.lead();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.to_primitive_qpoly();
        }
        a.monic()
    }

    /// Bezout: returns `(g, u, v)` with `u·self + v·o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let l = r0.lead();
        let inv = |p: &QPoly| QPoly::new(p.coeffs.iter().map(|c| c / &l).collect());
        (inv(&r0), inv(&s0), inv(&t0))
    }

    /// Rescale to keep coefficient growth down in Euclid's algorithm.
    fn to_primitive_qpoly(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.to_int_poly().to_qpoly()
    }

    /// Clear denominators and content.
    pub fn to_int_poly(&self) -> IntPoly {
        let den = self.coeffs.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    /// Squarefree decomposition `[(g_1, 1), (g_2, 2), ...]` by Yun's algorithm.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == 0 {
            return out;
        }
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            if b.degree() == 0 {
                break;
            }
            c = d.div_rem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> Int {
        self.coeffs.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Sum of absolute values of the coefficients, as a float upper bound.
    pub fn abs_sum_upper(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| super::rational::rat_to_f64(&c.abs()) * (1.0 + 1e-15))
            .sum()
    }
}

/// Polynomial over 𝔽_p with `p` below 2^32.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs, p }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        let p = self.p as i128;
        let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, p, a as i128);
        while nr != 0 {
            let q = r / nr;
            (t, nt) = (nt, t - q * nt);
            (r, nr) = (nr, r - q * nr);
        }
        debug_assert_eq!(r, 1);
        t.rem_euclid(p) as u64
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ((i as u128 % p as u128) * c as u128 % p as u128) as u64)
                .collect(),
            p,
        )
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        assert!(!d.is_zero());
        let p = self.p as u128;
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let li = self.inv(*d.coeffs.last().unwrap()) as u128;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = (r[top] as u128 * li % p) as u64;
            if c != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    let idx = top - dd + i;
                    r[idx] = ((r[idx] as u128 + p - (c as u128 * dc as u128 % p)) % p) as u64;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        FpPoly::new(r, self.p)
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Squarefree over the algebraic closure of 𝔽_p (no repeated roots).
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == 0 {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).degree() == 0
    }
}
