//! Exact rationals, valuations, heights of algebraic numbers, interval reals and
//! the Lambert W function.

pub mod lambert;
pub mod mahler;
pub mod poly;
pub mod primes;
pub mod rational;
pub mod real;

pub use lambert::{lambert_w, lambert_w_neg_exp, positivity_threshold, Branch, Threshold};
pub use mahler::height_from_minpoly;
pub use poly::{FpPoly, IntPoly, QPoly};
pub use rational::{
    frac, int, log_abs, log_prime, ord_p, parse_rat, rat, rat_to_f64, rat_to_string,
    weil_height_rational, Int, Rat, Valuation,
};
pub use real::RealApprox;
