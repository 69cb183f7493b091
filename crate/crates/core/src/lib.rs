//! Canonical heights on elliptic curves and Lattès maps over the rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: exact rationals, p-adic valuations, Weil heights, interval reals,
//!   Lambert W and Mahler measures.
//! * [`curves`]: Weierstrass models, the group law over quadratic fields, Tate's
//!   algorithm, division polynomials, torsion, twists and point search.
//! * [`heights`]: the Néron–Tate height, local heights and the pairing-sum harness.
//! * [`lattes`]: the Lattès map of `[2]` through `x`, its canonical height, orbits and
//!   preimage towers.
//! * [`ramify`]: ramification certificates and the unramified non-torsion point
//!   constructor.
//! * [`bounds`]: effective lower-bound constants with a derivation trace.
//! * [`verify`]: the acceptance suite shared by the CLI and the test target.

pub mod bounds;
pub mod curves;
pub mod error;
pub mod heights;
pub mod io;
pub mod lattes;
pub mod numeric;
pub mod ramify;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{Int, Rat};
