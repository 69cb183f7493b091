//! Elliptic curves over ℚ: models, group law, reduction, torsion, twists and search.

pub mod divpoly;
pub mod point;
pub mod quad;
pub mod reduction;
pub mod search;
pub mod torsion;
pub mod twist;
pub mod weierstrass;

pub use divpoly::{division_polynomial, non_torsion_certificate, torsion_polynomial};
pub use point::CurvePoint;
pub use quad::QuadElt;
pub use reduction::{
    bad_reductions, classify_by_count, minimal_model_at, reduced_point_count, reduction_type, LocalReduction,
    PotentialType, ReductionType,
};
pub use weierstrass::{Invariants, Isomorphism, WeierstrassCurve};
pub use search::rational_point_search;
pub use torsion::{is_torsion, rational_torsion};
pub use twist::{twist, twist_point, twist_x};
