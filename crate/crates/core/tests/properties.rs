use heightlab::bounds::{bogomolov_bounds, BoundInput, Variant};
use heightlab::curves::{CurvePoint, WeierstrassCurve};
use heightlab::heights::canonical_height;
use heightlab::lattes::{lattes_from_curve, lattes_height, preimage_polynomial, rational_roots};
use heightlab::{Int, Rat};
use proptest::prelude::*;

fn curve() -> impl Strategy<Value = WeierstrassCurve> {
    (-6i64..=6, -6i64..=6)
        .prop_filter("nonsingular", |(a, b)| 4 * a * a * a + 27 * b * b != 0)
        .prop_map(|(a, b)| WeierstrassCurve::short_i64(a, b).unwrap())
}

fn rat() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rat::new(Int::from(n), Int::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn lattes_functional_equation(e in curve(), a in rat()) {
        let f = lattes_from_curve(&e).unwrap();
        let fa = f.apply(Some(&a));
        let h0 = lattes_height(&f, Some(&a), 1e-8).unwrap();
        let h1 = lattes_height(&f, fa.as_ref(), 1e-8).unwrap();
        let err = h1.error + 4.0 * h0.error + 1e-9;
        prop_assert!((h1.value - 4.0 * h0.value).abs() <= err, "{} vs 4*{}", h1, h0);
    }

    #[test]
    fn preimages_contain_the_source(e in curve(), a in rat()) {
        let f = lattes_from_curve(&e).unwrap();
        if let Some(b) = f.apply(Some(&a)) {
            let (poly, _) = preimage_polynomial(&f, &b);
            prop_assert!(rational_roots(&poly).contains(&a));
            for r in rational_roots(&poly) {
                prop_assert_eq!(f.apply(Some(&r)), Some(b.clone()));
            }
        }
    }

    #[test]
    fn height_is_quadratic(m in 1i64..=4) {
        let e = WeierstrassCurve::short_i64(-2, 0).unwrap();
        let p = CurvePoint::from_i64(-1, 1);
        let h1 = canonical_height(&e, &p, 1e-9).unwrap();
        let hm = canonical_height(&e, &e.scalar_mul(m, &p), 1e-9).unwrap();
        let m2 = (m * m) as f64;
        prop_assert!((hm.value - m2 * h1.value).abs() <= hm.error + m2 * h1.error + 1e-9);
    }

    #[test]
    fn bounds_shrink_as_j_grows(h in 0.0f64..30.0, dh in 0.5f64..10.0, p in prop::sample::select(vec![3u64, 5, 7, 11])) {
        for v in [Variant::Elliptic41, Variant::Lattes42, Variant::Additive53, Variant::TotallyReal25] {
            let lo = bogomolov_bounds(&BoundInput::new(h, 1, 1, 1, p), v).unwrap();
            let hi = bogomolov_bounds(&BoundInput::new(h + dh, 1, 1, 1, p), v).unwrap();
            prop_assert!(hi.frak_c >= lo.frak_c);
            prop_assert!(hi.height_bound.value <= lo.height_bound.value, "{:?} {} {}", v, h, dh);
        }
    }
}
