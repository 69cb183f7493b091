//! The acceptance suite: twelve criteria, each a pass/fail verdict with a one-line
//! detail. Shared by `heightlab verify` and the `acceptance` test target.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{bogomolov_bounds, frak_c, BoundInput, TraceValue, Variant};
use crate::curves::{
    classify_by_count, rational_point_search, rational_torsion, reduction_type, CurvePoint, ReductionType,
    WeierstrassCurve,
};
use crate::error::Result;
use crate::heights::pairing::pair_coefficient;
use crate::heights::{
    canonical_height, decomposition, elkies_check, hoehe1_check, local_height_nonarch_e0, pairing_sum, LambdaSet,
};
use crate::io::{builtin_corpus, CorpusRecord};
use crate::lattes::{lattes_from_curve, lattes_height, small_height_sequence};
use crate::numeric::lambert::{lambert_w_neg_exp, positivity_threshold, threshold_function, Branch};
use crate::numeric::mahler::height_from_minpoly;
use crate::numeric::poly::IntPoly;
use crate::numeric::rational::{log_prime, ord_p, Int};
use crate::ramify::{construct_unramified_point, ConstructionCase, Verdict, SEARCH_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    All,
    Numeric,
    Heights,
    Lattes,
    Ramify,
    Bounds,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => Suite::All,
            "numeric" => Suite::Numeric,
            "heights" => Suite::Heights,
            "lattes" => Suite::Lattes,
            "ramify" => Suite::Ramify,
            "bounds" => Suite::Bounds,
            _ => return None,
        })
    }

    /// Criterion numbers run by the suite.
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::All => (1..=12).collect(),
            Suite::Numeric => vec![1, 2],
            Suite::Heights => vec![4, 5, 6, 7, 8, 9],
            Suite::Lattes => vec![3, 11],
            Suite::Ramify => vec![10],
            Suite::Bounds => vec![12],
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub hmax: f64,
    pub smax: usize,
    pub levels: usize,
    pub corpus: Vec<CorpusRecord>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 2024, hmax: 8.0, smax: 12, levels: 5, corpus: builtin_corpus() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Notes that do not affect the verdict.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub millis: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

pub fn criterion_name(id: u8) -> &'static str {
    match id {
        1 => "root-of-2 heights",
        2 => "Lambert W and root brackets",
        3 => "Lattes relation",
        4 => "quadraticity",
        5 => "pairing identity",
        6 => "inequality chain",
        7 => "lower bound instance",
        8 => "local height formula",
        9 => "reduction classification",
        10 => "unramified point constructor",
        11 => "small-height sequence",
        12 => "bounds engine",
        _ => "unknown",
    }
}

/// Split-multiplicative corpus curves with rational non-torsion points, with the prime.
pub const SPLIT_CURVES: [(&str, u64); 2] = [("91b1", 7), ("389a1", 389)];

struct Outcome {
    passed: bool,
    detail: String,
    notes: Vec<String>,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into(), notes: Vec::new() })
}

pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> CriterionResult {
    let start = Instant::now();
    let r = match id {
        1 => c1_root_heights(),
        2 => c2_lambert(cfg),
        3 => c3_lattes_relation(cfg),
        4 => c4_quadraticity(cfg),
        5 => c5_pairing(cfg),
        6 => c6_inequalities(cfg),
        7 => c7_theorem_instance(cfg),
        8 => c8_local_formula(cfg),
        9 => c9_classification(cfg),
        10 => c10_constructor(),
        11 => c11_sequence(cfg),
        12 => c12_bounds(),
        _ => outcome(false, "no such criterion"),
    };
    let (passed, detail, notes) = match r {
        Ok(o) => (o.passed, o.detail, o.notes),
        Err(e) => (false, format!("error: {e}"), Vec::new()),
    };
    CriterionResult { id, name: criterion_name(id), passed, detail, notes, millis: start.elapsed().as_millis() }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CriterionResult> {
    suite.criteria().into_iter().map(|id| run_criterion(id, cfg)).collect()
}

fn corpus_curve(cfg: &VerifyConfig, label: &str) -> Result<(WeierstrassCurve, Vec<CurvePoint>)> {
    let rec = cfg
        .corpus
        .iter()
        .find(|r| r.label.as_deref() == Some(label))
        .ok_or_else(|| crate::Error::Input(format!("corpus has no curve {label}")))?;
    Ok((rec.curve()?, rec.points()?))
}

/// Corpus curves with non-torsion points, in corpus order.
fn curves_with_points(cfg: &VerifyConfig) -> Result<Vec<(WeierstrassCurve, Vec<CurvePoint>)>> {
    let mut out = Vec::new();
    for r in &cfg.corpus {
        let pts = r.points()?;
        if !pts.is_empty() {
            out.push((r.curve()?, pts));
        }
    }
    Ok(out)
}

fn c1_root_heights() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for n in 1..=10usize {
        let mut c = vec![Int::from(0); n + 1];
        c[0] = Int::from(-2);
        c[n] = Int::from(1);
        let h = height_from_minpoly(&IntPoly::new(c), 1e-12)?;
        worst = worst.max((h.value - std::f64::consts::LN_2 / n as f64).abs());
    }
    outcome(worst <= 1e-9, format!("max |h(2^(1/n)) - log 2/n| = {worst:.2e} for n = 1..10"))
}

fn c2_lambert(cfg: &VerifyConfig) -> Result<Outcome> {
    let w = lambert_w_neg_exp(Branch::Lower, -1.0)?;
    let w_ok = (w.value + 1.0).abs() <= 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = 0;
    for _ in 0..10_000 {
        let a = 10f64.powf(rng.gen_range(-4.0..1.5));
        let b = a + 10f64.powf(rng.gen_range(-4.0..2.5));
        let th = positivity_threshold(a, b)?;
        let root = th.root.value;
        let bracket = th.lower < th.root.lower() && th.root.upper() < th.upper;
        let above = threshold_function(a, b, root * 1.01) > 0.0;
        if !(bracket && above) {
            failures += 1;
        }
    }
    outcome(
        w_ok && failures == 0,
        format!("W_-1(-1/e) = {w}; {failures} of 10000 random (a, b) violate 5/8 < root < bracket or r(1.01 root) > 0"),
    )
}

fn c3_lattes_relation(cfg: &VerifyConfig) -> Result<Outcome> {
    let mut count = 0;
    let mut curves = 0;
    let mut worst = 0.0f64;
    for (e, pts) in curves_with_points(cfg)?.into_iter().take(6) {
        let (short, iso) = e.integral_short_model();
        let f = lattes_from_curve(&short)?;
        curves += 1;
        for p in pts {
            let x = iso.map_x(&p.as_rational().expect("rational corpus point").0);
            let hf = lattes_height(&f, Some(&x), 1e-9)?;
            // independent oracle: sum of local heights
            let he = decomposition(&e, &p, 1e-9)?.local_sum;
            worst = worst.max((hf.value - 2.0 * he.value).abs());
            count += 1;
        }
    }
    outcome(
        worst <= 1e-6 && count >= 20 && curves >= 3,
        format!("{count} points on {curves} curves, max |h_f(x(P)) - 2 h_E(P)| = {worst:.2e}"),
    )
}

fn sample_points(cfg: &VerifyConfig, n: usize) -> Result<Vec<(WeierstrassCurve, CurvePoint)>> {
    let mut all = Vec::new();
    for (e, pts) in curves_with_points(cfg)? {
        for p in pts {
            all.push((e.clone(), p));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    all.shuffle(&mut rng);
    all.truncate(n);
    Ok(all)
}

fn c4_quadraticity(cfg: &VerifyConfig) -> Result<Outcome> {
    let pts = sample_points(cfg, 50)?;
    let eps = 1e-8;
    let mut worst = 0.0f64;
    for (e, p) in &pts {
        let h = canonical_height(e, p, eps)?;
        for m in 2..=8i64 {
            let hm = canonical_height(e, &e.scalar_mul(m, p), eps)?;
            worst = worst.max((hm.value - (m * m) as f64 * h.value).abs());
        }
    }
    outcome(
        pts.len() >= 50 && worst <= 1e-6,
        format!("{} points, m <= 8, max |h(mP) - m^2 h(P)| = {worst:.2e}", pts.len()),
    )
}

fn c5_pairing(cfg: &VerifyConfig) -> Result<Outcome> {
    let exact = (1..=30u64).all(|s| pair_coefficient(s) * 6 == s.pow(4) - s * s);
    let (e, pts) = corpus_curve(cfg, "37a1")?;
    let q = &pts[0];
    let mut worst = 0.0f64;
    for s in 1..=cfg.smax {
        let r = pairing_sum(&e, q, s, 1e-10)?;
        if !r.identity_holds {
            return outcome(false, format!("coefficient identity fails at s = {s}"));
        }
        worst = worst.max((r.direct.value - r.closed_form.value).abs());
    }
    outcome(
        exact && worst <= 1e-5,
        format!("identity exact for s <= 30; numeric sum vs (s^4 - s^2)/6 h(Q) for s <= {}: {worst:.2e}", cfg.smax),
    )
}

fn c6_inequalities(cfg: &VerifyConfig) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for (label, p) in SPLIT_CURVES {
        let (e, pts) = corpus_curve(cfg, label)?;
        let c = frak_c(e.invariants().h_j, 1, p)?;
        let s_max = ((2 * c) as usize).min(50);
        let rows = hoehe1_check(&e, p, &pts[0], 1, s_max, 1e-9)?;
        let hoehe_ok = rows.iter().all(|r| r.ok);
        let n = reduction_type(&e, p)?.component_index_n.unwrap_or(1) as i64;
        let set_base = e.scalar_mul(n, &pts[0]);
        let mut elkies_ok = true;
        for s in 1..=10 {
            let set = LambdaSet::new(&e, &set_base, s)?;
            elkies_ok &= elkies_check(&e, &set, 1e-9)?.ok;
        }
        ok &= hoehe_ok && elkies_ok;
        parts.push(format!("{label}@{p}: pairing lower bound s <= {s_max} {}, Elkies s <= 10 {}", tick(hoehe_ok), tick(elkies_ok)));
    }
    outcome(ok, parts.join("; "))
}

fn show_point(p: &CurvePoint) -> String {
    match p.as_rational() {
        Some((x, y)) => format!("({x}, {y})"),
        None => "O".into(),
    }
}

fn tick(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn c7_theorem_instance(cfg: &VerifyConfig) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for (label, p) in SPLIT_CURVES {
        let (e, _) = corpus_curve(cfg, label)?;
        let split = classify_by_count(&e, p)? == ReductionType::MultSplit
            && reduction_type(&e, p)?.kind == ReductionType::MultSplit;
        let report = bogomolov_bounds(&BoundInput::from_curve(&e, p)?, Variant::Elliptic41)?;
        let c_prime = report.height_bound;
        let mut min_h = f64::INFINITY;
        let mut found = 0;
        for q in rational_point_search(&e, cfg.hmax) {
            let h = canonical_height(&e, &q, 1e-9)?;
            if h.value > 0.0 {
                min_h = min_h.min(h.lower());
                found += 1;
            }
        }
        let tors = rational_torsion(&e).len();
        let cap = report.count_cap.map_or(0.0, |c| c.value);
        let this = split && c_prime.lower() > 0.0 && found > 0 && c_prime.upper() <= min_h && (tors as f64) < cap;
        ok &= this;
        parts.push(format!(
            "{label}@{p}: split {split}, c' = {:.3e} <= min h = {min_h:.4} over {found} points, |E_tor| = {tors} < c'_T = {cap:.3e}",
            c_prime.value
        ));
    }
    outcome(ok, parts.join("; "))
}

fn c8_local_formula(cfg: &VerifyConfig) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for (label, p) in SPLIT_CURVES {
        let (e, pts) = corpus_curve(cfg, label)?;
        let n = reduction_type(&e, p)?.component_index_n.unwrap_or(1);
        let mut seen = Vec::new();
        let distinct = pts.iter().filter(|pt| {
            let x = pt.as_rational().map(|(x, _)| x);
            let fresh = !seen.contains(&x);
            seen.push(x);
            fresh
        });
        for pt in distinct.take(2) {
            let q = e.scalar_mul(n as i64, pt);
            let lam = local_height_nonarch_e0(&e, &q, p)?;
            let floor = log_prime(p) * (n as f64 / 12.0);
            let local_ok = lam.value.ge_within(&floor, 1e-9);
            let dec = decomposition(&e, pt, 1e-9)?;
            let dec_ok = dec.agrees(1e-5);
            ok &= local_ok && dec_ok;
            parts.push(format!(
                "{label}@{p} P = {}: lambda_p = {:.6} >= N log p/12 = {:.6}, |sum - h| = {:.1e}",
                show_point(pt),
                lam.value.value,
                floor.value,
                (dec.local_sum.value - dec.canonical.value).abs()
            ));
        }
    }
    outcome(ok, parts.join("; "))
}

fn c9_classification(cfg: &VerifyConfig) -> Result<Outcome> {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for rec in &cfg.corpus {
        let e = rec.curve()?;
        for (p, expected) in rec.expected_types()? {
            pairs += 1;
            let red = reduction_type(&e, p)?;
            let oracle = classify_by_count(&e, p)?;
            let mut good = red.kind == expected && oracle == expected;
            if red.kind.is_multiplicative() {
                let vj = ord_p(&e.invariants().j, p)?.finite().unwrap_or(0);
                good &= red.component_index_n == Some((-vj) as u32);
            }
            if !good {
                bad.push(format!("{}@{p}", rec.label.clone().unwrap_or_else(|| rec.a.join(","))));
            }
        }
    }
    outcome(
        pairs >= 50 && bad.is_empty(),
        if bad.is_empty() {
            format!("{pairs} curve/prime pairs agree with the point-count oracle")
        } else {
            format!("{pairs} pairs, mismatches: {}", bad.join(" "))
        },
    )
}

fn c10_constructor() -> Result<Outcome> {
    let cases = [(0i64, 1i64, 5u64), (25, 5, 5), (2, 7, 7), (0, 1, 2), (3, 14, 7), (-1, 0, 5)];
    let mut seen = Vec::new();
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, b, p) in cases {
        let e = WeierstrassCurve::short_i64(a, b)?;
        let pt = construct_unramified_point(&e, p, SEARCH_CAP)?;
        let this = pt.non_torsion
            && pt.y_cert.is_unramified()
            && pt.x_cert.as_ref().is_none_or(|c| c.is_unramified())
            && pt.point().is_none_or(|q| e.contains(&q));
        ok &= this;
        seen.push(pt.case);
        parts.push(format!("({a},{b})@{p} {:?} {}", pt.case, tick(this)));
    }
    let all_cases = [ConstructionCase::BUnit, ConstructionCase::AUnit, ConstructionCase::BothDivisible, ConstructionCase::Two]
        .iter()
        .all(|c| seen.contains(c));
    outcome(ok && all_cases, parts.join(", "))
}

fn c11_sequence(cfg: &VerifyConfig) -> Result<Outcome> {
    let levels = cfg.levels.max(5);
    let s = small_height_sequence(5, levels)?;
    let mut notes = Vec::new();
    let mut certs_ok = true;
    for l in &s.levels {
        let rescaled = l.poly.rescale_argument(&Int::from(5)).primitive();
        let red = rescaled.reduce_mod(5);
        let separable = red.is_squarefree() && rescaled.degree() - red.degree() <= 1;
        if separable && l.cert.verdict != Verdict::Unramified {
            certs_ok = false;
        }
        if l.level < 3 && l.cert.verdict != Verdict::Unramified {
            certs_ok = false;
        }
        if l.cert.verdict == Verdict::Inconclusive {
            notes.push(format!("level {} certificate inconclusive (polynomial not separable mod 5)", l.level));
        }
    }
    let ok = s.ratios_exact() && s.level0_matches(1e-6) && !s.truncated && certs_ok && s.levels.len() == levels + 1;
    let unram = s.levels.iter().filter(|l| l.cert.is_unramified()).count();
    let detail = format!(
        "{} levels, ratio 1/4 exact {}, h_f(alpha_0) = {} vs 2 h(P_0) = {}, {unram} levels certified unramified",
        s.levels.len(),
        s.ratios_exact(),
        s.hf_alpha0,
        s.twice_seed_height
    );
    Ok(Outcome { passed: ok, detail, notes })
}

fn c12_bounds() -> Result<Outcome> {
    let input = BoundInput::new(4.0 * 7f64.ln(), 1, 1, 1, 7);
    let a = bogomolov_bounds(&input, Variant::Elliptic41)?;
    let b = bogomolov_bounds(&input, Variant::Lattes42)?;
    let half = b.numerator == a.numerator
        && b.denominator == a.denominator.clone().map(|d| d * Int::from(2))
        && b.height_bound.value * 2.0 == a.height_bound.value;

    // Galois52 is Elliptic41 with e! replaced by e: equal at e ≤ 2, and at e = 3 the
    // denominators differ exactly by (3!/3)² = 4
    let mut galois = true;
    for e in 1..=4u64 {
        let mut i = input.clone();
        i.e = e;
        let g = bogomolov_bounds(&i, Variant::Galois52)?;
        let t = bogomolov_bounds(&i, Variant::Elliptic41)?;
        let fact: u64 = (1..=e).product();
        let scale = Int::from(fact / e) * Int::from(fact / e);
        galois &= g.numerator == t.numerator
            && g.denominator.clone().map(|d| d * &scale) == t.denominator
            && fact.is_multiple_of(e);
    }

    let add = bogomolov_bounds(&input, Variant::Additive53)?;
    let c2 = (add.frak_c + 2).to_string();
    let additive = add.trace_value("frak_c_plus_2") == Some(&TraceValue::Exact(c2))
        && add.trace_value("multiplier_sq") == Some(&TraceValue::Exact("144".into()));

    let mut padic_in = BoundInput::new(1.0, 1, 1, 1, 3);
    padic_in.f_res = Some(1);
    padic_in.nu = Some(0);
    let pad = bogomolov_bounds(&padic_in, Variant::TotallyPadic26)?;
    let m = pad.trace_value("M") == Some(&TraceValue::Exact("784".into()));
    outcome(
        half && galois && additive && m,
        format!(
            "42 = 41/2 {}, 52 = 41 with e {}, 53 trace (c+2, 144) {}, M(3,1,1,0) = 784 {}",
            tick(half),
            tick(galois),
            tick(additive),
            tick(m)
        ),
    )
}
