//! Regenerates `data/corpus.jsonl`: expected reduction types come from the
//! point-counting classifier, points from the bounded-height search.
//!
//! cargo run --release --example build_corpus > crates/core/data/corpus.jsonl

use heightlab::curves::{bad_reductions, classify_by_count, is_torsion, rational_point_search, WeierstrassCurve};
use heightlab::io::CorpusRecord;
use heightlab::numeric::rational::rat_to_string;

const CURVES: &[(Option<&str>, [i64; 5])] = &[
    (Some("11a1"), [0, -1, 1, -10, -20]),
    (Some("14a1"), [1, 0, 1, 4, -6]),
    (Some("15a1"), [1, 1, 1, -10, -10]),
    (Some("17a1"), [1, -1, 1, -1, -14]),
    (Some("19a1"), [0, 1, 1, -9, -15]),
    (Some("37a1"), [0, 0, 1, -1, 0]),
    (Some("37b1"), [0, 1, 1, -23, -50]),
    (Some("43a1"), [0, 1, 1, 0, 0]),
    (Some("53a1"), [1, -1, 1, 0, 0]),
    (Some("57a1"), [0, -1, 1, -2, 2]),
    (Some("58a1"), [1, -1, 0, -1, 1]),
    (Some("61a1"), [1, 0, 0, -2, 1]),
    (Some("65a1"), [1, 0, 0, -1, 0]),
    (Some("77a1"), [0, 0, 1, 2, 0]),
    (Some("79a1"), [1, 1, 1, -2, 0]),
    (Some("82a1"), [1, 0, 1, -2, 0]),
    (Some("83a1"), [1, 1, 1, 1, 0]),
    (Some("89a1"), [1, 1, 1, -1, 0]),
    (Some("91a1"), [0, 0, 1, 1, 0]),
    (Some("91b1"), [0, 1, 1, -7, 5]),
    (Some("389a1"), [0, 1, 1, -2, 0]),
    (Some("5077a1"), [0, 0, 1, -7, 6]),
    (None, [1, 0, 1, -1, 0]),
    (None, [0, 1, 0, -1, 0]),
    (None, [1, 0, 0, 1, 1]),
    (None, [0, 0, 0, -2, 1]),
    (None, [1, 1, 0, -2, 0]),
    (None, [1, 0, 1, 1, 1]),
    (None, [0, 1, 1, 1, 0]),
    (None, [1, -1, 1, -3, 3]),
    (None, [0, 0, 1, -3, 2]),
    (None, [1, 0, 0, -3, 2]),
    (None, [0, -1, 0, -4, 4]),
    (None, [1, 1, 0, 1, 1]),
    (None, [0, 0, 0, 1, 1]),
    (None, [0, 0, 0, -1, 1]),
    (None, [0, 0, 0, 2, 1]),
    (None, [0, 0, 0, -3, 3]),
];

/// Good primes added per curve so that good reduction is exercised too.
const GOOD_PER_CURVE: usize = 1;
const POINTS_PER_CURVE: usize = 4;
const SEARCH_HEIGHT: f64 = 5.0;

fn main() {
    for (label, a) in CURVES {
        let e = WeierstrassCurve::from_i64(*a).expect("nonsingular");
        let mut primes: Vec<u64> = bad_reductions(&e).iter().map(|r| r.p).collect();
        let good: Vec<u64> = [2u64, 3, 5, 7, 11, 13].into_iter().filter(|p| !primes.contains(p)).take(GOOD_PER_CURVE).collect();
        primes.extend(good);
        primes.sort();
        let expected = primes.iter().map(|&p| classify_by_count(&e, p).expect("classified").name().to_string()).collect();
        let points = rational_point_search(&e, SEARCH_HEIGHT)
            .into_iter()
            .filter(|p| !is_torsion(&e, p))
            .take(POINTS_PER_CURVE)
            .map(|p| {
                let (x, y) = p.as_rational().expect("rational");
                format!("{},{}", rat_to_string(&x), rat_to_string(&y))
            })
            .collect();
        let rec = CorpusRecord {
            label: label.map(str::to_string),
            a: a.map(|c| c.to_string()),
            primes,
            expected,
            points,
        };
        println!("{}", serde_json::to_string(&rec).unwrap());
    }
}
