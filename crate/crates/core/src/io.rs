//! Exchange formats: rationals as `"n/d"` strings, the JSON-lines curve corpus and the
//! versioned report envelope.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::curves::{CurvePoint, ReductionType, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::numeric::rational::parse_rat;

/// Schema tag written at the top level of every JSON report.
pub const SCHEMA: &str = "heightlab/1";

/// Big integers are exchanged as decimal strings.
pub fn int_as_string<S: serde::Serializer>(n: &crate::numeric::Int, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Polynomials as decimal coefficient strings, constant term first.
pub fn poly_as_strings<S: serde::Serializer>(p: &crate::numeric::IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(|c| c.to_string()))
}

/// Curves as their five a-invariants `[a1, a2, a3, a4, a6]`.
pub fn curve_as_strings<S: serde::Serializer>(e: &WeierstrassCurve, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(e.to_record_strings().iter())
}

/// Serde adapter writing a rational as the string `"n/d"`.
pub mod rat_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::numeric::rational::{parse_rat, rat_to_string, Rat};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).map_err(serde::de::Error::custom)
    }
}

/// Same as [`rat_serde`] for vectors.
pub mod rat_vec_serde {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::numeric::rational::{parse_rat, rat_to_string, Rat};

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&rat_to_string(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts.iter().map(|t| parse_rat(t).map_err(serde::de::Error::custom)).collect()
    }
}

/// One line of the curve corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub a: [String; 5],
    /// Primes at which reduction data is expected.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
    /// Expected reduction type per prime, as produced by the point-count oracle.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<String>,
    /// Known rational points `"x,y"` on the given model.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
}

impl CorpusRecord {
    pub fn curve(&self) -> Result<WeierstrassCurve> {
        let a = self.a.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        WeierstrassCurve::new([a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone()])
    }

    pub fn points(&self) -> Result<Vec<CurvePoint>> {
        self.points.iter().map(|s| CurvePoint::parse(s)).collect()
    }

    pub fn expected_types(&self) -> Result<Vec<(u64, ReductionType)>> {
        if self.expected.len() != self.primes.len() {
            return Err(Error::Parse("corpus record has mismatched primes and expected types".into()));
        }
        self.primes
            .iter()
            .zip(&self.expected)
            .map(|(&p, t)| Ok((p, ReductionType::parse(t)?)))
            .collect()
    }
}

/// Parse a JSON-lines corpus; blank lines and lines starting with `#` are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse(format!("corpus line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn read_corpus(path: &Path) -> Result<Vec<CorpusRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_corpus(&text)
}

/// The corpus shipped with the crate.
pub fn builtin_corpus() -> Vec<CorpusRecord> {
    parse_corpus(include_str!("../data/corpus.jsonl")).expect("bundled corpus parses")
}

/// Wrap a payload in the versioned envelope `{"schema": ..., "kind": ..., "data": ...}`.
pub fn envelope(kind: &str, data: Value) -> Value {
    serde_json::json!({ "schema": SCHEMA, "kind": kind, "data": data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{frac, Rat};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "rat_serde")]
        x: Rat,
        #[serde(with = "rat_vec_serde")]
        v: Vec<Rat>,
    }

    #[test]
    fn rationals_round_trip() {
        let w = Wrap { x: frac(-3, 4), v: vec![frac(1, 1), frac(5, 2)] };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"x":"-3/4","v":["1/1","5/2"]}"#);
        assert_eq!(serde_json::from_str::<Wrap>(&s).unwrap(), w);
    }

    #[test]
    fn corpus_line() {
        let recs = parse_corpus("# comment\n{\"label\":\"11a1\",\"a\":[\"0\",\"-1\",\"1\",\"-10\",\"-20\"]}\n").unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].curve().unwrap().disc, frac(-161051, 1));
        assert!(parse_corpus("{bad").is_err());
    }
}
