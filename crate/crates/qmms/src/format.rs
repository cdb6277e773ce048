//! The JSON weighting format.
//!
//! ```json
//! {"n": 4, "q": 2, "modulus": [], "weights": [["14", "1"], ["-1", "1"], ...]}
//! ```
//!
//! Weights are indexed by point id. Numerators and denominators are decimal
//! strings so arbitrary-precision values survive the round trip; plain JSON
//! integers are accepted on input. Written files are always in lowest terms.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use qmms_core::weights::residual;
use qmms_core::{FiniteField, GeometryContext, Rational, WeightFunction};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// Syntax or value error, with serde_json's line and column.
    #[error("{origin}: {message} (line {line}, column {column})")]
    Parse { origin: String, message: String, line: usize, column: usize },
    #[error("{origin}: weights do not sum to zero (residual {residual})")]
    NotSumZero { origin: String, residual: Rational },
    #[error("{origin}: {message}")]
    Invalid { origin: String, message: String },
}

impl FormatError {
    /// Line of the offending input, when known.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Parse { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// One weight, written as `["num", "den"]`.
#[derive(Clone, Debug, PartialEq)]
struct Entry(Rational);

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.0.numer().to_string())?;
        seq.serialize_element(&self.0.denom().to_string())?;
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Part {
    Text(String),
    Int(i64),
}

impl Part {
    fn to_bigint<E: de::Error>(&self, what: &str) -> Result<BigInt, E> {
        match self {
            Part::Int(v) => Ok(BigInt::from(*v)),
            Part::Text(s) => s.trim().parse().map_err(|_| E::custom(format!("{what} {s:?} is not an integer"))),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntryVisitor;

        impl<'de> Visitor<'de> for EntryVisitor {
            type Value = Entry;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a [numerator, denominator] pair")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Entry, A::Error> {
                let num: Part = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let den: Part = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                let num = num.to_bigint("numerator")?;
                let den = den.to_bigint("denominator")?;
                if den.is_zero() {
                    return Err(de::Error::custom("zero denominator"));
                }
                Ok(Entry(Rational::new(num, den)))
            }
        }

        deserializer.deserialize_seq(EntryVisitor)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightFile {
    n: usize,
    q: u64,
    #[serde(default)]
    modulus: Vec<u32>,
    weights: Vec<Entry>,
}

/// A parsed weighting together with the geometry it lives on.
#[derive(Debug)]
pub struct Weighting {
    pub ctx: GeometryContext,
    pub f: WeightFunction,
}

/// Field of order `q`, from `modulus` when one is given.
pub fn field(q: u64, modulus: &[u32]) -> qmms_core::Result<FiniteField> {
    if modulus.is_empty() {
        FiniteField::new(q)
    } else {
        FiniteField::with_modulus(q, modulus)
    }
}

/// Parses a weighting; `origin` names the input in diagnostics.
pub fn parse(text: &str, origin: &str) -> Result<Weighting, FormatError> {
    let file: WeightFile = serde_json::from_str(text).map_err(|e| FormatError::Parse {
        origin: origin.to_string(),
        message: strip_position(&e.to_string()),
        line: e.line(),
        column: e.column(),
    })?;
    let invalid = |message: String| FormatError::Invalid { origin: origin.to_string(), message };
    let field = field(file.q, &file.modulus).map_err(|e| invalid(e.to_string()))?;
    let ctx = GeometryContext::new(file.n, field).map_err(|e| invalid(e.to_string()))?;
    let values: Vec<Rational> = file.weights.into_iter().map(|e| e.0).collect();
    if values.len() != ctx.point_count() {
        return Err(invalid(format!(
            "{} weights given, PG({}, {}) has {} points",
            values.len(),
            file.n - 1,
            file.q,
            ctx.point_count()
        )));
    }
    let r = residual(&values);
    if !r.is_zero() {
        return Err(FormatError::NotSumZero { origin: origin.to_string(), residual: r });
    }
    let f = WeightFunction::new(&ctx, values).map_err(|e| invalid(e.to_string()))?;
    Ok(Weighting { ctx, f })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

pub fn read(path: &Path) -> Result<Weighting, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse(&text, &path.display().to_string())
}

/// Serializes `f` with one weight per line.
pub fn to_string(ctx: &GeometryContext, f: &WeightFunction) -> String {
    let modulus = serde_json::to_string(ctx.field().modulus()).expect("integers serialize");
    let mut out = format!("{{\"n\": {}, \"q\": {}, \"modulus\": {modulus}, \"weights\": [\n", ctx.n(), ctx.q());
    let len = f.values().len();
    for (i, v) in f.values().iter().enumerate() {
        let entry = serde_json::to_string(&Entry(v.clone())).expect("strings serialize");
        out.push_str("  ");
        out.push_str(&entry);
        out.push_str(if i + 1 < len { ",\n" } else { "\n" });
    }
    out.push_str("]}\n");
    out
}

pub fn write(path: &Path, ctx: &GeometryContext, f: &WeightFunction) -> Result<(), FormatError> {
    std::fs::write(path, to_string(ctx, f)).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmms_core::algebra::rational;

    fn pencil() -> (GeometryContext, WeightFunction) {
        let ctx = GeometryContext::with_order(3, 2).unwrap();
        let f = WeightFunction::point_pencil(&ctx, 2);
        (ctx, f)
    }

    #[test]
    fn round_trip() {
        let (ctx, f) = pencil();
        let text = to_string(&ctx, &f);
        let back = parse(&text, "mem").unwrap();
        assert_eq!(back.f, f);
        assert_eq!(to_string(&back.ctx, &back.f), text);

        let ctx4 = GeometryContext::with_order(2, 4).unwrap();
        let mut values = vec![rational(-1, 3); 5];
        values[0] = rational(4, 3);
        let f4 = WeightFunction::new(&ctx4, values).unwrap();
        let back = parse(&to_string(&ctx4, &f4), "mem").unwrap();
        assert_eq!(back.f, f4);
        assert_eq!(back.ctx.field().modulus(), ctx4.field().modulus());
    }

    #[test]
    fn lowest_terms_and_integer_input() {
        let text = r#"{"n": 2, "q": 2, "weights": [["4", "-2"], [1, 1], ["1", "1"]]}"#;
        let w = parse(text, "mem").unwrap();
        assert_eq!(w.f.values()[0], rational(-2, 1));
        assert!(to_string(&w.ctx, &w.f).contains(r#"["-2","1"]"#));
    }

    #[test]
    fn errors_point_at_the_line() {
        let text = "{\"n\": 2, \"q\": 2, \"weights\": [\n  [\"1\", \"1\"],\n  [\"x\", \"1\"],\n  [\"-2\", \"1\"]\n]}";
        let err = parse(text, "bad.json").unwrap_err();
        assert_eq!(err.line(), Some(3), "{err}");
        assert!(err.to_string().contains("numerator \"x\""));

        let text = "{\"n\": 2, \"q\": 2, \"weights\": [\n  [\"1\", \"0\"]\n]}";
        assert_eq!(parse(text, "m").unwrap_err().line(), Some(2));
        let text = "{\"n\": 2,\n \"q\": 2,\n \"wieghts\": []}";
        assert_eq!(parse(text, "m").unwrap_err().line(), Some(3));
    }

    #[test]
    fn residual_is_reported() {
        let text = r#"{"n": 2, "q": 2, "weights": [["1", "2"], ["1", "3"], ["0", "1"]]}"#;
        match parse(text, "m").unwrap_err() {
            FormatError::NotSumZero { residual, .. } => assert_eq!(residual, rational(5, 6)),
            other => panic!("{other}"),
        }
        let text = r#"{"n": 2, "q": 2, "weights": [["1", "1"]]}"#;
        assert!(matches!(parse(text, "m").unwrap_err(), FormatError::Invalid { .. }));
    }
}
