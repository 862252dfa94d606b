//! Fixed six-decimal number formatting shared by every emitter.

use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// `v` with exactly six decimals; negative zero prints as `0.000000`.
pub fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Serializes an `f64` as a bare JSON number with six decimals.
pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !v.is_finite() {
        return Err(S::Error::custom(format!("cannot emit non-finite number {v}")));
    }
    RawValue::from_string(fmt6(*v)).map_err(S::Error::custom)?.serialize(s)
}

/// Like [`serialize`] for optional numbers; `None` becomes `null`.
pub fn serialize_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize(v, s),
        None => s.serialize_none(),
    }
}

/// Serializes a list of points as `[[x, y], ...]` with six decimals.
pub fn serialize_pairs<S: Serializer>(v: &[(f64, f64)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for &(x, y) in v {
        let raw = RawValue::from_string(format!("[{}, {}]", fmt6(x), fmt6(y))).map_err(S::Error::custom)?;
        seq.serialize_element(&raw)?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_decimals() {
        assert_eq!(fmt6(11.25), "11.250000");
        assert_eq!(fmt6(-3e-15), "0.000000");
        assert_eq!(fmt6(-1.5), "-1.500000");
        assert_eq!(fmt6(1234567.0), "1234567.000000");
    }

    #[test]
    fn json_numbers() {
        #[derive(Serialize)]
        struct Row {
            #[serde(serialize_with = "serialize")]
            h: f64,
            #[serde(serialize_with = "serialize_opt")]
            t: Option<f64>,
        }
        let s = serde_json::to_string(&Row { h: 0.5, t: None }).unwrap();
        assert_eq!(s, r#"{"h":0.500000,"t":null}"#);
        assert!(serde_json::to_string(&Row { h: f64::NAN, t: None }).is_err());
    }
}
