//! Shortest round-trip decimal rendering of `f64`.

/// The shorter of the plain and exponent renderings, both of which use the
/// fewest digits that parse back to `v` exactly. Ties go to the plain form.
pub fn shortest(v: f64) -> String {
    let plain = format!("{v}");
    if !v.is_finite() {
        return plain;
    }
    let exp = format!("{v:e}");
    if exp.len() < plain.len() {
        exp
    } else {
        plain
    }
}

pub fn parse(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok()
}

/// Serde adapter storing an `f64` as its [`shortest`] string.
pub mod as_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::shortest(*v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("not a number: {s:?}")))
    }
}
