//! `gamma` values serialise as numbers, with `"inf"` for the maximin limit.

use serde::Serializer;

pub fn serialize<S: Serializer>(gamma: &f64, s: S) -> Result<S::Ok, S::Error> {
    if gamma.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*gamma)
    }
}

/// Text form used in CSV output.
pub fn format(gamma: f64) -> String {
    if gamma.is_infinite() {
        "inf".to_string()
    } else {
        gamma.to_string()
    }
}

pub fn serialize_seq<S: Serializer>(gammas: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(gammas.len()))?;
    for g in gammas {
        if g.is_infinite() {
            seq.serialize_element("inf")?;
        } else {
            seq.serialize_element(g)?;
        }
    }
    seq.end()
}
