//! Serialization helpers: rationals are always strings.

use serde::ser::{SerializeSeq, Serializer};

use crate::rational::{Q, Rat};

pub fn rat_str(x: &Rat) -> String {
    x.to_string()
}

pub fn q_str(x: &Q) -> String {
    x.to_string()
}

pub fn ser_rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_str(x))
}

pub fn ser_rats<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&rat_str(x))?;
    }
    seq.end()
}

pub fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q_str(x))
}

pub fn rats_json(xs: &[Rat]) -> serde_json::Value {
    serde_json::Value::Array(xs.iter().map(|x| rat_str(x).into()).collect())
}
