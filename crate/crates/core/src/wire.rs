//! JSON helpers shared by the report and input types.

use exactnum::matrix::value_to_rational;
use exactnum::rational::{self, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rational on the wire: serialized as `"p/q"`, parsed from a string or an integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational::to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_rational(&v).map(Q).map_err(serde::de::Error::custom)
    }
}

pub fn to_q(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn from_q(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

pub fn to_q_mat(m: &[Vec<Rational>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| to_q(r)).collect()
}

pub fn from_q_mat(m: &[Vec<Q>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| from_q(r)).collect()
}
