//! Decimal-string serialization for big integers.

use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::Serializer;
use std::collections::BTreeMap;

pub fn bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn bigint_opt<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => s.serialize_some(&n.to_string()),
        None => s.serialize_none(),
    }
}

pub fn prime_map<S: Serializer>(m: &BTreeMap<BigInt, u32>, s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(m.len()))?;
    for (p, e) in m {
        map.serialize_entry(&p.to_string(), e)?;
    }
    map.end()
}
