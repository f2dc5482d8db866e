//! Serialization helpers shared by the command line driver: exact
//! rationals as `p/q` strings, high-precision values as decimal strings
//! with a declared digit count, lattice data as plain integer arrays.
//! Identical inputs serialize to identical bytes.

use crate::lg::ScaledRat;
use crate::num::Rat;
use num_traits::One;
use serde_json::{json, Value};

pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = p.trim().parse::<crate::num::Int>().ok()?;
        let q = q.trim().parse::<crate::num::Int>().ok()?;
        Some(Rat::new(p, q))
    } else {
        let p = s.parse::<crate::num::Int>().ok()?;
        Some(Rat::from(p))
    }
}

pub fn scaled_str(c: &ScaledRat) -> Value {
    json!({ "log": rat_str(&c.log), "man": rat_str(&c.man) })
}

pub fn lattice_vec(v: &crate::lattice::LatticeVector) -> Value {
    Value::Array(
        v.0.iter()
            .map(|c| Value::String(format!("{c}")))
            .collect(),
    )
}

pub fn lattice_vec_i64(v: &crate::lattice::LatticeVector) -> Value {
    use num_traits::ToPrimitive;
    Value::Array(
        v.0.iter()
            .map(|c| match c.to_i64() {
                Some(i) => json!(i),
                None => Value::String(format!("{c}")),
            })
            .collect(),
    )
}
