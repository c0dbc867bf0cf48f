//! Exact rational scalars and their JSON encoding.
//!
//! Integers travel as JSON numbers, everything else as `"p/q"` strings.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde_json::Value;

/// The scalar type used for every weight, label and activation.
pub type Q = Ratio<i64>;

pub fn int(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn frac(p: i64, q: i64) -> Q {
    Q::new(p, q)
}

/// `max(0, min(x, 1))`
pub fn tr_relu(x: Q) -> Q {
    if x < Q::zero() {
        Q::zero()
    } else if x > Q::one() {
        Q::one()
    } else {
        x
    }
}

pub fn is_bit(x: &Q) -> bool {
    x.is_zero() || x.is_one()
}

pub fn to_json(x: &Q) -> Value {
    if x.is_integer() {
        Value::from(*x.numer())
    } else {
        Value::from(format!("{}/{}", x.numer(), x.denom()))
    }
}

/// Parses a JSON number (integer or finite float) or a `"p/q"` / `"n"` string.
pub fn from_json(v: &Value) -> Option<Q> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(int(i))
            } else {
                n.as_f64().and_then(Ratio::<i64>::approximate_float)
            }
        }
        Value::String(s) => parse(s),
        _ => None,
    }
}

pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(Q::new(p, q))
            }
        }
        None => s.parse::<i64>().ok().map(int),
    }
}

pub fn display(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
