//! Rational helpers on top of `num_rational::BigRational`.
//!
//! Rationals serialize as `"p/q"` strings (always with an explicit
//! denominator); parsing also accepts a bare integer `"p"`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{ExactError, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Number of bits of `|x|` (0 for zero).
pub fn bits(x: &BigInt) -> u64 {
    x.bits()
}

/// floor(q * 2^k) as an integer.
pub fn floor_scaled(q: &Rational, k: i64) -> BigInt {
    let (n, d) = scale_parts(q, k);
    n.div_floor(&d)
}

/// ceil(q * 2^k) as an integer.
pub fn ceil_scaled(q: &Rational, k: i64) -> BigInt {
    let (n, d) = scale_parts(q, k);
    -((-n).div_floor(&d))
}

fn scale_parts(q: &Rational, k: i64) -> (BigInt, BigInt) {
    if k >= 0 {
        (q.numer() << (k as usize), q.denom().clone())
    } else {
        (q.numer().clone(), q.denom() << ((-k) as usize))
    }
}

/// The dyadic rational m / 2^k.
pub fn dyadic(m: BigInt, k: i64) -> Rational {
    if k >= 0 {
        Rational::new(m, BigInt::one() << (k as usize))
    } else {
        Rational::from_integer(m << ((-k) as usize))
    }
}

/// Approximate floor(log2 |q|) for nonzero q (exact up to +-1).
pub fn log2_floor(q: &Rational) -> i64 {
    debug_assert!(!q.is_zero());
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// Largest dyadic with `prec` significant bits that is <= q.
pub fn round_down(q: &Rational, prec: u32) -> Rational {
    if q.is_zero() || q.denom().is_one() && q.numer().bits() <= prec as u64 {
        return q.clone();
    }
    let k = prec as i64 - log2_floor(q);
    dyadic(floor_scaled(q, k), k)
}

/// Smallest dyadic with `prec` significant bits that is >= q.
pub fn round_up(q: &Rational, prec: u32) -> Rational {
    if q.is_zero() || q.denom().is_one() && q.numer().bits() <= prec as u64 {
        return q.clone();
    }
    let k = prec as i64 - log2_floor(q);
    dyadic(ceil_scaled(q, k), k)
}

pub fn to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Shift into range first for huge numerators/denominators.
    let e = log2_floor(q);
    let scaled = if e > 0 {
        Rational::new(q.numer().clone(), q.denom() << (e as usize))
    } else {
        Rational::new(q.numer() << ((-e) as usize), q.denom().clone())
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(e as i32)
}

/// Exact rational from an f64 (finite values only).
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Exact square root if `q` is the square of a rational.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn sign(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// serde adapters for the `"p/q"` wire format.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()
    }
}

pub mod serde_rat_mat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        m.iter().map(|row| row.iter().map(to_string).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let m = Vec::<Vec<String>>::deserialize(d)?;
        m.iter().map(|row| row.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()).collect()
    }
}
